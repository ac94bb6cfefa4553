#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CIRCDD_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args, int want_code = 0) {
    Run r = run(args);
    CHECK_MESSAGE(r.code == want_code, args);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds") {
    auto j = run_json("bounds --degree 10 --diameter 4");
    CHECK(j["command"] == "bounds");
    CHECK(j["request"]["degree"] == 10);
    CHECK(j["result"]["m_ac"] == 681);
    CHECK(j["result"]["r_f"] == "384/625");
    CHECK(!j.contains("perf"));
    CHECK(j["warnings"].empty());
}

TEST_CASE("output is byte-identical across runs and --perf only adds a key") {
    const std::string args = "family gen --degree 10 --class 0 --set 1 --k 10";
    CHECK(run(args).out == run(args).out);
    auto j = run_json(args);
    CHECK(j["result"]["order"] == 22805);
    CHECK(j["result"]["gens"] == nlohmann::json::array({1, 313, 2495, 2846, 5662}));
    auto p = run_json(args + " --perf");
    CHECK(p.contains("perf"));
    p.erase("perf");
    CHECK(p == j);
}

TEST_CASE("family order and errors") {
    CHECK(run_json("family order --degree 11 --class 4 --k 9")["result"]["order"] == 21572);
    auto w = run_json("family order --degree 10 --class 0 --k 6", 1);
    CHECK(w["result"]["error"] == "WrongResidue");
    CHECK(!w["warnings"].empty());
    CHECK(run("family order --degree 10").code == 1);
    CHECK(run("no-such-command").code == 1);
}

TEST_CASE("diameter engines") {
    for (const char* e : {"bfs", "bitset", "lattice", "auto"}) {
        auto j = run_json(std::string("diameter --order 1099 --gens 1,53,207,272,536 --degree 10 --engine ") + e);
        CHECK(j["result"]["diameter"] == 5);
    }
    auto odd = run_json("diameter --order 1428 --gens 1,169,285,289,387 --degree 11 --engine lattice");
    CHECK(odd["result"]["diameter"] == 5);
    CHECK(run("diameter --order 12 --gens 2,4 --degree 4").code == 1);
}

TEST_CASE("verify formats") {
    auto j = run_json("verify --degree 10 --k-max 8");
    CHECK(j["result"]["reports"].size() > 5);
    for (const auto& r : j["result"]["reports"]) CHECK(r["pass"] == true);
    Run csv = run("verify --degree 10 --k-max 6 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("degree,class,set,subset,k,n,diameter,engine,pass,ms\n", 0) == 0);
    Run text = run("--format text verify --degree 11 --k-max 6");
    CHECK(text.code == 0);
    CHECK(text.out.find("pass") != std::string::npos);
    CHECK(run("verify --degree 10").code == 1);
    CHECK(run("verify --degree 10 --k-max 12 --mem-cap 1000 --bitset-cap 10").code == 3);
}

TEST_CASE("lattice check") {
    auto j = run_json("lattice check --theorem 3 --k 10 --suite all");
    CHECK(j["result"]["determinant"] == 22805);
    CHECK(j["result"]["combos"] == "pass");
    CHECK(j["result"]["orthants"] == "pass");
    CHECK(j["result"]["covering_k"] == true);
    CHECK(j["result"]["covering_k_minus_1"] == false);
    auto below = run_json("lattice check --theorem 3 --k 5 --suite orthants", 1);
    CHECK(below["result"]["error"] == "ThresholdError");
    CHECK(run("lattice check --theorem 3 --k 6").code == 1);
}

TEST_CASE("search and gensets") {
    auto s = run_json("search --degree 10 --diameter 2 --jobs 2");
    CHECK(s["result"]["best_order"] == 51);
    CHECK(s["result"]["exhaustive"] == true);
    auto c = run_json("search --degree 11 --diameter 2 --confirm 56");
    CHECK(c["result"]["confirmed"] == true);
    CHECK(run("search --degree 10 --diameter 3 --confirm 177 --time-budget 0.000001").code == 3);
    auto g = run_json("gensets --order 22805 --gens 1,313,2495,2846,5662");
    CHECK(g["result"]["sets"].size() == 4);
}

}
