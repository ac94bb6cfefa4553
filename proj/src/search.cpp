#include "circdd/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "circdd/bounds.hpp"

namespace circdd {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Plan {
    SearchConfig cfg;
    int k = 0;
    int f = 0;
    bool inv = false;
    int64_t n_lo = 0, n_hi = 0;
    bool confirm = false;
};

Plan make_plan(const SearchConfig& cfg, bool confirm) {
    if (cfg.degree < 2 || cfg.degree > 11) throw Error(Errc::UnsupportedDegree, "search supports 2 <= d <= 11");
    if (cfg.diameter < 1) throw Error(Errc::InvariantViolation, "diameter must be positive");
    Plan p;
    p.cfg = cfg;
    p.k = cfg.diameter;
    p.f = cfg.degree / 2;
    p.inv = cfg.degree % 2 == 1;
    const i128 bound = m_ac(cfg.degree, cfg.diameter);
    p.n_hi = cfg.n_max > 0 ? cfg.n_max : to_i64(bound);
    if (p.n_hi > bound) throw Error(Errc::InvariantViolation, "n_max exceeds M_AC(d,k)");
    p.n_lo = std::max<int64_t>(3, cfg.n_min > 0 ? cfg.n_min : cfg.degree + 1);
    p.confirm = confirm;
    if (p.cfg.jobs < 1) p.cfg.jobs = 1;
    return p;
}

// Largest admissible generator value: n/2 itself is the involution, never a generator.
int64_t top_value(int64_t n) { return n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2; }

class UnitRunner {
public:
    UnitRunner(const Plan& p, int64_t n) : p_(p), n_(n) {
        for (int64_t v = 1; v <= top_value(n); ++v) {
            all_.push_back(v);
            if (gcd64(v, n) > 1) non_units_.push_back(v);
        }
    }

    // Appends witnesses of this unit; stops early when `stop` is raised, and raises it on the
    // first witness in confirm mode.
    uint64_t run(const WorkUnit& u, std::vector<GeneratingSet>& out, std::atomic<bool>& stop) {
        chosen_.clear();
        out_ = &out;
        stop_ = &stop;
        tested_ = 0;
        interrupted_ = false;
        const auto& pool = u.non_units_only ? non_units_ : all_;
        if (!push(u.g1)) return 0;
        if (p_.f == 1) {
            leaf();
            return tested_;
        }
        if (push(u.g2)) {
            auto start = std::upper_bound(pool.begin(), pool.end(), u.g2);
            extend(pool, start);
        }
        return tested_;
    }

    bool interrupted() const { return interrupted_; }

private:
    bool push(int64_t g) {
        chosen_.push_back(g);
        if (p_.cfg.girth_prune) {
            build_steps();
            if (odd_.shortest_odd_walk(n_, steps_, 2 * p_.k) <= 2 * p_.k) {
                chosen_.pop_back();
                return false;
            }
        }
        return true;
    }

    void extend(const std::vector<int64_t>& pool, std::vector<int64_t>::const_iterator from) {
        if (static_cast<int>(chosen_.size()) == p_.f) {
            leaf();
            return;
        }
        const size_t need = static_cast<size_t>(p_.f) - chosen_.size();
        for (auto it = from; it != pool.end(); ++it) {
            if (static_cast<size_t>(pool.end() - it) < need) break;
            if (stop_->load(std::memory_order_relaxed)) {
                interrupted_ = out_->empty();
                return;
            }
            if (!push(*it)) continue;
            extend(pool, it + 1);
            chosen_.pop_back();
        }
    }

    void build_steps() {
        steps_.clear();
        for (int64_t g : chosen_) {
            steps_.push_back(g);
            steps_.push_back(n_ - g);
        }
        if (p_.inv) steps_.push_back(n_ / 2);
    }

    void leaf() {
        if (!is_connected(n_, chosen_, p_.inv)) return;
        if (p_.cfg.pair_diff > 0) {
            bool close = false;
            for (size_t i = 0; i < chosen_.size() && !close; ++i)
                for (size_t j = i + 1; j < chosen_.size(); ++j)
                    if (chosen_[j] - chosen_[i] <= p_.cfg.pair_diff) {
                        close = true;
                        break;
                    }
            if (!close) return;
        }
        build_steps();
        ++tested_;
        if (ball_.covers(n_, steps_, p_.k)) {
            GeneratingSet gs;
            gs.order = n_;
            gs.gens = chosen_;
            gs.has_involution = p_.inv;
            out_->push_back(std::move(gs));
            if (p_.confirm) stop_->store(true);
        }
    }

    const Plan& p_;
    int64_t n_;
    std::vector<int64_t> all_, non_units_, chosen_, steps_;
    BitsetBall ball_, odd_;
    std::vector<GeneratingSet>* out_ = nullptr;
    std::atomic<bool>* stop_ = nullptr;
    uint64_t tested_ = 0;
    bool interrupted_ = false;
};

json config_json(const Plan& p) {
    return json{{"degree", p.cfg.degree},           {"diameter", p.k},
                {"n_min", p.n_lo},                  {"n_max", p.n_hi},
                {"fix_one", p.cfg.fix_one},         {"girth_prune", p.cfg.girth_prune},
                {"pair_diff", p.cfg.pair_diff},     {"mode", p.confirm ? "confirm" : "extremal"}};
}

json sets_json(const std::vector<GeneratingSet>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.gens);
    return a;
}

void save_checkpoint(const Plan& p, const SearchResult& r, bool complete, const std::vector<GeneratingSet>& partial) {
    if (p.cfg.checkpoint.empty()) return;
    json j;
    j["config"] = config_json(p);
    j["frontier"] = {{"n", r.frontier.n}, {"unit", r.frontier.unit}};
    j["partial_results"] = {{"witnesses", sets_json(partial)},
                            {"candidates", r.candidates},
                            {"lowest_scanned", r.lowest_scanned},
                            {"best_order", r.best_order},
                            {"complete", complete}};
    const std::string tmp = p.cfg.checkpoint + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error(Errc::ParseError, "cannot write checkpoint " + p.cfg.checkpoint);
        out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, p.cfg.checkpoint);
}

struct Resume {
    SearchFrontier frontier;
    std::vector<GeneratingSet> partial;
    uint64_t candidates = 0;
    int64_t lowest_scanned = 0;
    int64_t best_order = 0;
    bool complete = false;
};

std::optional<Resume> load_checkpoint(const Plan& p) {
    if (p.cfg.checkpoint.empty() || !std::filesystem::exists(p.cfg.checkpoint)) return std::nullopt;
    try {
        std::ifstream in(p.cfg.checkpoint);
        json j = json::parse(in);
        if (j.at("config") != config_json(p))
            throw Error(Errc::InvariantViolation, "checkpoint " + p.cfg.checkpoint + " was written for another search");
        Resume r;
        r.frontier.n = j.at("frontier").at("n").get<int64_t>();
        r.frontier.unit = j.at("frontier").at("unit").get<uint64_t>();
        const auto& pr = j.at("partial_results");
        for (const auto& w : pr.at("witnesses")) {
            GeneratingSet gs;
            gs.order = r.frontier.n;
            gs.gens = w.get<std::vector<int64_t>>();
            gs.has_involution = p.inv;
            r.partial.push_back(std::move(gs));
        }
        r.candidates = pr.at("candidates").get<uint64_t>();
        r.lowest_scanned = pr.at("lowest_scanned").get<int64_t>();
        r.best_order = pr.at("best_order").get<int64_t>();
        r.complete = pr.at("complete").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("checkpoint: ") + e.what());
    }
}

void finish(const Plan& p, SearchResult& r) {
    std::sort(r.witnesses.begin(), r.witnesses.end(), [](const auto& a, const auto& b) { return a.gens < b.gens; });
    r.witnesses.erase(std::unique(r.witnesses.begin(), r.witnesses.end()), r.witnesses.end());
    for (const auto& w : r.witnesses) {
        CirculantGraph g = make_graph(w.order, w.gens, p.cfg.degree);
        if (diameter_bfs(g) > p.k) throw Error(Errc::InvariantViolation, "witness failed re-verification");
    }
    if (!r.witnesses.empty()) r.classes = classify_witnesses(r.best_order, r.witnesses);
}

SearchResult scan(const Plan& p) {
    SearchResult r;
    r.heuristic_filters = p.cfg.girth_prune || p.cfg.pair_diff > 0;
    int64_t n = p.n_hi;
    uint64_t first_unit = 0;
    std::vector<GeneratingSet> carried;
    if (auto res = load_checkpoint(p)) {
        r.candidates = res->candidates;
        r.lowest_scanned = res->lowest_scanned;
        if (res->complete) {
            r.best_order = res->best_order;
            r.witnesses = res->partial;
            r.frontier = res->frontier;
            r.exhaustive = !r.heuristic_filters;
            finish(p, r);
            return r;
        }
        n = res->frontier.n;
        first_unit = res->frontier.unit;
        carried = res->partial;
    }
    const auto deadline = p.cfg.time_budget_s > 0
                              ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                   std::chrono::duration<double>(p.cfg.time_budget_s))
                              : Clock::time_point::max();
    for (; n >= p.n_lo; --n, first_unit = 0) {
        if (p.inv && n % 2 != 0) continue;
        const std::vector<WorkUnit> units = work_units(p.cfg, n);
        std::vector<std::vector<GeneratingSet>> found(units.size());
        std::vector<uint8_t> done(units.size(), 0);
        std::atomic<bool> stop{false};
        std::atomic<bool> out_of_time{false};
        std::atomic<uint64_t> tested{0};
        const uint64_t chunk = std::max<uint64_t>(1, p.cfg.checkpoint_every);
        uint64_t frontier = first_unit;
        bool witness = !carried.empty();
        for (uint64_t lo = first_unit; lo < units.size() && !stop; lo += chunk) {
            const uint64_t hi = std::min<uint64_t>(units.size(), lo + chunk);
            std::atomic<uint64_t> next{lo};
            auto worker = [&] {
                UnitRunner runner(p, n);
                for (;;) {
                    if (stop.load()) return;
                    if (Clock::now() >= deadline) {
                        out_of_time = true;
                        stop = true;
                        return;
                    }
                    uint64_t i = next.fetch_add(1);
                    if (i >= hi) return;
                    tested += runner.run(units[i], found[i], stop);
                    if (!runner.interrupted()) done[i] = 1;
                }
            };
            std::vector<std::thread> pool;
            for (int t = 1; t < p.cfg.jobs; ++t) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            while (frontier < units.size() && done[frontier]) ++frontier;
            r.candidates += tested.exchange(0);
            for (uint64_t i = lo; i < hi; ++i) witness |= !found[i].empty();
            if (out_of_time) break;
            if (p.confirm && witness) break;
            r.frontier = {n, frontier};
            std::vector<GeneratingSet> partial = carried;
            for (uint64_t i = 0; i < frontier; ++i) partial.insert(partial.end(), found[i].begin(), found[i].end());
            save_checkpoint(p, r, false, partial);
        }
        std::vector<GeneratingSet> here = carried;
        carried.clear();
        for (uint64_t i = 0; i < std::min<uint64_t>(frontier, units.size()); ++i)
            here.insert(here.end(), found[i].begin(), found[i].end());
        if (p.confirm && witness) {
            for (auto& f : found) here.insert(here.end(), f.begin(), f.end());
            r.best_order = n;
            r.witnesses = here;
            r.frontier = {n, frontier};
            r.exhaustive = false;
            finish(p, r);
            return r;
        }
        if (out_of_time) {
            r.budget_exceeded = true;
            r.frontier = {n, frontier};
            save_checkpoint(p, r, false, here);
            r.witnesses = here;
            return r;
        }
        r.lowest_scanned = n;
        if (!here.empty()) {
            r.best_order = n;
            r.witnesses = here;
            r.frontier = {n, units.size()};
            break;
        }
        r.frontier = {n - 1, 0};
    }
    r.exhaustive = !r.heuristic_filters;
    save_checkpoint(p, r, true, r.witnesses);
    finish(p, r);
    return r;
}

}  // namespace

std::vector<WorkUnit> work_units(const SearchConfig& cfg, int64_t n) {
    const int f = cfg.degree / 2;
    const int64_t top = top_value(n);
    std::vector<int64_t> non_units;
    for (int64_t v = 2; v <= top; ++v)
        if (gcd64(v, n) > 1) non_units.push_back(v);
    std::vector<WorkUnit> out;
    auto pairs = [&](const std::vector<int64_t>& pool, bool first_fixed, bool non_unit) {
        for (size_t i = 0; i < pool.size(); ++i) {
            if (first_fixed && i > 0) break;
            if (f == 1) {
                out.push_back({pool[i], 0, non_unit});
                continue;
            }
            for (size_t j = i + 1; j < pool.size(); ++j) out.push_back({pool[i], pool[j], non_unit});
        }
    };
    std::vector<int64_t> all;
    for (int64_t v = 1; v <= top; ++v) all.push_back(v);
    if (cfg.fix_one) {
        pairs(all, true, false);
        pairs(non_units, false, true);
    } else {
        pairs(all, false, false);
    }
    return out;
}

std::vector<WitnessClass> classify_witnesses(int64_t n, std::vector<GeneratingSet> witnesses) {
    std::sort(witnesses.begin(), witnesses.end(), [](const auto& a, const auto& b) { return a.gens < b.gens; });
    std::vector<WitnessClass> classes;
    for (auto& w : witnesses) {
        bool placed = false;
        for (auto& c : classes)
            if (find_multiplier(n, c.representative, w)) {
                c.members.push_back(w);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({w, {w}});
    }
    return classes;
}

SearchResult exhaustive_extremal(const SearchConfig& cfg) { return scan(make_plan(cfg, false)); }

bool confirm_extremality(int degree, int k, int64_t claimed_n, SearchConfig cfg) {
    cfg.degree = degree;
    cfg.diameter = k;
    cfg.n_min = claimed_n + 1;
    Plan p = make_plan(cfg, true);
    p.n_lo = claimed_n + 1;
    if (p.n_lo > p.n_hi) return true;
    SearchResult r = scan(p);
    if (r.budget_exceeded)
        throw Error(Errc::BudgetExceeded, "stopped at order " + std::to_string(r.frontier.n) + ", unit " +
                                              std::to_string(r.frontier.unit));
    return r.best_order == 0;
}

}  // namespace circdd
