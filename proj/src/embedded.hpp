#pragma once

#include <string_view>

namespace circdd::embedded {

std::string_view degree10();
std::string_view degree11();
std::string_view theorems();

}  // namespace circdd::embedded
