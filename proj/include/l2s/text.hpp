#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace l2s {

/// Shortest round-trip decimal form of a double ("%.17g" fallback).
std::string format_double(double value);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char separator);

}  // namespace l2s
