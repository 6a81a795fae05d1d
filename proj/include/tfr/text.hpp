/**
 * @file text.hpp
 * @brief Locale-independent number formatting and small string helpers for the text formats.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tfr::text {

/// Shortest representation that reads back to the same double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double v);
/// Fixed notation with `digits` decimals.
std::string format_fixed(double v, int digits);

/// Whole-string parses; throw invalid-argument naming `what` on failure.
double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);
bool parse_bool(std::string_view s, std::string_view what);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace tfr::text
