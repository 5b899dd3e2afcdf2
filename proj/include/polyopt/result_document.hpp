#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "polyopt/optimizer.hpp"

namespace polyopt {

enum class OutputFormat { kJson, kText };

inline constexpr const char* kResultSchema = "polyopt.result/v1";

/// Isolating interval of the root of p selected by a Thom encoding.
RootInterval locate_root(const UPoly& p, const ThomEncoding& thom);

/// Enclosures of x_1..x_n at the entry's point, each of width <= width.
std::vector<RootInterval> entry_point(const MinimizerEntry& e, const Rat& width);

/// Enclosure of the entry's g-value, the root of the squarefree part of h
/// picked by value_thom.
RootInterval entry_value(const MinimizerEntry& e, const Rat& width);

/// Midpoint of an enclosure of width <= 10^-(digits+1), rounded to digits.
std::string approx_decimal(const RootInterval& iv, int digits);
Rat decimal_width(int digits);

nlohmann::json result_to_json(const MinimizerFamily& fam, const Problem& problem, const std::vector<std::string>& vars,
                              int precision);

/// Inverse of result_to_json on the exact fields.
MinimizerFamily family_from_json(const nlohmann::json& doc);

std::string emit_result(const MinimizerFamily& fam, const Problem& problem, const std::vector<std::string>& vars,
                        OutputFormat fmt, int precision);

}  // namespace polyopt
