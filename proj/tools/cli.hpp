#pragma once

#include <string>

#include "shilov/algebra.hpp"

namespace shilov::cli {

// Exit codes: 0 success / all invariants pass, 1 invariant failures,
// 2 malformed input, 3 precondition violation, 4 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFail = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitNumerical = 4;

// Accepts the shorthand grammar (r, r^k, sym<r>, spin<n>, sum(a,b,...)) or a
// JSON descriptor {"kind":..., "params":...}. Throws ParseError.
AlgebraPtr parse_algebra(const std::string& text);

// Round-trippable JSON descriptor of an algebra.
std::string algebra_desc_json(const AlgebraPtr& a);

int run_cli(int argc, char** argv);

}  // namespace shilov::cli
