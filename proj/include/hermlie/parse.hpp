#pragma once

// Algebra I/O: canonical JSON {"dim": n, "brackets": [{"i":..,"j":..,"k":..,"c":..}]}
// and the structure-equation tuple format "(f^{23}, f^{36}, -f^{26}, 0, 0, 0)",
// where entry k gives df^k and translates to brackets via the convention
// d alpha(X,Y) = -alpha([X,Y]). Indices in both formats are 1-based.

#include "hermlie/lie_core.hpp"

#include <string>

namespace hermlie {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// auto-detects JSON ('{' first) vs tuple ('(' first)
LieAlgebra parse_algebra(const std::string& text);
LieAlgebra parse_algebra_json(const std::string& text);
LieAlgebra parse_algebra_tuple(const std::string& text);

std::string print_algebra_json(const LieAlgebra& L);
// canonical tuple printer: sorted indices, minimal signs
std::string print_algebra_tuple(const LieAlgebra& L);

}  // namespace hermlie
