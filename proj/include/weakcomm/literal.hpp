// Text form of exact matrices: rows separated by ';', entries by ',', each
// entry a scalar literal such as "1/2" or "1/2+3/4 i".
//
//   "0, 1; 0, 0"            -> [[0,1],[0,0]]
//   "1/2, i; -3/4+1/3 i, 0" -> Gaussian rational entries
#ifndef WEAKCOMM_LITERAL_HPP
#define WEAKCOMM_LITERAL_HPP

#include <string>
#include <string_view>

#include "weakcomm/exact.hpp"

namespace weakcomm {

/// Throws std::invalid_argument on ragged or non-square input.
ExactMatrix parse_matrix(std::string_view text);

/// Canonical literal; parse_matrix(format_matrix(m)) == m.
std::string format_matrix(const ExactMatrix& m);

/// Same entries laid out one row per line, columns aligned.
std::string pretty_matrix(const ExactMatrix& m, std::string_view indent = "  ");

}  // namespace weakcomm

#endif  // WEAKCOMM_LITERAL_HPP
