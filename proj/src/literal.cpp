#include "weakcomm/literal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace weakcomm {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

ExactMatrix parse_matrix(std::string_view text) {
  auto rows = split(text, ';');
  // Tolerate one trailing ';'.
  if (rows.size() > 1 && blank(rows.back())) rows.pop_back();
  const auto n = static_cast<Index>(rows.size());
  ExactMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto entries = split(rows[static_cast<std::size_t>(i)], ',');
    if (static_cast<Index>(entries.size()) != n)
      throw std::invalid_argument("matrix literal: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(entries.size()) + " entries, expected " +
                                  std::to_string(n));
    for (Index j = 0; j < n; ++j) m(i, j) = GaussRational::parse(entries[static_cast<std::size_t>(j)]);
  }
  return m;
}

std::string format_matrix(const ExactMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += "; ";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += m(i, j).to_string();
    }
  }
  return out;
}

std::string pretty_matrix(const ExactMatrix& m, std::string_view indent) {
  std::vector<std::size_t> width(static_cast<std::size_t>(m.cols()), 0);
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      width[static_cast<std::size_t>(j)] =
          std::max(width[static_cast<std::size_t>(j)], m(i, j).to_string().size());
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    os << indent << "[ ";
    for (Index j = 0; j < m.cols(); ++j) {
      const std::string s = m(i, j).to_string();
      os << std::string(width[static_cast<std::size_t>(j)] - s.size(), ' ') << s;
      os << (j + 1 < m.cols() ? "  " : " ");
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace weakcomm
