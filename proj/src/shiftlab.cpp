#include "weakcomm/shiftlab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace weakcomm {

GaussRational WeightRule::weight(int k) const {
  if (k < 1) throw std::invalid_argument("weight index must be >= 1");
  if (k <= static_cast<int>(head.size())) return head[k - 1];
  if (cycle.empty()) return GaussRational(0);
  const GaussRational& c = cycle[(k - 1) % cycle.size()];
  if (!harmonic) return c;
  if (k + offset == 0) throw std::domain_error("harmonic weight with zero denominator");
  return c / GaussRational(k + offset);
}

int LTwoOpSpec::support() const {
  int s = 0;
  for (const auto& e : finite_rank) s = std::max({s, e.row, e.col});
  return s;
}

LTwoOpSpec operator+(const LTwoOpSpec& a, const LTwoOpSpec& b) {
  LTwoOpSpec r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  r.finite_rank.insert(r.finite_rank.end(), b.finite_rank.begin(), b.finite_rank.end());
  return r;
}

namespace {

std::string compact(const GaussRational& z) {
  std::string s = z.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

std::string join(const std::vector<GaussRational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += compact(v[i]);
  }
  return out;
}

std::vector<GaussRational> split_list(const std::string& s) {
  std::vector<GaussRational> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(GaussRational::parse(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

const char* direction_name(ShiftDirection d) {
  switch (d) {
    case ShiftDirection::down: return "down";
    case ShiftDirection::up: return "up";
    case ShiftDirection::none: return "none";
  }
  return "none";
}

int parse_index(const std::string& s, int line_no) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1)
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad index '" + s + "'");
  return v;
}

}  // namespace

std::string LTwoOpSpec::to_text() const {
  std::ostringstream os;
  for (const auto& t : terms) {
    os << "shift " << direction_name(t.direction);
    if (t.weights.harmonic) os << " harmonic offset=" << t.weights.offset;
    if (!t.weights.head.empty()) os << " head=" << join(t.weights.head);
    if (!t.weights.cycle.empty()) os << " cycle=" << join(t.weights.cycle);
    os << '\n';
  }
  for (const auto& e : finite_rank) os << "entry " << e.row << ' ' << e.col << ' ' << compact(e.value) << '\n';
  return os.str();
}

LTwoOpSpec LTwoOpSpec::parse(std::string_view text) {
  LTwoOpSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [line_no](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    if (tok[0] == "entry") {
      if (tok.size() < 4) fail("entry needs row, col and value");
      std::string value;
      for (std::size_t i = 3; i < tok.size(); ++i) value += tok[i];
      spec.finite_rank.push_back({parse_index(tok[1], line_no), parse_index(tok[2], line_no),
                                  GaussRational::parse(value)});
    } else if (tok[0] == "shift") {
      if (tok.size() < 2) fail("shift needs a direction");
      ShiftTerm term;
      if (tok[1] == "down") term.direction = ShiftDirection::down;
      else if (tok[1] == "up") term.direction = ShiftDirection::up;
      else if (tok[1] == "none") term.direction = ShiftDirection::none;
      else fail("unknown direction '" + tok[1] + "'");
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const std::string& t = tok[i];
        if (t == "harmonic") {
          term.weights.harmonic = true;
        } else if (t.rfind("offset=", 0) == 0) {
          try {
            term.weights.offset = std::stoi(t.substr(7));
          } catch (const std::exception&) {
            fail("bad offset '" + t + "'");
          }
        } else if (t.rfind("head=", 0) == 0) {
          term.weights.head = split_list(t.substr(5));
        } else if (t.rfind("cycle=", 0) == 0) {
          term.weights.cycle = split_list(t.substr(6));
        } else {
          fail("unknown shift option '" + t + "'");
        }
      }
      spec.terms.push_back(std::move(term));
    } else {
      fail("unknown keyword '" + tok[0] + "'");
    }
  }
  return spec;
}

LTwoOpSpec exnilp_t() {
  LTwoOpSpec s;
  s.terms.push_back({ShiftDirection::down, {{}, {GaussRational(1)}, true, 1}});
  return s;
}

LTwoOpSpec exnilp_n() {
  LTwoOpSpec s;
  s.finite_rank.push_back({2, 1, GaussRational::fraction(-1, 2)});
  return s;
}

LTwoOpSpec exnilp_q() {
  LTwoOpSpec s;
  s.terms.push_back({ShiftDirection::down, {{}, {GaussRational(-1), GaussRational(0)}, true, 1}});
  return s;
}

ExactMatrix truncate(const LTwoOpSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("truncate: n must be positive");
  if (n < spec.support())
    throw std::invalid_argument("truncate: n = " + std::to_string(n) + " is below the finite-rank support " +
                                std::to_string(spec.support()));
  ExactMatrix m = zeros(n);
  for (const auto& t : spec.terms) {
    for (int k = 1; k <= n; ++k) {
      switch (t.direction) {
        case ShiftDirection::down:
          if (k + 1 <= n) m(k, k - 1) += t.weights.weight(k);
          break;
        case ShiftDirection::up:
          if (k + 1 <= n) m(k - 1, k) += t.weights.weight(k);
          break;
        case ShiftDirection::none:
          m(k - 1, k - 1) += t.weights.weight(k);
          break;
      }
    }
  }
  for (const auto& e : spec.finite_rank) m(e.row - 1, e.col - 1) += e.value;
  return m;
}

SubspaceBasis finite_support_kernel(const LTwoOpSpec& spec, int n) {
  if (n < 2 || n < spec.support() + 1)
    throw std::invalid_argument("finite_support_kernel: n = " + std::to_string(n) + " is too small");
  const ExactMatrix section = truncate(spec, n);
  const ExactMatrix inner = detail::null_space(section.leftCols(n - 1));
  ExactMatrix embedded = ExactMatrix::Zero(n, inner.cols());
  embedded.topRows(n - 1) = inner;
  return SubspaceBasis::span(embedded);
}

bool same_finite_support_span(const SubspaceBasis& a, const SubspaceBasis& b) {
  const Index n = std::max(a.ambient_dim(), b.ambient_dim());
  auto pad = [n](const SubspaceBasis& s) {
    ExactMatrix v = ExactMatrix::Zero(n, s.dim());
    v.topRows(s.ambient_dim()) = s.vectors();
    return SubspaceBasis::span(v);
  };
  return pad(a) == pad(b);
}

std::vector<ConvergenceRow> eigen_convergence(const LTwoOpSpec& spec, const std::vector<int>& n_list,
                                              double cluster_tol) {
  if (n_list.empty()) throw std::invalid_argument("eigen_convergence: empty size list");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
    throw std::invalid_argument("eigen_convergence: sizes must be strictly ascending");
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    SpectrumSet s = eigenvalues(to_cmatrix(truncate(spec, n)), cluster_tol);
    const double r = s.max_modulus();
    rows.push_back({n, std::move(s), r});
  }
  return rows;
}

ProductChainCheck product_chain(const ExactMatrix& t, const ExactMatrix& n) {
  ProductChainCheck c;
  const ExactMatrix tn = t * n, nt = n * t;
  c.names = {"TNT", "NT^2", "NT", "N^2T", "NTN", "TN^2", "T^2N"};
  c.products = {ExactMatrix(tn * t), ExactMatrix(nt * t), nt, ExactMatrix(n * nt),
                ExactMatrix(nt * n), ExactMatrix(tn * n), ExactMatrix(t * tn)};
  c.equalities_hold = true;
  for (std::size_t i = 1; i < 6; ++i) c.equalities_hold = c.equalities_hold && exactly_equal(c.products[i], c.products[0]);
  c.last_differs = !exactly_equal(c.products[6], c.products[0]);
  return c;
}

}  // namespace weakcomm
