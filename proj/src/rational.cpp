#include "weylq/rational.hpp"

#include <cctype>

namespace weylq {

Rat parse_rational(const std::string& s) {
  auto bad = [&]() -> error {
    return argument_error("not a rational number: '" + s + "'");
  };
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw bad();
  auto slash = t.find('/');
  auto parse_int = [&](const std::string& u) -> Int {
    if (u.empty()) throw bad();
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i == u.size()) throw bad();
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) throw bad();
    return Int(u);
  };
  if (slash == std::string::npos) return Rat(parse_int(t));
  Int num = parse_int(t.substr(0, slash));
  Int den = parse_int(t.substr(slash + 1));
  if (den == 0) throw bad();
  return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat frac_part(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  Rat f = r - Rat(q);
  if (f < 0) f += 1;
  return f;
}

int rational_rank(std::vector<RVec> rows) {
  if (rows.empty()) return 0;
  const size_t ncols = rows[0].size();
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    for (size_t i = row + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[row][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[row][j];
    }
    ++row;
  }
  return static_cast<int>(row);
}

RVec solve_linear(std::vector<RVec> m, RVec b) {
  const size_t n = m.size();
  if (n == 0 || m[0].size() != n || b.size() != n)
    throw internal_error("solve_linear: shape mismatch");
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw internal_error("solve_linear: singular matrix");
    std::swap(m[col], m[pivot]);
    std::swap(b[col], b[pivot]);
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col] / m[col][col];
      for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      b[i] -= f * b[col];
    }
  }
  RVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

}  // namespace weylq
