#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <vector>

#include "weylq/errors.hpp"

namespace weylq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<long long>;          // integer coords (fund. weights)
using RVec = std::vector<Rat>;                // exact rational coords
using CVec = std::vector<std::complex<double>>;
using Cplx = std::complex<double>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

// Parses "p", "-p", "p/q". Used for exact angle coordinates in JSON/CLI input.
Rat parse_rational(const std::string& s);
std::string rational_to_string(const Rat& r);

// Fractional part in [0,1).
Rat frac_part(const Rat& r);

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Exact rank of a set of rational row vectors (Gaussian elimination).
int rational_rank(std::vector<RVec> rows);

// Solves M x = b exactly; M must be square and invertible.
RVec solve_linear(std::vector<RVec> m, RVec b);

inline RVec to_rvec(const IVec& v) {
  RVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

inline CVec to_cvec(const IVec& v) {
  CVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Cplx(double(v[i]), 0.0);
  return out;
}

inline CVec to_cvec(const RVec& v) {
  CVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Cplx(to_double(v[i]), 0.0);
  return out;
}

}  // namespace weylq
