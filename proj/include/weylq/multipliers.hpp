#pragma once

#include <array>
#include <functional>
#include <optional>

#include "weylq/characters.hpp"
#include "weylq/fusion.hpp"

namespace weylq {

// Finite atomic measure on T/W. Atoms with W-equivalent torus points are
// merged at construction; the stored point is the canonical orbit
// representative (lexicographically smallest reduced coordinate vector).
struct AtomicMeasure {
  std::vector<std::pair<TorusPoint, Cplx>> atoms;
  double total_variation = 0;
  bool positive = false;  // all weights real and >= 0
};

AtomicMeasure make_measure(const RootSystem& rs,
                           std::vector<std::pair<TorusPoint, Cplx>> atoms);

// A multiplier on Irr = P+ (P+ ∩ Q in adjoint form), either measure-backed
//   omega(lambda) = (1/dim V(lambda)) sum_i c_i chi_lambda(t_i)
// or an explicit table/function.
struct Multiplier {
  GroupForm domain_form = GroupForm::simply_connected;
  std::function<Cplx(const Weight&)> eval;
  std::optional<AtomicMeasure> measure;

  Cplx operator()(const Weight& w) const { return eval(w); }
};

// Requires every atom to be angle-type (otherwise the character growth is
// unbounded over P+). Singular atoms are evaluated by the exact limit path.
Multiplier multiplier_from_measure(const RootSystem& rs, const AtomicMeasure& m);
Multiplier multiplier_from_table(const RootSystem& rs, std::function<Cplx(const Weight&)> fn);

// t^lambda for a central point t; constant on Q-cosets of P.
Cplx central_character(const RootSystem& rs, const TorusPoint& t, const Weight& lambda);

struct HMDecomposition {
  // Parallel to center_points(rs).
  std::vector<Cplx> center_coefficients;
  // Per unit shell {lo, hi, max |omega(lambda) - sum_t c(t) t^lambda|}.
  std::vector<std::array<double, 3>> residual;
  double horizon = 0;
};

// Blind extraction of the center part of omega: averages omega over the
// outer 20% of shells per P/Q class and inverts the finite Fourier transform
// over the central characters. Never reads omega's backing measure.
HMDecomposition hm_decompose(const RootSystem& rs, const Multiplier& omega, double horizon,
                             int threads = 1);

struct GramReport {
  double min_eigenvalue = 0;
  double norm = 0;  // spectral norm of the Hermitian part
  bool pass = false;
  double hermiticity_defect = 0;  // max |G - G*| relative to max |G|
  bool hermitian = true;          // defect within 1e-8
};

// Gram matrix G[l,m] = sum_nu mult(conj(l) (x) m, nu) * w(nu) * omega(nu)
// with weight w = classical dim by default. Pass iff the minimum eigenvalue
// of the Hermitian part is >= -1e-8 * ||G||. Passing is a necessary
// condition for complete positivity, not a sufficient one.
GramReport cp_gram_check(const RootSystem& rs, const Multiplier& omega,
                         const std::vector<Weight>& basis_cut,
                         const std::function<double(const Weight&)>& dim_weight = {},
                         int threads = 1);

// Dominant weights with dim V <= max_dim, the default Gram basis cut.
std::vector<Weight> gram_basis_by_dim(const RootSystem& rs, long long max_dim);

}  // namespace weylq
