#pragma once

#include <vector>

#include "weylq/root_system.hpp"
#include "weylq/torus.hpp"

namespace weylq {

// Dispatch threshold: the generic Weyl quotient is used while
// |alt_sum(rho, t)| >= kSingularThresholdFactor * |W|.
constexpr double kSingularThresholdFactor = 1e-8;

// Weyl dimension formula, exact. Throws argument_error for non-dominant
// lambda and internal_error if the quotient fails to be an integer.
Int dim_v(const RootSystem& rs, const Weight& lambda);
double dim_v_d(const RootSystem& rs, const Weight& lambda);

// A_nu(t) = sum_w (-1)^{l(w)} exp((w nu, X_t)); nu in fw coordinates.
Cplx alt_sum(const RootSystem& rs, const CVec& nu_fw, const TorusPoint& t);

// Weyl character. Uses the generic quotient at regular-enough points and the
// exact singular limit formula otherwise.
Cplx character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);
Cplx character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t,
               const StabilizerData* stab);

// Exact limit of the Weyl quotient at a singular point t0 with stabilizer
// data stab = stabilizer_data(rs, t0):
//   sum over minimal coset reps w' of W_0 \ W of
//     (-1)^{l(w')} t0^{w'(lambda+rho)}
//       / (t0^rho prod_{a in D+\D0+} (1 - t0^{-a}))
//       * prod_{a in D0+} (w'(lambda+rho), a) / prod_{a in D0+} (rho_0, a).
Cplx character_singular(const RootSystem& rs, const Weight& lambda, const TorusPoint& t0,
                        const StabilizerData& stab);

struct WeightMultiplicityTable {
  Weight highest;
  // Dominant weights with multiplicities, sorted by fw coords.
  std::vector<std::pair<IVec, long long>> dominant_entries;
  // Full weight system (orbit expansion of the dominant entries).
  std::vector<std::pair<IVec, long long>> entries;
  Int dim;  // sum of multiplicities; cross-checked against dim_v
};

// Freudenthal recursion in exact integer arithmetic. Independent of the
// alternating-sum path; serves as the character/dimension oracle.
// Guards dim_v(lambda) <= 1e6.
WeightMultiplicityTable weight_multiplicities(const RootSystem& rs, const Weight& lambda);

// chi_lambda(t) = sum_mu m(mu) t^mu evaluated directly from the table.
Cplx character_from_table(const RootSystem& rs, const WeightMultiplicityTable& table,
                          const TorusPoint& t);

Cplx normalized_character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t);

struct ShellInterval {
  double lo;
  double hi;
};

struct ConvergenceRow {
  double lo = 0;
  double hi = 0;
  size_t num_weights = 0;
  double max_abs = 0;
  IVec argmax;
};

std::vector<ShellInterval> unit_shells(double first_lo, int count);

// Per shell, max over dominant lambda (P+ ∩ Q in adjoint form) with
// ||lambda+rho|| in [lo,hi) of |chi_lambda(t)| / dim V(lambda).
// Throws argument_error if t is central. Shells are evaluated independently;
// the result does not depend on `threads`.
std::vector<ConvergenceRow> convergence_scan(const RootSystem& rs, const TorusPoint& t,
                                             const std::vector<ShellInterval>& shells,
                                             int threads = 1);

}  // namespace weylq
