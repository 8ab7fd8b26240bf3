#pragma once

#include <optional>
#include <vector>

#include "weylq/root_system.hpp"

namespace weylq {

// A point of the complexified torus, encoded by the complex vector z of
// coordinates in the simple-coroot basis: t^lambda = exp(sum_j lambda_j z_j)
// for lambda in fundamental-weight coordinates. Angle-type points (z purely
// imaginary) can carry exact angle fractions c_j with z_j = 2*pi*i*c_j, which
// makes root-character tests exact for rational angles.
struct TorusPoint {
  enum class Kind { angle, q_power, mixed };

  Kind kind = Kind::angle;
  CVec z;
  std::optional<RVec> angle_frac;  // fractions of 2*pi, reduced to [0,1)

  bool exact() const { return angle_frac.has_value(); }

  // Exponent (lambda, X) for lambda given in fw coordinates.
  Cplx exponent(const IVec& fw) const;
  Cplx exponent(const CVec& fw) const;

  // t^lambda; throws range_error if Re(exponent) overflows double exp.
  Cplx eval(const IVec& fw) const;

  // Exact test t^lambda = 1 (only for exact angle points).
  bool is_one_exact(const IVec& fw) const;

  TorusPoint inverse() const;
};

TorusPoint torus_angle_exact(const RootSystem& rs, RVec coords_2pi);
TorusPoint torus_angle(const RootSystem& rs, const std::vector<double>& coords_2pi);
// The point q^mu: X = log(q) * mu, mu given in fw coordinates.
TorusPoint torus_q_power(const RootSystem& rs, double q, const CVec& mu_fw);

bool torus_points_equal(const RootSystem& rs, const TorusPoint& a, const TorusPoint& b,
                        double tol = 1e-12);

// True iff t^alpha = 1 for every root (exactly for exact angle points).
bool is_central(const RootSystem& rs, const TorusPoint& t, double tol = 1e-12);
bool is_regular(const RootSystem& rs, const TorusPoint& t, double tol = 1e-12);

// All angle-type points with t^alpha = 1 for every root; identity first, then
// lexicographic by angle fractions. Size = det(Cartan) in the simply
// connected form; the adjoint form sees only the identity.
std::vector<TorusPoint> center_points(const RootSystem& rs);

// Root subsystem, stabilizer subgroup, and coset data attached to a torus
// point, as consumed by the singular character formula.
struct StabilizerData {
  std::vector<int> delta0_plus;            // indices into rs.positive_roots
  std::vector<size_t> w0;                  // Weyl indices of W_0 (subgroup)
  RVec rho0_fw;                            // half-sum of Delta^0_+
  std::vector<size_t> coset_reps;          // minimal-length reps of W_0 \ W
  std::vector<std::vector<int>> delta_w0;  // per rep: Delta_+^{w',0}
  double tol = 1e-10;
};

// Membership alpha in Delta^0 is |t0^{-alpha} - 1| < tol, exact for rational
// angles. A value in [tol, 10*tol) is ambiguous and raises precision_error.
StabilizerData stabilizer_data(const RootSystem& rs, const TorusPoint& t0,
                               double tol = 1e-10);

struct SpanComplementEntry {
  int signed_root;  // +(i+1) / -(i+1), i = index into positive_roots
  bool connects_complement;  // exists beta in Delta \ Delta^0 with (alpha,beta) != 0
  bool in_complement_span;
};

struct SpanComplementReport {
  std::vector<SpanComplementEntry> entries;  // over all of Delta
  bool implication_holds = true;  // connects_complement => in_complement_span
  bool proper = false;            // Delta^0 != Delta
  int complement_rank = 0;
  bool complement_full_rank = false;
};

// delta0_plus lists positive-root indices of a subsystem Delta^0; the input
// must be closed under its own reflections (argument_error otherwise).
SpanComplementReport span_complement_check(const RootSystem& rs,
                                           const std::vector<int>& delta0_plus);

}  // namespace weylq
