#pragma once

#include <array>
#include <utility>

#include "weylq/characters.hpp"

namespace weylq {

// Evaluation context for SU_q(N): the A_{N-1} root data, the deformation
// parameter q in (0,1), and the imaginary period scale kappa = 2*pi/|log q|.
struct QContext {
  RootSystem rs;  // series A, simply connected
  double q = 0.5;
  double log_q = 0;
  double kappa = 0;

  long long d_of_root(int idx) const { return rs.positive_roots[idx].d; }
  double lattice_step(int idx) const { return kappa / double(d_of_root(idx)); }
};

QContext make_su_context(int n, double q);

// |(Im nu, alpha)| < kappa for every root.
bool almost_real(const QContext& ctx, const CVec& nu_fw);

// Normalized q-character phi^nu_q(lambda) = chi_lambda(q^nu) / chi_lambda(q^{2rho}).
Cplx phi_q(const QContext& ctx, const CVec& nu_fw, const Weight& lambda);

// Classical spherical function of the complexification,
//   phi^nu_1(q^mu) = [A_{nu/2}(q^mu) / A_rho(q^mu)] * prod(rho,a)/prod(nu/2,a),
// with removable singularities (nu on a chamber wall, or q^mu near the
// singular torus locus) evaluated by 3-level Richardson extrapolation along
// the rho direction. phi^nu_1 at mu = 0 is exactly 1.
Cplx phi_one(const QContext& ctx, const CVec& nu_fw, const CVec& mu_fw);

// |phi_q(nu,lambda) - phi_one(nu, 2lambda+2rho)/phi_one(nu, 2rho)|.
// Requires nu generic: every (nu, alpha^vee) must stay farther than
// 1e-3 * kappa from the lattice i*(2pi/|log q_alpha|)*Z (including 0).
double relation_check(const QContext& ctx, const CVec& nu_fw, const Weight& lambda);

bool is_generic_parameter(const QContext& ctx, const CVec& nu_fw);

// True iff some (nu, alpha^vee) lies within 1e-8 of a nonzero point of
// i*(2pi/|log q_alpha|)*Z with vanishing real part. Equivalent to
// phi_one(nu, 2rho) = 0 away from the margin band.
bool zero_locus_predicate(const QContext& ctx, const CVec& nu_fw);

// Character of P/Q attached to a coweight lift p (type A: P^vee = P):
// chi(lambda) = exp(-2*pi*i*(lambda, p)), matching nu' = nu - i*kappa*p.
struct CentralClassCharacter {
  IVec p_fw;
  size_t class_id = 0;
  Cplx eval(const RootSystem& rs, const Weight& lambda) const;
};

// Coweight reduction for SU(N): finds the shift making nu almost
// real. Throws argument_error for non-A series, precision_error when nu sits
// on the boundary of almost-reality (within 1e-10).
std::pair<CVec, CentralClassCharacter> reduce_almost_real(const QContext& ctx,
                                                          const CVec& nu_fw);

struct CentralStateAtom {
  CVec nu_fw;
  double mass = 0;
  bool asserted_positive_definite = false;
};

struct CentralState {
  int n = 2;  // SU_q(N)
  double q = 0.5;
  std::vector<CentralStateAtom> atoms;
};

struct ComponentReport {
  size_t class_id = 0;
  IVec p_fw;
  std::vector<size_t> atom_indices;
  double norm = 0;  // phi_chi(0) = sum m_i / phi_one(nu_i', 2rho)
};

struct DecompositionReport {
  std::vector<ComponentReport> components;   // sorted by class_id
  std::vector<double> base_values;           // per atom: phi_one(nu', 2rho)
  double norm_phi = 0;                       // phi(0) = sum of masses
  double sum_component_norms = 0;
  double c_empirical = 0;                    // max over atoms of 1/base value
  bool norm_inequality_ok = false;           // norm_phi <= sum <= C * norm_phi
  double horizon = 0;
  double max_relative_residual = 0;
  bool reconstruction_ok = false;            // residual <= 1e-9 everywhere
  std::vector<std::array<double, 3>> residual_by_shell;  // lo, hi, max rel
};

// Central-state decomposition: per class chi, the component
//   phi_chi(mu) = sum_{atoms in chi} m_i phi_one(nu_i', mu)/phi_one(nu_i', 2rho),
// verified pointwise against phi(lambda) = sum_chi chi(lambda) phi_chi(2lambda+2rho)
// for all dominant lambda with ||lambda+rho|| <= horizon.
DecompositionReport decompose_central_state(const QContext& ctx, const CentralState& state,
                                            double horizon, int threads = 1);

}  // namespace weylq
