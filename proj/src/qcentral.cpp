#include "weylq/qcentral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "weylq/parallel.hpp"

namespace weylq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWallTol = 1e-8;

CVec scale_cvec(const CVec& v, Cplx s) {
  CVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
  return out;
}

CVec rho_cvec(const RootSystem& rs) { return to_cvec(rs.rho_fw()); }

// prod over positive roots of (x, alpha).
Cplx chamber_product(const RootSystem& rs, const CVec& x) {
  Cplx p(1, 0);
  for (const Root& alpha : rs.positive_roots) p *= rs.pair_fw_c(x, alpha.fw);
  return p;
}

double min_wall_distance(const RootSystem& rs, const CVec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const Root& alpha : rs.positive_roots)
    d = std::min(d, std::abs(rs.pair_fw_c(x, alpha.fw)));
  return d;
}

}  // namespace

QContext make_su_context(int n, double q) {
  if (n < 2 || n > 8) throw configuration_error("SU_q(N) supports N in 2..8");
  if (!(q > 0.0 && q < 1.0)) throw configuration_error("q must lie in (0,1) strictly");
  QContext ctx;
  ctx.rs = build_root_system(Series::A, n - 1, GroupForm::simply_connected);
  ctx.q = q;
  ctx.log_q = std::log(q);
  ctx.kappa = kTwoPi / std::abs(ctx.log_q);
  return ctx;
}

bool almost_real(const QContext& ctx, const CVec& nu_fw) {
  for (const Root& alpha : ctx.rs.positive_roots) {
    double im = ctx.rs.pair_fw_c(nu_fw, alpha.fw).imag();
    if (!(std::abs(im) < ctx.kappa)) return false;
  }
  return true;
}

Cplx phi_q(const QContext& ctx, const CVec& nu_fw, const Weight& lambda) {
  TorusPoint t_nu = torus_q_power(ctx.rs, ctx.q, nu_fw);
  IVec two_rho(ctx.rs.rank, 2);
  TorusPoint t_2rho = torus_q_power(ctx.rs, ctx.q, to_cvec(two_rho));
  return character(ctx.rs, lambda, t_nu) / character(ctx.rs, lambda, t_2rho);
}

namespace {

// Direct evaluation of phi^nu_1(q^mu); the caller guarantees genericity.
Cplx phi_one_direct(const QContext& ctx, const CVec& nu_fw, const CVec& mu_fw) {
  const RootSystem& rs = ctx.rs;
  CVec half_nu = scale_cvec(nu_fw, 0.5);
  TorusPoint t = torus_q_power(rs, ctx.q, mu_fw);
  Cplx num = alt_sum(rs, half_nu, t);
  Cplx den = alt_sum(rs, rho_cvec(rs), t);
  Cplx dim_num = chamber_product(rs, rho_cvec(rs));
  Cplx dim_den = chamber_product(rs, half_nu);
  return (num / den) * (dim_num / dim_den);
}

}  // namespace

Cplx phi_one(const QContext& ctx, const CVec& nu_fw, const CVec& mu_fw) {
  const RootSystem& rs = ctx.rs;
  bool mu_zero = true;
  for (const Cplx& c : mu_fw)
    if (c != Cplx(0, 0)) mu_zero = false;
  if (mu_zero) return Cplx(1, 0);  // spherical normalization at the identity

  CVec half_nu = scale_cvec(nu_fw, 0.5);
  double nu_scale = 1.0 + rs.norm_fw(half_nu);
  bool nu_singular = min_wall_distance(rs, half_nu) < kWallTol * nu_scale;

  TorusPoint t = torus_q_power(rs, ctx.q, mu_fw);
  bool mu_singular = std::abs(alt_sum(rs, rho_cvec(rs), t)) <
                     kSingularThresholdFactor * double(rs.weyl.size());

  if (!nu_singular && !mu_singular) return phi_one_direct(ctx, nu_fw, mu_fw);

  // Removable singularity: extrapolate along the rho direction in whichever
  // argument is degenerate (3 Richardson levels eps, eps/2, eps/4).
  CVec rho_c = rho_cvec(rs);
  auto evaluate = [&](double eps) {
    CVec nu_eps = nu_fw;
    CVec mu_eps = mu_fw;
    if (nu_singular)
      for (int i = 0; i < rs.rank; ++i) nu_eps[i] += eps * rho_c[i];
    if (mu_singular)
      for (int i = 0; i < rs.rank; ++i) mu_eps[i] += eps * rho_c[i];
    return phi_one_direct(ctx, nu_eps, mu_eps);
  };
  double eps = 0.02;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Cplx f1 = evaluate(eps), f2 = evaluate(eps / 2), f3 = evaluate(eps / 4);
    Cplx g1 = 2.0 * f2 - f1, g2 = 2.0 * f3 - f2;
    Cplx r = (4.0 * g2 - g1) / 3.0;
    if (std::abs(r - g2) <= 2e-3 * (1.0 + std::abs(r))) return r;
    eps /= 4;
  }
  throw precision_error("phi_one: extrapolation at a removable singularity did not converge");
}

bool is_generic_parameter(const QContext& ctx, const CVec& nu_fw) {
  for (int i = 0; i < static_cast<int>(ctx.rs.positive_roots.size()); ++i) {
    const Root& alpha = ctx.rs.positive_roots[i];
    Cplx v = ctx.rs.pair_fw_c(nu_fw, alpha.fw) / double(alpha.d);  // (nu, alpha^vee)
    double step = ctx.lattice_step(i);
    double k = std::round(v.imag() / step);
    double dist = std::hypot(v.real(), v.imag() - k * step);
    if (dist <= 1e-3 * ctx.kappa) return false;
  }
  return true;
}

double relation_check(const QContext& ctx, const CVec& nu_fw, const Weight& lambda) {
  if (!ctx.rs.is_dominant(lambda)) throw argument_error("relation_check: lambda not dominant");
  if (!is_generic_parameter(ctx, nu_fw))
    throw argument_error(
        "relation_check: nu is within 1e-3*kappa of the zero-locus lattice; "
        "use the limit evaluation path (phi_one) directly");
  Cplx lhs = phi_q(ctx, nu_fw, lambda);
  CVec arg(ctx.rs.rank);
  for (int i = 0; i < ctx.rs.rank; ++i) arg[i] = 2.0 * double(lambda.fw[i]) + 2.0;
  IVec two_rho(ctx.rs.rank, 2);
  Cplx rhs = phi_one(ctx, nu_fw, arg) / phi_one(ctx, nu_fw, to_cvec(two_rho));
  return std::abs(lhs - rhs);
}

bool zero_locus_predicate(const QContext& ctx, const CVec& nu_fw) {
  for (int i = 0; i < static_cast<int>(ctx.rs.positive_roots.size()); ++i) {
    const Root& alpha = ctx.rs.positive_roots[i];
    Cplx v = ctx.rs.pair_fw_c(nu_fw, alpha.fw) / double(alpha.d);
    if (std::abs(v.real()) >= kWallTol) continue;
    double step = ctx.lattice_step(i);
    long long k = std::llround(v.imag() / step);
    for (long long cand : {k, k - 1, k + 1}) {
      if (cand == 0) continue;
      if (std::abs(v.imag() - double(cand) * step) < kWallTol) return true;
    }
  }
  return false;
}

Cplx CentralClassCharacter::eval(const RootSystem& rs, const Weight& lambda) const {
  Rat pairing = rs.pair_fw(lambda.fw, p_fw);
  return std::polar(1.0, -kTwoPi * to_double(frac_part(pairing)));
}

std::pair<CVec, CentralClassCharacter> reduce_almost_real(const QContext& ctx,
                                                          const CVec& nu_fw) {
  const RootSystem& rs = ctx.rs;
  if (rs.series != Series::A)
    throw argument_error("reduce_almost_real is available for SU(N) (series A) only");
  const int r = rs.rank;

  std::vector<double> im(r);
  for (int i = 0; i < r; ++i) im[i] = nu_fw[i].imag();

  // max over roots of |(Im nu - kappa p, alpha)| / kappa for an integral p.
  auto gauge = [&](const IVec& p) {
    double worst = 0;
    for (const Root& alpha : rs.positive_roots) {
      double v = 0;
      for (int i = 0; i < r; ++i) {
        double coeff = im[i] - ctx.kappa * double(p[i]);
        for (int j = 0; j < r; ++j)
          if (alpha.fw[j] != 0) v += coeff * double(alpha.fw[j]) * rs.gram_fw_d[i][j];
      }
      worst = std::max(worst, std::abs(v) / ctx.kappa);
    }
    return worst;
  };

  IVec center(r);
  for (int i = 0; i < r; ++i) center[i] = std::llround(im[i] / ctx.kappa);

  IVec best;
  double best_gauge = std::numeric_limits<double>::infinity();
  for (int radius : {2, 4}) {
    IVec p(r, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == r) {
        double g = gauge(p);
        if (g < best_gauge - 1e-15 ||
            (std::abs(g - best_gauge) <= 1e-15 && (best.empty() || p < best))) {
          best_gauge = g;
          best = p;
        }
        return;
      }
      for (long long v = center[pos] - radius; v <= center[pos] + radius; ++v) {
        p[pos] = v;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    if (best_gauge < 1.0 - 1e-10) break;
  }
  if (best_gauge >= 1.0 - 1e-10) {
    if (best_gauge <= 1.0 + 1e-10)
      throw precision_error("reduce_almost_real: nu lies on the boundary of almost-reality");
    throw internal_error(
        "reduce_almost_real: no coweight shift found (should not happen for SU(N))");
  }

  CVec reduced = nu_fw;
  for (int i = 0; i < r; ++i) reduced[i] -= Cplx(0, ctx.kappa * double(best[i]));
  CentralClassCharacter chi;
  chi.p_fw = best;
  chi.class_id = rs.class_of(Weight{best});
  return {std::move(reduced), std::move(chi)};
}

DecompositionReport decompose_central_state(const QContext& ctx, const CentralState& state,
                                            double horizon, int threads) {
  const RootSystem& rs = ctx.rs;
  if (state.atoms.empty()) throw argument_error("central state has no atoms");
  for (size_t i = 0; i < state.atoms.size(); ++i)
    if (!(state.atoms[i].mass > 0))
      throw argument_error("atom " + std::to_string(i) + ": mass must be positive");

  DecompositionReport report;
  report.horizon = horizon;

  struct Reduced {
    CVec nu;
    CentralClassCharacter chi;
    Cplx base;  // phi_one(nu', 2rho); real and positive for the accepted classes
  };
  std::vector<Reduced> reduced(state.atoms.size());
  IVec two_rho(rs.rank, 2);
  const CVec two_rho_c = to_cvec(two_rho);

  for (size_t i = 0; i < state.atoms.size(); ++i) {
    auto [nu_prime, chi] = reduce_almost_real(ctx, state.atoms[i].nu_fw);
    bool asserted = state.atoms[i].asserted_positive_definite;
    if (!asserted) {
      // Accepted classes: real dominant parameters and their coweight shifts
      // (2rho included). Anything else needs the explicit assertion flag.
      double worst_im = 0;
      for (const Root& alpha : rs.positive_roots)
        worst_im = std::max(worst_im, std::abs(rs.pair_fw_c(nu_prime, alpha.fw).imag()));
      if (worst_im > 1e-9 * ctx.kappa)
        throw argument_error("atom " + std::to_string(i) +
                             ": parameter is outside the accepted classes (reduced nu is "
                             "not real); set assert_positive_definite to override");
    }
    Cplx base = phi_one(ctx, nu_prime, two_rho_c);
    bool ok = asserted ? std::abs(base) > 1e-6 : base.real() > 1e-6;
    if (!ok)
      throw precision_error("atom " + std::to_string(i) +
                            ": zero denominator, phi_one(nu - chi, 2rho) = " +
                            std::to_string(base.real()) + " is not > 1e-6");
    reduced[i] = {std::move(nu_prime), std::move(chi), base};
    report.base_values.push_back(std::abs(base));
  }

  std::map<size_t, ComponentReport> components;
  for (size_t i = 0; i < state.atoms.size(); ++i) {
    auto& comp = components[reduced[i].chi.class_id];
    comp.class_id = reduced[i].chi.class_id;
    comp.p_fw = reduced[i].chi.p_fw;
    comp.atom_indices.push_back(i);
    comp.norm += state.atoms[i].mass / std::abs(reduced[i].base);
  }
  for (auto& [cid, comp] : components) report.components.push_back(comp);

  report.norm_phi = 0;
  for (const auto& atom : state.atoms) report.norm_phi += atom.mass;
  report.sum_component_norms = 0;
  for (const auto& comp : report.components) report.sum_component_norms += comp.norm;
  report.c_empirical = 0;
  for (double base : report.base_values)
    report.c_empirical = std::max(report.c_empirical, 1.0 / base);
  const double slack = 1e-12 * (1.0 + report.c_empirical) * report.norm_phi;
  report.norm_inequality_ok =
      report.norm_phi <= report.sum_component_norms + slack &&
      report.sum_component_norms <= report.c_empirical * report.norm_phi + slack;

  // Pointwise reconstruction phi(lambda) = sum_chi chi(lambda) phi_chi(2lambda+2rho).
  std::vector<Weight> weights = rs.dominant_by_norm(horizon);
  const int s0 = static_cast<int>(std::floor(rs.shell_norm(Weight{IVec(rs.rank, 0)})));
  const int num_shells =
      std::max(1, static_cast<int>(std::floor(horizon - 1.0)) + 1 - s0);
  std::vector<std::vector<size_t>> shells(num_shells);
  for (size_t i = 0; i < weights.size(); ++i) {
    // Every lambda with ||lambda+rho|| <= horizon is checked; boundary
    // weights fold into the last shell row.
    int s = std::clamp(static_cast<int>(std::floor(rs.shell_norm(weights[i]))) - s0, 0,
                       num_shells - 1);
    shells[s].push_back(i);
  }
  report.residual_by_shell.assign(num_shells, {0, 0, 0});
  parallel_for(shells.size(), threads, [&](size_t s) {
    double worst = 0;
    for (size_t idx : shells[s]) {
      const Weight& lambda = weights[idx];
      Cplx lhs(0, 0);
      for (size_t i = 0; i < state.atoms.size(); ++i)
        lhs += state.atoms[i].mass * phi_q(ctx, state.atoms[i].nu_fw, lambda);
      CVec arg(rs.rank);
      for (int k = 0; k < rs.rank; ++k) arg[k] = 2.0 * double(lambda.fw[k]) + 2.0;
      Cplx rhs(0, 0);
      for (size_t i = 0; i < state.atoms.size(); ++i)
        rhs += state.atoms[i].mass * reduced[i].chi.eval(rs, lambda) *
               phi_one(ctx, reduced[i].nu, arg) / reduced[i].base;
      double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
      worst = std::max(worst, rel);
    }
    report.residual_by_shell[s] = {double(s0 + static_cast<int>(s)),
                                   double(s0 + static_cast<int>(s) + 1), worst};
  });
  report.max_relative_residual = 0;
  for (const auto& row : report.residual_by_shell)
    report.max_relative_residual = std::max(report.max_relative_residual, row[2]);
  report.reconstruction_ok = report.max_relative_residual <= 1e-9;
  return report;
}

}  // namespace weylq
