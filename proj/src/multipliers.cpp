#include "weylq/multipliers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weylq/parallel.hpp"

namespace weylq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Canonical representative of the W-orbit of a torus point: apply every group
// element, reduce, take the lexicographic minimum.
TorusPoint canonical_orbit_rep(const RootSystem& rs, const TorusPoint& t) {
  if (t.exact()) {
    RVec best = *t.angle_frac;
    for (size_t w = 0; w < rs.weyl.size(); ++w) {
      // (w t)^lambda = t^{w^{-1} lambda}: fracs transform by the transposed
      // matrix of w^{-1}.
      const auto& m = rs.weyl[rs.weyl[w].inverse].mat;
      RVec cand(rs.rank, Rat(0));
      for (int j = 0; j < rs.rank; ++j) {
        for (int i = 0; i < rs.rank; ++i)
          if (m[i * rs.rank + j] != 0)
            cand[j] += Rat(m[i * rs.rank + j]) * (*t.angle_frac)[i];
        cand[j] = frac_part(cand[j]);
      }
      if (cand < best) best = cand;
    }
    return torus_angle_exact(rs, best);
  }
  auto reduced = [&](const CVec& z) {
    CVec out(z.size());
    for (size_t j = 0; j < z.size(); ++j) {
      double im = z[j].imag() / kTwoPi;
      im -= std::floor(im);
      out[j] = Cplx(z[j].real(), im * kTwoPi);
    }
    return out;
  };
  auto lex_less = [](const CVec& a, const CVec& b) {
    for (size_t j = 0; j < a.size(); ++j) {
      if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
      if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
    }
    return false;
  };
  CVec best = reduced(t.z);
  for (size_t w = 0; w < rs.weyl.size(); ++w) {
    const auto& m = rs.weyl[rs.weyl[w].inverse].mat;
    CVec cand(rs.rank, Cplx(0, 0));
    for (int j = 0; j < rs.rank; ++j)
      for (int i = 0; i < rs.rank; ++i)
        if (m[i * rs.rank + j] != 0) cand[j] += double(m[i * rs.rank + j]) * t.z[i];
    cand = reduced(cand);
    if (lex_less(cand, best)) best = cand;
  }
  TorusPoint out = t;
  out.z = std::move(best);
  out.angle_frac.reset();
  return out;
}

bool same_point(const RootSystem& rs, const TorusPoint& a, const TorusPoint& b) {
  return torus_points_equal(rs, a, b, 1e-12);
}

}  // namespace

AtomicMeasure make_measure(const RootSystem& rs,
                           std::vector<std::pair<TorusPoint, Cplx>> atoms) {
  AtomicMeasure m;
  for (auto& [pt, c] : atoms) {
    if (c == Cplx(0, 0)) continue;
    TorusPoint rep = canonical_orbit_rep(rs, pt);
    bool merged = false;
    for (auto& [existing, weight] : m.atoms) {
      if (same_point(rs, existing, rep)) {
        weight += c;
        merged = true;
        break;
      }
    }
    if (!merged) m.atoms.emplace_back(std::move(rep), c);
  }
  m.total_variation = 0;
  m.positive = true;
  for (const auto& [pt, c] : m.atoms) {
    m.total_variation += std::abs(c);
    if (c.imag() != 0.0 || c.real() < 0.0) m.positive = false;
  }
  return m;
}

Multiplier multiplier_from_measure(const RootSystem& rs, const AtomicMeasure& m) {
  for (const auto& [pt, c] : m.atoms)
    if (pt.kind != TorusPoint::Kind::angle)
      throw argument_error(
          "multiplier_from_measure: non-angle atom gives unbounded character growth");

  // Pre-resolve singular atoms so repeated evaluation takes the limit path
  // without recomputing stabilizers.
  auto stabs = std::make_shared<std::vector<std::optional<StabilizerData>>>();
  for (const auto& [pt, c] : m.atoms) {
    if (std::abs(alt_sum(rs, to_cvec(rs.rho_fw()), pt)) <
        kSingularThresholdFactor * double(rs.weyl.size()))
      stabs->push_back(stabilizer_data(rs, pt));
    else
      stabs->push_back(std::nullopt);
  }

  Multiplier out;
  out.domain_form = rs.form;
  out.measure = m;
  const RootSystem* rsp = &rs;
  auto atoms = m.atoms;
  out.eval = [rsp, atoms, stabs](const Weight& w) -> Cplx {
    Cplx total(0, 0);
    for (size_t i = 0; i < atoms.size(); ++i) {
      const auto& st = (*stabs)[i];
      total += atoms[i].second * character(*rsp, w, atoms[i].first, st ? &*st : nullptr);
    }
    return total / dim_v_d(*rsp, w);
  };
  return out;
}

Multiplier multiplier_from_table(const RootSystem& rs, std::function<Cplx(const Weight&)> fn) {
  Multiplier out;
  out.domain_form = rs.form;
  out.eval = std::move(fn);
  return out;
}

Cplx central_character(const RootSystem& rs, const TorusPoint& t, const Weight& lambda) {
  if (!t.exact() || !is_central(rs, t))
    throw argument_error("central_character: point is not in Z(K)");
  return t.eval(lambda.fw);
}

HMDecomposition hm_decompose(const RootSystem& rs, const Multiplier& omega, double horizon,
                             int threads) {
  std::vector<Weight> weights = rs.dominant_by_norm(horizon);
  if (weights.empty()) throw argument_error("hm_decompose: horizon below ||rho||");

  const int s0 = static_cast<int>(std::floor(rs.shell_norm(Weight{IVec(rs.rank, 0)})));
  // Only unit shells [s, s+1) fully inside [0, horizon] participate.
  const int num_shells = static_cast<int>(std::floor(horizon - 1.0)) + 1 - s0;
  if (num_shells < 1) throw argument_error("hm_decompose: horizon below ||rho|| + 1");
  std::vector<std::vector<size_t>> shell_members(num_shells);
  for (size_t i = 0; i < weights.size(); ++i) {
    int s = static_cast<int>(std::floor(rs.shell_norm(weights[i]))) - s0;
    if (s >= 0 && s < num_shells) shell_members[s].push_back(i);
  }

  // Tail window: the outer 20% of shells.
  const int window_start = static_cast<int>(std::ceil(0.8 * num_shells));
  const size_t num_classes = (rs.form == GroupForm::adjoint) ? 1 : rs.num_classes();

  std::vector<size_t> class_of(weights.size(), 0);
  if (rs.form != GroupForm::adjoint)
    for (size_t i = 0; i < weights.size(); ++i) class_of[i] = rs.class_of(weights[i]);

  // Coverage precondition: every class must appear in at least 3 window shells.
  for (size_t x = 0; x < num_classes; ++x) {
    int covered = 0;
    for (int s = window_start; s < num_shells; ++s) {
      bool hit = false;
      for (size_t i : shell_members[s])
        if (class_of[i] == x) {
          hit = true;
          break;
        }
      if (hit) ++covered;
    }
    if (covered < 3)
      throw argument_error(
          "hm_decompose: horizon too small for the class-averaging window "
          "(< 3 shells per class)");
  }

  // Evaluate omega once per weight; shells are independent work items.
  std::vector<Cplx> values(weights.size());
  parallel_for(shell_members.size(), threads, [&](size_t s) {
    for (size_t i : shell_members[s]) values[i] = omega.eval(weights[i]);
  });

  std::vector<Cplx> class_mean(num_classes, Cplx(0, 0));
  std::vector<size_t> class_count(num_classes, 0);
  for (int s = window_start; s < num_shells; ++s)
    for (size_t i : shell_members[s]) {
      class_mean[class_of[i]] += values[i];
      class_count[class_of[i]] += 1;
    }
  for (size_t x = 0; x < num_classes; ++x) class_mean[x] /= double(class_count[x]);

  std::vector<TorusPoint> centers = center_points(rs);
  HMDecomposition out;
  out.horizon = horizon;
  out.center_coefficients.assign(centers.size(), Cplx(0, 0));
  for (size_t ti = 0; ti < centers.size(); ++ti) {
    Cplx c(0, 0);
    for (size_t x = 0; x < num_classes; ++x) {
      Cplx tx = centers[ti].eval(rs.class_reps()[x].fw);
      c += class_mean[x] * std::conj(tx);
    }
    out.center_coefficients[ti] = c / double(num_classes);
  }

  out.residual.assign(num_shells, {0, 0, 0});
  parallel_for(shell_members.size(), threads, [&](size_t s) {
    double max_abs = 0;
    for (size_t i : shell_members[s]) {
      Cplx center_part(0, 0);
      for (size_t ti = 0; ti < centers.size(); ++ti)
        center_part += out.center_coefficients[ti] * centers[ti].eval(weights[i].fw);
      max_abs = std::max(max_abs, std::abs(values[i] - center_part));
    }
    out.residual[s] = {double(s0 + static_cast<int>(s)),
                       double(s0 + static_cast<int>(s) + 1), max_abs};
  });
  return out;
}

std::vector<Weight> gram_basis_by_dim(const RootSystem& rs, long long max_dim) {
  return rs.dominant_by_dim(Int(max_dim));
}

GramReport cp_gram_check(const RootSystem& rs, const Multiplier& omega,
                         const std::vector<Weight>& basis_cut,
                         const std::function<double(const Weight&)>& dim_weight,
                         int threads) {
  const size_t n = basis_cut.size();
  if (n == 0) throw argument_error("cp_gram_check: empty basis cut");
  for (size_t i = 0; i < n; ++i) {
    if (!rs.is_dominant(basis_cut[i]))
      throw argument_error("cp_gram_check: basis weights must be dominant");
    for (size_t j = i + 1; j < n; ++j)
      if (basis_cut[i] == basis_cut[j])
        throw argument_error("cp_gram_check: basis weights must be pairwise distinct");
  }
  auto weight_of = dim_weight ? dim_weight
                              : std::function<double(const Weight&)>(
                                    [&rs](const Weight& w) { return dim_v_d(rs, w); });

  // Per-row cache of the weighted omega values; fusion supports overlap a lot.
  Eigen::MatrixXcd g(n, n);
  parallel_for(n, threads, [&](size_t i) {
    std::map<IVec, Cplx> cache;
    Weight conj_i = conjugate_weight(rs, basis_cut[i]);
    for (size_t j = 0; j < n; ++j) {
      FusionDecomposition dec = fuse(rs, conj_i, basis_cut[j]);
      Cplx entry(0, 0);
      for (const auto& [nu, mult] : dec.terms) {
        auto it = cache.find(nu);
        if (it == cache.end())
          it = cache.emplace(nu, weight_of(Weight{nu}) * omega.eval(Weight{nu})).first;
        entry += double(mult) * it->second;
      }
      g(i, j) = entry;
    }
  });

  GramReport report;
  double scale = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(g(i, j)));
  double defect = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(g(i, j) - std::conj(g(j, i))));
  report.hermiticity_defect = (scale > 0) ? defect / scale : 0.0;
  // A defect flags omega(conj(lambda)) != conj(omega(lambda)), i.e. omega is
  // not self-adjoint. The eigenvalue test still runs on the Hermitian part so
  // the caller sees both diagnostics.
  report.hermitian = report.hermiticity_defect <= 1e-8;

  Eigen::MatrixXcd h = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw internal_error("Gram eigenvalue computation failed");
  const auto& ev = solver.eigenvalues();
  report.min_eigenvalue = ev(0);
  report.norm = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  report.pass = report.min_eigenvalue >= -1e-8 * report.norm;
  return report;
}

}  // namespace weylq
