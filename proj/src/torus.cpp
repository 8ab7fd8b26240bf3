#include "weylq/torus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>

namespace weylq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExpGuard = 700.0;

Cplx guarded_exp(Cplx s) {
  if (std::abs(s.real()) > kExpGuard)
    throw range_error("exp overflow: |Re(exponent)| = " + std::to_string(std::abs(s.real())));
  return std::exp(s);
}

}  // namespace

Cplx TorusPoint::exponent(const IVec& fw) const {
  Cplx s(0, 0);
  for (size_t j = 0; j < fw.size(); ++j)
    if (fw[j] != 0) s += double(fw[j]) * z[j];
  return s;
}

Cplx TorusPoint::exponent(const CVec& fw) const {
  Cplx s(0, 0);
  for (size_t j = 0; j < fw.size(); ++j) s += fw[j] * z[j];
  return s;
}

Cplx TorusPoint::eval(const IVec& fw) const {
  if (angle_frac) {
    Rat phase = 0;
    for (size_t j = 0; j < fw.size(); ++j)
      if (fw[j] != 0) phase += Rat(fw[j]) * (*angle_frac)[j];
    return std::polar(1.0, kTwoPi * to_double(frac_part(phase)));
  }
  return guarded_exp(exponent(fw));
}

bool TorusPoint::is_one_exact(const IVec& fw) const {
  if (!angle_frac) throw internal_error("is_one_exact on a non-exact torus point");
  Rat phase = 0;
  for (size_t j = 0; j < fw.size(); ++j)
    if (fw[j] != 0) phase += Rat(fw[j]) * (*angle_frac)[j];
  return frac_part(phase) == 0;
}

TorusPoint TorusPoint::inverse() const {
  TorusPoint out = *this;
  for (auto& c : out.z) c = -c;
  if (out.angle_frac)
    for (auto& f : *out.angle_frac) f = frac_part(-f);
  return out;
}

TorusPoint torus_angle_exact(const RootSystem& rs, RVec coords_2pi) {
  if (static_cast<int>(coords_2pi.size()) != rs.rank)
    throw argument_error("angle coordinate count != rank");
  TorusPoint t;
  t.kind = TorusPoint::Kind::angle;
  for (auto& c : coords_2pi) c = frac_part(c);
  t.z.resize(rs.rank);
  for (int j = 0; j < rs.rank; ++j) t.z[j] = Cplx(0.0, kTwoPi * to_double(coords_2pi[j]));
  t.angle_frac = std::move(coords_2pi);
  return t;
}

TorusPoint torus_angle(const RootSystem& rs, const std::vector<double>& coords_2pi) {
  if (static_cast<int>(coords_2pi.size()) != rs.rank)
    throw argument_error("angle coordinate count != rank");
  TorusPoint t;
  t.kind = TorusPoint::Kind::angle;
  t.z.resize(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    double f = coords_2pi[j] - std::floor(coords_2pi[j]);
    t.z[j] = Cplx(0.0, kTwoPi * f);
  }
  return t;
}

TorusPoint torus_q_power(const RootSystem& rs, double q, const CVec& mu_fw) {
  if (!(q > 0.0 && q < 1.0)) throw argument_error("q must lie in (0,1)");
  if (static_cast<int>(mu_fw.size()) != rs.rank)
    throw argument_error("mu coordinate count != rank");
  const double logq = std::log(q);
  TorusPoint t;
  t.z.assign(rs.rank, Cplx(0, 0));
  bool real_mu = true;
  for (int i = 0; i < rs.rank; ++i) {
    if (mu_fw[i].imag() != 0.0) real_mu = false;
    for (int j = 0; j < rs.rank; ++j) t.z[i] += logq * rs.coroot_from_fw_d[i][j] * mu_fw[j];
  }
  t.kind = real_mu ? TorusPoint::Kind::q_power : TorusPoint::Kind::mixed;
  return t;
}

bool torus_points_equal(const RootSystem& rs, const TorusPoint& a, const TorusPoint& b,
                        double tol) {
  if (a.exact() && b.exact()) {
    for (int j = 0; j < rs.rank; ++j)
      if (frac_part((*a.angle_frac)[j] - (*b.angle_frac)[j]) != 0) return false;
    return true;
  }
  // Compare as functionals on P via the fw basis, modulo 2*pi*i.
  for (int j = 0; j < rs.rank; ++j) {
    Cplx d = a.z[j] - b.z[j];
    if (std::abs(d.real()) > tol) return false;
    double im = d.imag() / kTwoPi;
    if (std::abs(im - std::round(im)) > tol) return false;
  }
  return true;
}

bool is_central(const RootSystem& rs, const TorusPoint& t, double tol) {
  for (const Root& root : rs.positive_roots) {
    if (t.exact()) {
      if (!t.is_one_exact(root.fw)) return false;
    } else {
      if (std::abs(t.eval(root.fw) - 1.0) > tol) return false;
    }
  }
  return true;
}

bool is_regular(const RootSystem& rs, const TorusPoint& t, double tol) {
  for (const Root& root : rs.positive_roots) {
    if (t.exact()) {
      if (t.is_one_exact(root.fw)) return false;
    } else {
      if (std::abs(t.eval(root.fw) - 1.0) <= tol) return false;
    }
  }
  return true;
}

std::vector<TorusPoint> center_points(const RootSystem& rs) {
  if (rs.form == GroupForm::adjoint)
    return {torus_angle_exact(rs, RVec(rs.rank, Rat(0)))};
  // Solve t^{alpha_j} = 1 for all j: angle vectors c with cartan^T c integral.
  // Generators of the solution lattice mod Z^r are the rows of cartan^{-1}.
  std::set<RVec> seen;
  std::deque<RVec> queue;
  RVec zero(rs.rank, Rat(0));
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    RVec cur = queue.front();
    queue.pop_front();
    for (int g = 0; g < rs.rank; ++g) {
      RVec next = cur;
      for (int j = 0; j < rs.rank; ++j) next[j] = frac_part(next[j] + rs.root_from_fw[g][j]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  if (seen.size() != static_cast<size_t>(rs.cartan_det))
    throw internal_error("center size != det(Cartan)");
  std::vector<TorusPoint> out;
  for (const RVec& c : seen) out.push_back(torus_angle_exact(rs, c));  // set is sorted
  return out;
}

namespace {

// Reflection in a (positive) root as an enumerated Weyl element.
size_t reflection_index(const RootSystem& rs, int root_idx) {
  const Root& alpha = rs.positive_roots[root_idx];
  const int r = rs.rank;
  std::vector<long long> mat(static_cast<size_t>(r) * r, 0);
  for (int j = 0; j < r; ++j) {
    // s_alpha(e_j) = e_j - (varpi_j, alpha^vee) alpha.
    Rat p = 0;
    for (int k = 0; k < r; ++k)
      if (alpha.fw[k] != 0) p += rs.gram_fw[j][k] * Rat(alpha.fw[k]);
    p = p / Rat(alpha.d);
    if (!is_integer(p)) throw internal_error("(varpi_j, alpha^vee) not integral");
    long long c = numerator(p).convert_to<long long>();
    mat[j * r + j] += 1;
    for (int k = 0; k < r; ++k) mat[k * r + j] -= c * alpha.fw[k];
  }
  return rs.weyl.index_of(mat);
}

}  // namespace

StabilizerData stabilizer_data(const RootSystem& rs, const TorusPoint& t0, double tol) {
  if (!(tol > 0)) throw argument_error("stabilizer tolerance must be positive");
  StabilizerData st;
  st.tol = tol;
  for (size_t i = 0; i < rs.positive_roots.size(); ++i) {
    const Root& alpha = rs.positive_roots[i];
    IVec neg(alpha.fw.size());
    for (size_t k = 0; k < neg.size(); ++k) neg[k] = -alpha.fw[k];
    bool member;
    if (t0.exact()) {
      member = t0.is_one_exact(neg);
    } else {
      double dist = std::abs(t0.eval(neg) - 1.0);
      if (dist >= tol && dist < 10 * tol)
        throw precision_error(
            "membership of a root in Delta^0 is ambiguous (|t^-alpha - 1| = " +
            std::to_string(dist) + " in [tol, 10*tol)); use a smaller tol or exact angles");
      member = dist < tol;
    }
    if (member) st.delta0_plus.push_back(static_cast<int>(i));
  }

  st.rho0_fw.assign(rs.rank, Rat(0));
  for (int idx : st.delta0_plus)
    for (int k = 0; k < rs.rank; ++k)
      st.rho0_fw[k] += Rat(rs.positive_roots[idx].fw[k]) / 2;

  // W_0 = subgroup generated by the reflections in Delta^0. For angle-type
  // points this is exactly the stabilizer {w : w t0 = t0} (checked below when
  // the angles are exact).
  std::set<size_t> w0{0};
  std::deque<size_t> queue{0};
  std::vector<size_t> gens;
  for (int idx : st.delta0_plus) gens.push_back(reflection_index(rs, idx));
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (size_t g : gens) {
      size_t nxt = rs.weyl.multiply(cur, g);
      if (w0.insert(nxt).second) queue.push_back(nxt);
    }
  }
  st.w0.assign(w0.begin(), w0.end());

  if (t0.exact() && t0.kind == TorusPoint::Kind::angle) {
    size_t stab_count = 0;
    for (size_t w = 0; w < rs.weyl.size(); ++w) {
      bool fixes = true;
      for (int j = 0; j < rs.rank && fixes; ++j) {
        IVec e(rs.rank, 0);
        e[j] = 1;
        IVec img = rs.weyl.apply(rs.weyl[w].inverse, e);
        for (int k = 0; k < rs.rank; ++k) img[k] -= e[k];
        if (!t0.is_one_exact(img)) fixes = false;
      }
      if (fixes) ++stab_count;
    }
    if (stab_count != st.w0.size())
      throw internal_error("stabilizer of angle point != reflection subgroup of Delta^0");
  }

  // Minimal-length coset representatives of W_0 \ W.
  std::vector<size_t> order(rs.weyl.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rs.weyl[a].length != rs.weyl[b].length) return rs.weyl[a].length < rs.weyl[b].length;
    return a < b;
  });
  std::vector<char> covered(rs.weyl.size(), 0);
  for (size_t w : order) {
    if (covered[w]) continue;
    st.coset_reps.push_back(w);
    for (size_t u : st.w0) covered[rs.weyl.multiply(u, w)] = 1;
  }
  if (st.coset_reps.size() * st.w0.size() != rs.weyl.size())
    throw internal_error("|W_0 \\ W| * |W_0| != |W|");

  // Delta_+^{w',0} = {beta in Delta_+ : +-beta in (w')^{-1} Delta^0_+}.
  for (size_t rep : st.coset_reps) {
    std::vector<int> roots;
    size_t rep_inv = rs.weyl[rep].inverse;
    for (int idx : st.delta0_plus) {
      IVec img = rs.weyl.apply(rep_inv, rs.positive_roots[idx].fw);
      for (size_t i = 0; i < rs.positive_roots.size(); ++i) {
        const IVec& fw = rs.positive_roots[i].fw;
        bool plus = true, minus = true;
        for (int k = 0; k < rs.rank; ++k) {
          if (img[k] != fw[k]) plus = false;
          if (img[k] != -fw[k]) minus = false;
        }
        if (plus || minus) {
          roots.push_back(static_cast<int>(i));
          break;
        }
      }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (roots.size() != st.delta0_plus.size())
      throw internal_error("|Delta_+^{w',0}| != |Delta^0_+|");
    st.delta_w0.push_back(std::move(roots));
  }
  return st;
}

SpanComplementReport span_complement_check(const RootSystem& rs,
                                           const std::vector<int>& delta0_plus) {
  const size_t np = rs.positive_roots.size();
  std::vector<char> in0(np, 0);
  for (int idx : delta0_plus) {
    if (idx < 0 || static_cast<size_t>(idx) >= np)
      throw argument_error("delta0 root index out of range");
    in0[idx] = 1;
  }

  auto find_signed = [&](const IVec& fw) -> int {
    for (size_t i = 0; i < np; ++i) {
      const IVec& r = rs.positive_roots[i].fw;
      bool plus = true, minus = true;
      for (int k = 0; k < rs.rank; ++k) {
        if (fw[k] != r[k]) plus = false;
        if (fw[k] != -r[k]) minus = false;
      }
      if (plus) return static_cast<int>(i) + 1;
      if (minus) return -(static_cast<int>(i) + 1);
    }
    throw internal_error("reflected root not found");
  };

  // Closure of Delta^0 under its own reflections.
  for (int a : delta0_plus)
    for (int b : delta0_plus) {
      const Root& alpha = rs.positive_roots[a];
      const Root& beta = rs.positive_roots[b];
      Rat p = 2 * rs.pair_fw(beta.fw, alpha.fw) / (2 * Rat(alpha.d));
      if (!is_integer(p)) throw internal_error("Cartan pairing not integral");
      long long c = numerator(p).convert_to<long long>();
      IVec img = beta.fw;
      for (int k = 0; k < rs.rank; ++k) img[k] -= c * alpha.fw[k];
      int s = find_signed(img);
      if (!in0[std::abs(s) - 1])
        throw argument_error("delta0 is not closed under its own reflections");
    }

  SpanComplementReport report;
  report.proper = delta0_plus.size() < np;

  // Basis of span(Delta \ Delta^0) by Gaussian elimination on fw coords.
  std::vector<RVec> complement_rows;
  for (size_t i = 0; i < np; ++i)
    if (!in0[i]) complement_rows.push_back(to_rvec(rs.positive_roots[i].fw));
  report.complement_rank = rational_rank(complement_rows);
  report.complement_full_rank = (report.complement_rank == rs.rank);

  auto in_span = [&](const IVec& fw) {
    auto rows = complement_rows;
    rows.push_back(to_rvec(fw));
    return rational_rank(rows) == report.complement_rank;
  };

  for (size_t i = 0; i < np; ++i) {
    for (int sign : {+1, -1}) {
      IVec fw = rs.positive_roots[i].fw;
      if (sign < 0)
        for (auto& c : fw) c = -c;
      SpanComplementEntry entry;
      entry.signed_root = sign * (static_cast<int>(i) + 1);
      entry.connects_complement = false;
      for (size_t j = 0; j < np && !entry.connects_complement; ++j) {
        if (in0[j]) continue;
        if (rs.pair_fw(fw, rs.positive_roots[j].fw) != 0) entry.connects_complement = true;
      }
      entry.in_complement_span = in_span(fw);
      if (entry.connects_complement && !entry.in_complement_span)
        report.implication_holds = false;
      report.entries.push_back(entry);
    }
  }
  return report;
}

}  // namespace weylq
