#include "weylq/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "weylq/parallel.hpp"

namespace weylq {

namespace {

struct IVecHash {
  size_t operator()(const IVec& v) const {
    size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

const Int kDimGuard = 1000000;

void require_dominant(const RootSystem& rs, const Weight& lambda, const char* op) {
  if (!rs.is_dominant(lambda))
    throw argument_error(std::string(op) + ": weight is not dominant");
}

Cplx guarded_exp(Cplx s) {
  if (std::abs(s.real()) > 700.0)
    throw range_error("exp overflow: |Re(exponent)| = " + std::to_string(std::abs(s.real())));
  return std::exp(s);
}

}  // namespace

Int dim_v(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda, "dim_v");
  IVec shifted = lambda.fw;
  for (auto& c : shifted) c += 1;
  const IVec rho = rs.rho_fw();
  Int num = 1, den = 1;
  for (const Root& alpha : rs.positive_roots) {
    num *= Int(rs.pair_fw_scaled(shifted, alpha.fw));
    den *= Int(rs.pair_fw_scaled(rho, alpha.fw));
  }
  if (num % den != 0)
    throw internal_error("Weyl dimension formula produced a non-integer");
  return num / den;
}

double dim_v_d(const RootSystem& rs, const Weight& lambda) {
  return to_double(dim_v(rs, lambda));
}

Cplx alt_sum(const RootSystem& rs, const CVec& nu_fw, const TorusPoint& t) {
  Cplx total(0, 0);
  for (size_t w = 0; w < rs.weyl.size(); ++w) {
    CVec img = rs.weyl.apply(w, nu_fw);
    total += double(rs.weyl[w].sign) * guarded_exp(t.exponent(img));
  }
  return total;
}

Cplx character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  return character(rs, lambda, t, nullptr);
}

Cplx character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t,
               const StabilizerData* stab) {
  require_dominant(rs, lambda, "character");
  const Cplx den = alt_sum(rs, to_cvec(rs.rho_fw()), t);
  if (std::abs(den) >= kSingularThresholdFactor * double(rs.weyl.size())) {
    IVec shifted = lambda.fw;
    for (auto& c : shifted) c += 1;
    return alt_sum(rs, to_cvec(shifted), t) / den;
  }
  if (stab) return character_singular(rs, lambda, t, *stab);
  StabilizerData local = stabilizer_data(rs, t);
  return character_singular(rs, lambda, t, local);
}

Cplx character_singular(const RootSystem& rs, const Weight& lambda, const TorusPoint& t0,
                        const StabilizerData& stab) {
  require_dominant(rs, lambda, "character_singular");
  std::vector<char> in0(rs.positive_roots.size(), 0);
  for (int idx : stab.delta0_plus) in0[idx] = 1;

  // Prefactor denominator t0^rho prod_{alpha not in Delta^0_+} (1 - t0^{-alpha}).
  Cplx denom = t0.eval(rs.rho_fw());
  for (size_t i = 0; i < rs.positive_roots.size(); ++i) {
    if (in0[i]) continue;
    IVec neg(rs.rank);
    for (int k = 0; k < rs.rank; ++k) neg[k] = -rs.positive_roots[i].fw[k];
    Cplx factor = 1.0 - t0.eval(neg);
    if (std::abs(factor) < stab.tol)
      throw precision_error(
          "inconsistent stabilizer data: |1 - t0^{-alpha}| < tol for a root "
          "outside Delta^0 (tol mismatch)");
    denom *= factor;
  }

  // Inner denominator prod_{alpha in Delta^0_+} (rho_0, alpha), exact.
  Rat inner_den = 1;
  for (int idx : stab.delta0_plus)
    inner_den *= rs.pair_fw(stab.rho0_fw, to_rvec(rs.positive_roots[idx].fw));

  IVec shifted = lambda.fw;
  for (auto& c : shifted) c += 1;

  Cplx total(0, 0);
  for (size_t rep : stab.coset_reps) {
    IVec x = rs.weyl.apply(rep, shifted);
    Rat inner_num = 1;
    for (int idx : stab.delta0_plus) inner_num *= rs.pair_fw(x, rs.positive_roots[idx].fw);
    double inner = to_double(inner_num / inner_den);
    total += double(rs.weyl[rep].sign) * t0.eval(x) * inner;
  }
  return total / denom;
}

// ---------------------------------------------------------------------------
// Freudenthal
// ---------------------------------------------------------------------------

WeightMultiplicityTable weight_multiplicities(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda, "weight_multiplicities");
  WeightMultiplicityTable table;
  table.highest = lambda;
  table.dim = dim_v(rs, lambda);
  if (table.dim > kDimGuard)
    throw resource_error("dim V(lambda) = " + table.dim.str() +
                         " exceeds the multiplicity guard of 1e6");
  const int r = rs.rank;

  // Box bound: the simple-root coordinates of lambda - w0(lambda).
  IVec w0l = rs.weyl.apply(rs.weyl.longest(), lambda.fw);
  IVec diff(r);
  for (int i = 0; i < r; ++i) diff[i] = lambda.fw[i] - w0l[i];
  RVec kmax_rat = rs.simple_coords(Weight{diff});
  IVec kmax(r);
  double box = 1;
  for (int i = 0; i < r; ++i) {
    if (!is_integer(kmax_rat[i])) throw internal_error("lambda - w0(lambda) not in Q");
    kmax[i] = numerator(kmax_rat[i]).convert_to<long long>();
    if (kmax[i] < 0) throw internal_error("lambda - w0(lambda) not in Q+");
    box *= double(kmax[i] + 1);
  }
  if (box > 5e7) throw resource_error("weight multiplicity search box too large");

  // Dominant weights mu <= lambda, each with the root coords of lambda - mu.
  struct Candidate {
    IVec fw;
    IVec k;
    long long height;
  };
  std::vector<Candidate> cands;
  IVec k(r, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == r) {
      IVec fw = lambda.fw;
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) fw[i] -= k[j] * rs.cartan[i][j];
      for (int i = 0; i < r; ++i)
        if (fw[i] < 0) return;
      long long h = 0;
      for (int i = 0; i < r; ++i) h += k[i];
      cands.push_back({std::move(fw), k, h});
      return;
    }
    for (k[pos] = 0; k[pos] <= kmax[pos]; ++k[pos]) self(self, pos + 1);
    k[pos] = 0;
  };
  rec(rec, 0);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.fw < b.fw;
  });

  std::unordered_map<IVec, long long, IVecHash> mult;
  mult.reserve(cands.size() * 2);

  const IVec rho = rs.rho_fw();
  IVec lam_rho = lambda.fw;
  for (auto& c : lam_rho) c += 1;

  for (const Candidate& cand : cands) {
    if (cand.height == 0) {
      mult[cand.fw] = 1;
      continue;
    }
    // Freudenthal: (||l+rho||^2 - ||mu+rho||^2) m(mu)
    //            = 2 sum_{a>0} sum_{t>=1} (mu + t a, a) m(mu + t a).
    __int128 num = 0;
    for (const Root& alpha : rs.positive_roots) {
      IVec x = cand.fw;
      IVec kr = cand.k;
      for (long long step = 1;; ++step) {
        bool inside = true;
        for (int i = 0; i < r; ++i) {
          kr[i] -= alpha.in_simple[i];
          if (kr[i] < 0) inside = false;
        }
        if (!inside) break;
        for (int i = 0; i < r; ++i) x[i] += alpha.fw[i];
        Weight dom = rs.dominantize(x);
        auto it = mult.find(dom.fw);
        if (it == mult.end()) continue;  // not a weight
        num += static_cast<__int128>(it->second) * rs.pair_fw_scaled(x, alpha.fw);
      }
    }
    IVec mu_rho = cand.fw;
    for (auto& c : mu_rho) c += 1;
    IVec sum(r), dif(r);
    for (int i = 0; i < r; ++i) {
      sum[i] = lam_rho[i] + mu_rho[i];
      dif[i] = lam_rho[i] - mu_rho[i];
    }
    long long den = rs.pair_fw_scaled(sum, dif);
    if (den <= 0) throw internal_error("Freudenthal denominator not positive");
    __int128 twice = 2 * num;
    if (twice % den != 0) throw internal_error("Freudenthal multiplicity not integral");
    long long m = static_cast<long long>(twice / den);
    if (m < 0) throw internal_error("negative weight multiplicity");
    if (m > 0) mult[cand.fw] = m;
  }

  Int total = 0;
  for (const Candidate& cand : cands) {
    auto it = mult.find(cand.fw);
    if (it == mult.end()) continue;
    table.dominant_entries.emplace_back(cand.fw, it->second);
    for (IVec& orbit_pt : rs.orbit_of_dominant(cand.fw)) {
      table.entries.emplace_back(std::move(orbit_pt), it->second);
      total += it->second;
    }
  }
  std::sort(table.dominant_entries.begin(), table.dominant_entries.end());
  std::sort(table.entries.begin(), table.entries.end());
  if (total != table.dim)
    throw internal_error("sum of multiplicities " + total.str() +
                         " != Weyl dimension " + table.dim.str());
  return table;
}

Cplx character_from_table(const RootSystem& rs, const WeightMultiplicityTable& table,
                          const TorusPoint& t) {
  Cplx total(0, 0);
  for (const auto& [fw, m] : table.entries) {
    Cplx s(0, 0);
    for (int j = 0; j < rs.rank; ++j)
      if (fw[j] != 0) s += double(fw[j]) * t.z[j];
    total += double(m) * guarded_exp(s);
  }
  return total;
}

Cplx normalized_character(const RootSystem& rs, const Weight& lambda, const TorusPoint& t) {
  return character(rs, lambda, t) / dim_v_d(rs, lambda);
}

std::vector<ShellInterval> unit_shells(double first_lo, int count) {
  std::vector<ShellInterval> shells;
  shells.reserve(count);
  for (int i = 0; i < count; ++i)
    shells.push_back({first_lo + i, first_lo + i + 1});
  return shells;
}

std::vector<ConvergenceRow> convergence_scan(const RootSystem& rs, const TorusPoint& t,
                                             const std::vector<ShellInterval>& shells,
                                             int threads) {
  if (is_central(rs, t))
    throw argument_error("normalized character has constant modulus 1 on the center");
  double max_hi = 0;
  for (const auto& s : shells) max_hi = std::max(max_hi, s.hi);
  std::vector<Weight> all = rs.dominant_by_norm(max_hi);

  // Detect a singular scan point once; shells then share the stabilizer data.
  std::optional<StabilizerData> stab;
  if (std::abs(alt_sum(rs, to_cvec(rs.rho_fw()), t)) <
      kSingularThresholdFactor * double(rs.weyl.size()))
    stab = stabilizer_data(rs, t);

  std::vector<ConvergenceRow> rows(shells.size());
  parallel_for(shells.size(), threads, [&](size_t si) {
    ConvergenceRow row;
    row.lo = shells[si].lo;
    row.hi = shells[si].hi;
    for (const Weight& w : all) {
      double n = rs.shell_norm(w);
      if (n < row.lo || n >= row.hi) continue;
      ++row.num_weights;
      double value = std::abs(character(rs, w, t, stab ? &*stab : nullptr)) / dim_v_d(rs, w);
      if (value > row.max_abs) {
        row.max_abs = value;
        row.argmax = w.fw;
      }
    }
    rows[si] = std::move(row);
  });
  return rows;
}

}  // namespace weylq
