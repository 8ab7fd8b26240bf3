#include "weylq/fusion.hpp"

namespace weylq {

FusionDecomposition fuse(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  if (!rs.is_dominant(lambda) || !rs.is_dominant(mu))
    throw argument_error("fuse: both weights must be dominant");
  Int dl = dim_v(rs, lambda), dm = dim_v(rs, mu);
  if (dl * dm > Int(100000000))
    throw resource_error("fuse: dim(lambda)*dim(mu) = " + Int(dl * dm).str() +
                         " exceeds the guard of 1e8");

  // Run Klimyk over the weight system of the smaller factor; the result is
  // symmetric in the two arguments.
  const Weight* big = &lambda;
  const Weight* small = &mu;
  if (dm > dl) std::swap(big, small);

  FusionDecomposition out;
  out.lhs = lambda;
  out.rhs = mu;

  auto table = rs.cached_table(*small);
  for (const auto& [wt, m] : table->entries) {
    IVec xi = big->fw;
    for (int i = 0; i < rs.rank; ++i) xi[i] += wt[i] + 1;  // lambda + wt + rho
    int sign = 1;
    Weight dom = rs.dominantize(std::move(xi), &sign);
    if (sign == 0) continue;  // on a wall: cancels
    IVec nu = dom.fw;
    for (auto& c : nu) c -= 1;
    out.terms[nu] += sign * m;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second == 0) {
      it = out.terms.erase(it);
    } else if (it->second < 0) {
      throw internal_error("Klimyk produced a negative fusion multiplicity");
    } else {
      ++it;
    }
  }
  return out;
}

Weight conjugate_weight(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_dominant(lambda)) throw argument_error("conjugate: weight must be dominant");
  IVec img = rs.weyl.apply(rs.weyl.longest(), lambda.fw);
  for (auto& c : img) c = -c;
  return Weight{std::move(img)};
}

}  // namespace weylq
