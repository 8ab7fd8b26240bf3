#pragma once

#include <map>

#include "weylq/characters.hpp"
#include "weylq/root_system.hpp"

namespace weylq {

struct FusionDecomposition {
  Weight lhs;
  Weight rhs;
  std::map<IVec, long long> terms;  // dominant highest weight -> multiplicity
};

// Tensor product decomposition mult(lambda (x) mu, nu) by Klimyk reflection
// of lambda + wt(mu) + rho into the dominant chamber, fed by the Freudenthal
// weight table of the smaller factor. Exact integers, no thresholds.
// Guards dim(lambda) * dim(mu) <= 1e8.
FusionDecomposition fuse(const RootSystem& rs, const Weight& lambda, const Weight& mu);

// Conjugate highest weight -w0(lambda).
Weight conjugate_weight(const RootSystem& rs, const Weight& lambda);

}  // namespace weylq
