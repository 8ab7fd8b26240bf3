#include "weylq/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_set>

#include "weylq/characters.hpp"

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

RVec basis_vector(int dim, int i, Rat value = 1) {
  RVec v(dim, Rat(0));
  v[i] = value;
  return v;
}

unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

Rat ambient_pair(const RVec& x, const RVec& y, long long scale) {
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s * scale;
}

}  // namespace

Series series_from_char(char c) {
  switch (c) {
    case 'A': return Series::A;
    case 'B': return Series::B;
    case 'C': return Series::C;
    case 'D': return Series::D;
    case 'G': return Series::G;
    default:
      throw configuration_error(std::string("unknown series '") + c +
                                "'; expected one of A, B, C, D, G");
  }
}

std::string series_name(Series s, int rank) {
  return std::string(1, static_cast<char>(s)) + std::to_string(rank);
}

// ---------------------------------------------------------------------------
// WeylGroup
// ---------------------------------------------------------------------------

WeylGroup::WeylGroup(int rank, std::vector<WeylElement> elems, size_t longest)
    : rank_(rank), elems_(std::move(elems)), longest_(longest) {
  for (size_t i = 0; i < elems_.size(); ++i) index_[elems_[i].mat] = i;
}

size_t WeylGroup::index_of(const std::vector<long long>& mat) const {
  auto it = index_.find(mat);
  if (it == index_.end()) throw internal_error("matrix is not a Weyl group element");
  return it->second;
}

size_t WeylGroup::multiply(size_t a, size_t b) const {
  const int r = rank_;
  std::vector<long long> prod(static_cast<size_t>(r) * r, 0);
  const auto& ma = elems_[a].mat;
  const auto& mb = elems_[b].mat;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      long long aik = ma[i * r + k];
      if (aik == 0) continue;
      for (int j = 0; j < r; ++j) prod[i * r + j] += aik * mb[k * r + j];
    }
  return index_of(prod);
}

IVec WeylGroup::apply(size_t w, const IVec& x) const {
  const int r = rank_;
  const auto& m = elems_[w].mat;
  IVec y(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) y[i] += m[i * r + j] * x[j];
  return y;
}

RVec WeylGroup::apply(size_t w, const RVec& x) const {
  const int r = rank_;
  const auto& m = elems_[w].mat;
  RVec y(r, Rat(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m[i * r + j] != 0) y[i] += Rat(m[i * r + j]) * x[j];
  return y;
}

CVec WeylGroup::apply(size_t w, const CVec& x) const {
  const int r = rank_;
  const auto& m = elems_[w].mat;
  CVec y(r, Cplx(0, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m[i * r + j] != 0) y[i] += double(m[i * r + j]) * x[j];
  return y;
}

WeylGroup enumerate_weyl_group(const std::vector<std::vector<long long>>& cartan,
                               unsigned long long order,
                               const std::vector<Root>& positive_roots) {
  constexpr unsigned long long kOrderGuard = 100000;
  if (order > kOrderGuard)
    throw resource_error("Weyl group order " + std::to_string(order) +
                         " exceeds the enumeration guard of 1e5");
  const int r = static_cast<int>(cartan.size());
  const int rr = r * r;

  // Simple reflection matrices on fundamental-weight coordinates:
  // (s_i x)_k = x_k - x_i * cartan[k][i].
  std::vector<std::vector<long long>> gen(r, std::vector<long long>(rr, 0));
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) gen[i][k * r + k] = 1;
    for (int k = 0; k < r; ++k) gen[i][k * r + i] -= cartan[k][i];
  }

  std::vector<long long> id(rr, 0);
  for (int k = 0; k < r; ++k) id[k * r + k] = 1;

  std::map<std::vector<long long>, size_t> index;
  std::vector<std::vector<long long>> mats;
  std::vector<std::vector<int>> words;
  std::vector<std::vector<size_t>> trans;  // trans[e][g] = index of e * s_g

  mats.push_back(id);
  words.push_back({});
  index[id] = 0;
  for (size_t head = 0; head < mats.size(); ++head) {
    trans.emplace_back(r);
    for (int g = 0; g < r; ++g) {
      std::vector<long long> prod(rr, 0);
      for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
          long long aik = mats[head][i * r + k];
          if (aik == 0) continue;
          for (int j = 0; j < r; ++j) prod[i * r + j] += aik * gen[g][k * r + j];
        }
      auto it = index.find(prod);
      size_t idx;
      if (it == index.end()) {
        idx = mats.size();
        index[prod] = idx;
        mats.push_back(std::move(prod));
        auto w = words[head];
        w.push_back(g);
        words.push_back(std::move(w));
      } else {
        idx = it->second;
      }
      trans[head][g] = idx;
    }
  }
  if (mats.size() != order)
    throw internal_error("Weyl enumeration found " + std::to_string(mats.size()) +
                         " elements, expected " + std::to_string(order));

  // Lengths by inversion counting against the enumerated positive roots.
  std::unordered_set<IVec, IVecHash> negatives;
  for (const auto& root : positive_roots) {
    IVec neg(root.fw.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -root.fw[i];
    negatives.insert(neg);
  }
  std::vector<WeylElement> elems(mats.size());
  size_t longest = 0;
  for (size_t e = 0; e < mats.size(); ++e) {
    int len = 0;
    for (const auto& root : positive_roots) {
      IVec img(r, 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) img[i] += mats[e][i * r + j] * root.fw[j];
      if (negatives.count(img)) ++len;
    }
    if (len != static_cast<int>(words[e].size()))
      throw internal_error("Weyl length mismatch: inversion count " +
                           std::to_string(len) + " vs word length " +
                           std::to_string(words[e].size()));
    elems[e].mat = mats[e];
    elems[e].length = len;
    elems[e].sign = (len % 2 == 0) ? 1 : -1;
    if (elems[e].length > elems[longest].length) longest = e;
  }
  // Inverses: walk the reversed reduced word through the transition table.
  for (size_t e = 0; e < mats.size(); ++e) {
    size_t cur = 0;
    for (auto it = words[e].rbegin(); it != words[e].rend(); ++it)
      cur = trans[cur][*it];
    elems[e].inverse = cur;
  }
  return WeylGroup(r, std::move(elems), longest);
}

// ---------------------------------------------------------------------------
// RootSystem pairings and helpers
// ---------------------------------------------------------------------------

Rat RootSystem::pair_fw(const IVec& x, const IVec& y) const {
  Rat s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (x[i] != 0 && y[j] != 0) s += Rat(x[i]) * Rat(y[j]) * gram_fw[i][j];
  return s;
}

Rat RootSystem::pair_fw(const RVec& x, const RVec& y) const {
  Rat s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (x[i] != 0 && y[j] != 0) s += x[i] * y[j] * gram_fw[i][j];
  return s;
}

long long RootSystem::pair_fw_scaled(const IVec& x, const IVec& y) const {
  long long s = 0;
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      if (y[j] != 0) s += x[i] * y[j] * gram_fw_scaled[i][j];
  }
  return s;
}

double RootSystem::pair_fw_d(const IVec& x, const IVec& y) const {
  double s = 0;
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      if (y[j] != 0) s += double(x[i]) * double(y[j]) * gram_fw_d[i][j];
  }
  return s;
}

Cplx RootSystem::pair_fw_c(const CVec& x, const CVec& y) const {
  Cplx s(0, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += x[i] * y[j] * gram_fw_d[i][j];
  return s;
}

Cplx RootSystem::pair_fw_c(const CVec& x, const IVec& y) const {
  Cplx s(0, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (y[j] != 0) s += x[i] * double(y[j]) * gram_fw_d[i][j];
  return s;
}

double RootSystem::norm_fw(const CVec& x) const {
  CVec conj_x(x.size());
  for (size_t i = 0; i < x.size(); ++i) conj_x[i] = std::conj(x[i]);
  // Hermitian extension of the form; real and nonnegative.
  Cplx s(0, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += conj_x[i] * x[j] * gram_fw_d[i][j];
  return std::sqrt(std::max(0.0, s.real()));
}

bool RootSystem::is_dominant(const Weight& w) const {
  for (long long c : w.fw)
    if (c < 0) return false;
  return true;
}

RVec RootSystem::simple_coords(const Weight& w) const {
  RVec out(rank, Rat(0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (w.fw[j] != 0) out[i] += root_from_fw[i][j] * Rat(w.fw[j]);
  return out;
}

bool RootSystem::in_root_lattice(const Weight& w) const {
  for (const Rat& c : simple_coords(w))
    if (!is_integer(c)) return false;
  return true;
}

RVec RootSystem::ambient_of_fw(const RVec& fw) const {
  RVec out(ambient_dim, Rat(0));
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < ambient_dim; ++k)
      out[k] += fw[i] * fundamental_weights_ambient[i][k];
  return out;
}

RVec RootSystem::ambient_of(const Weight& w) const { return ambient_of_fw(to_rvec(w.fw)); }

Weight RootSystem::dominantize(IVec x, int* sign) const {
  int s = 1;
  const int cap = 4 * static_cast<int>(positive_roots.size()) + 16;
  for (int iter = 0;; ++iter) {
    int neg = -1;
    for (int i = 0; i < rank; ++i)
      if (x[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) break;
    if (iter > cap) throw internal_error("dominantize did not terminate");
    long long c = x[neg];
    for (int k = 0; k < rank; ++k) x[k] -= c * cartan[k][neg];
    s = -s;
  }
  if (sign) {
    *sign = s;
    for (int i = 0; i < rank; ++i)
      if (x[i] == 0) {
        *sign = 0;
        break;
      }
  }
  return Weight{std::move(x)};
}

std::vector<IVec> RootSystem::orbit_of_dominant(const IVec& x) const {
  std::set<IVec> seen;
  std::deque<IVec> queue;
  seen.insert(x);
  queue.push_back(x);
  std::vector<IVec> out;
  while (!queue.empty()) {
    IVec cur = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      if (cur[i] == 0) continue;
      IVec img = cur;
      long long c = cur[i];
      for (int k = 0; k < rank; ++k) img[k] -= c * cartan[k][i];
      if (seen.insert(img).second) queue.push_back(img);
    }
    out.push_back(std::move(cur));
  }
  return out;
}

size_t RootSystem::class_of(const Weight& w) const {
  RVec key = simple_coords(w);
  for (auto& c : key) c = frac_part(c);
  auto it = class_index_.find(key);
  if (it == class_index_.end()) throw internal_error("unindexed P/Q class");
  return it->second;
}

double RootSystem::shell_norm(const Weight& w) const {
  IVec shifted = w.fw;
  for (auto& c : shifted) c += 1;
  return std::sqrt(pair_fw_d(shifted, shifted));
}

namespace {

// Enumerates dominant coordinate vectors with pruning by a coordinatewise
// monotone predicate `keep` (true while the weight is still admissible).
template <typename Keep, typename Emit>
void enumerate_monotone(int rank, const Keep& keep, const Emit& emit) {
  IVec coords(rank, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == rank) {
      emit(coords);
      return;
    }
    for (long long v = 0;; ++v) {
      coords[i] = v;
      if (!keep(coords)) break;
      self(self, i + 1);
    }
    coords[i] = 0;
  };
  // `keep` must be monotone: raising any coordinate can only lose membership.
  rec(rec, 0);
}

}  // namespace

std::vector<Weight> RootSystem::dominant_by_norm(double max_norm) const {
  std::vector<Weight> out;
  const double bound = max_norm * max_norm;
  auto keep = [&](const IVec& c) {
    IVec shifted = c;
    for (auto& x : shifted) x += 1;
    return pair_fw_d(shifted, shifted) <= bound;
  };
  enumerate_monotone(rank, keep, [&](const IVec& c) {
    Weight w{c};
    if (form == GroupForm::adjoint && !in_root_lattice(w)) return;
    out.push_back(std::move(w));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> RootSystem::dominant_by_dim(const Int& max_dim) const {
  std::vector<Weight> out;
  auto keep = [&](const IVec& c) { return dim_v(*this, Weight{c}) <= max_dim; };
  enumerate_monotone(rank, keep, [&](const IVec& c) {
    Weight w{c};
    if (form == GroupForm::adjoint && !in_root_lattice(w)) return;
    out.push_back(std::move(w));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// build_root_system
// ---------------------------------------------------------------------------

namespace {

struct SeriesData {
  int ambient_dim;
  long long form_scale;
  std::vector<RVec> simple_roots;
  unsigned long long weyl_order;
  size_t positive_count;
};

SeriesData series_data(Series series, int rank) {
  auto fail = [&](const std::string& valid) -> configuration_error {
    return configuration_error("unsupported root system " + series_name(series, rank) +
                               "; supported: " + valid);
  };
  SeriesData sd;
  switch (series) {
    case Series::A: {
      if (rank < 1 || rank > 7) throw fail("A rank 1..7");
      sd.ambient_dim = rank + 1;
      sd.form_scale = 1;
      for (int i = 0; i < rank; ++i) {
        RVec v(sd.ambient_dim, Rat(0));
        v[i] = 1;
        v[i + 1] = -1;
        sd.simple_roots.push_back(v);
      }
      sd.weyl_order = factorial(rank + 1);
      sd.positive_count = static_cast<size_t>(rank) * (rank + 1) / 2;
      break;
    }
    case Series::B: {
      if (rank < 2 || rank > 4) throw fail("B rank 2..4");
      sd.ambient_dim = rank;
      sd.form_scale = 2;
      for (int i = 0; i + 1 < rank; ++i) {
        RVec v(rank, Rat(0));
        v[i] = 1;
        v[i + 1] = -1;
        sd.simple_roots.push_back(v);
      }
      sd.simple_roots.push_back(basis_vector(rank, rank - 1));
      sd.weyl_order = (1ull << rank) * factorial(rank);
      sd.positive_count = static_cast<size_t>(rank) * rank;
      break;
    }
    case Series::C: {
      if (rank < 2 || rank > 4) throw fail("C rank 2..4");
      sd.ambient_dim = rank;
      sd.form_scale = 1;
      for (int i = 0; i + 1 < rank; ++i) {
        RVec v(rank, Rat(0));
        v[i] = 1;
        v[i + 1] = -1;
        sd.simple_roots.push_back(v);
      }
      sd.simple_roots.push_back(basis_vector(rank, rank - 1, 2));
      sd.weyl_order = (1ull << rank) * factorial(rank);
      sd.positive_count = static_cast<size_t>(rank) * rank;
      break;
    }
    case Series::D: {
      if (rank < 3 || rank > 4) throw fail("D rank 3..4 (D2 is not simple)");
      sd.ambient_dim = rank;
      sd.form_scale = 1;
      for (int i = 0; i + 1 < rank; ++i) {
        RVec v(rank, Rat(0));
        v[i] = 1;
        v[i + 1] = -1;
        sd.simple_roots.push_back(v);
      }
      RVec v(rank, Rat(0));
      v[rank - 2] = 1;
      v[rank - 1] = 1;
      sd.simple_roots.push_back(v);
      sd.weyl_order = (1ull << (rank - 1)) * factorial(rank);
      sd.positive_count = static_cast<size_t>(rank) * (rank - 1);
      break;
    }
    case Series::G: {
      if (rank != 2) throw fail("G rank 2");
      sd.ambient_dim = 3;
      sd.form_scale = 1;
      sd.simple_roots.push_back(RVec{Rat(1), Rat(-1), Rat(0)});
      sd.simple_roots.push_back(RVec{Rat(-2), Rat(1), Rat(1)});
      sd.weyl_order = 12;
      sd.positive_count = 6;
      break;
    }
  }
  return sd;
}

}  // namespace

RootSystem build_root_system(Series series, int rank, GroupForm form) {
  SeriesData sd = series_data(series, rank);
  RootSystem rs;
  rs.series = series;
  rs.rank = rank;
  rs.form = form;
  rs.ambient_dim = sd.ambient_dim;
  rs.form_scale = sd.form_scale;
  rs.simple_roots_ambient = sd.simple_roots;
  rs.weyl_order = sd.weyl_order;

  auto pair_amb = [&](const RVec& x, const RVec& y) {
    return ambient_pair(x, y, rs.form_scale);
  };

  // Cartan matrix and root lengths.
  rs.cartan.assign(rank, std::vector<long long>(rank, 0));
  rs.d.assign(rank, 0);
  for (int i = 0; i < rank; ++i) {
    Rat aii = pair_amb(sd.simple_roots[i], sd.simple_roots[i]);
    Rat di = aii / 2;
    if (!is_integer(di)) throw internal_error("d_i not integral");
    rs.d[i] = numerator(di).convert_to<long long>();
    for (int j = 0; j < rank; ++j) {
      Rat a = 2 * pair_amb(sd.simple_roots[i], sd.simple_roots[j]) / aii;
      if (!is_integer(a)) throw internal_error("Cartan entry not integral");
      rs.cartan[i][j] = numerator(a).convert_to<long long>();
    }
  }
  if (*std::min_element(rs.d.begin(), rs.d.end()) != 1)
    throw internal_error("normalization (alpha,alpha)=2 for short roots violated");

  // Root closure in fundamental-weight coordinates. fw coords of alpha_j are
  // the j-th column of the Cartan matrix.
  std::set<IVec> roots;
  std::deque<IVec> queue;
  for (int j = 0; j < rank; ++j) {
    IVec fw(rank);
    for (int i = 0; i < rank; ++i) fw[i] = rs.cartan[i][j];
    if (roots.insert(fw).second) queue.push_back(fw);
    IVec neg(rank);
    for (int i = 0; i < rank; ++i) neg[i] = -fw[i];
    if (roots.insert(neg).second) queue.push_back(neg);
  }
  while (!queue.empty()) {
    IVec cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      IVec img = cur;
      long long c = cur[i];
      for (int k = 0; k < rank; ++k) img[k] -= c * rs.cartan[k][i];
      if (roots.insert(img).second) queue.push_back(img);
    }
  }

  // Simple-root coordinates: solve cartan * c = fw exactly.
  std::vector<RVec> cartan_rat(rank, RVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cartan_rat[i][j] = rs.cartan[i][j];

  for (const IVec& fw : roots) {
    RVec c = solve_linear(cartan_rat, to_rvec(fw));
    bool positive = true, negative = true;
    IVec in_simple(rank);
    for (int i = 0; i < rank; ++i) {
      if (!is_integer(c[i])) throw internal_error("root has non-integral simple coords");
      in_simple[i] = numerator(c[i]).convert_to<long long>();
      if (in_simple[i] > 0) negative = false;
      if (in_simple[i] < 0) positive = false;
    }
    if (positive == negative) throw internal_error("root neither positive nor negative");
    if (!positive) continue;
    Root root;
    root.fw = fw;
    root.in_simple = in_simple;
    root.ambient.assign(rs.ambient_dim, Rat(0));
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < rs.ambient_dim; ++k)
        root.ambient[k] += Rat(in_simple[i]) * sd.simple_roots[i][k];
    Rat len2 = pair_amb(root.ambient, root.ambient);
    root.d = numerator(Rat(len2 / 2)).convert_to<long long>();
    rs.positive_roots.push_back(std::move(root));
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
            [](const Root& a, const Root& b) { return a.in_simple < b.in_simple; });
  if (rs.positive_roots.size() != sd.positive_count)
    throw internal_error("positive root count " + std::to_string(rs.positive_roots.size()) +
                         " does not match the closed form " +
                         std::to_string(sd.positive_count));

  // Fundamental weights: varpi_i = sum_k c_k alpha_k with cartan * c = e_i.
  for (int i = 0; i < rank; ++i) {
    RVec e(rank, Rat(0));
    e[i] = 1;
    RVec c = solve_linear(cartan_rat, e);
    RVec amb(rs.ambient_dim, Rat(0));
    for (int k = 0; k < rank; ++k)
      for (int a = 0; a < rs.ambient_dim; ++a) amb[a] += c[k] * sd.simple_roots[k][a];
    rs.fundamental_weights_ambient.push_back(std::move(amb));
  }

  // rho two ways: half-sum of positive roots, and sum of fundamental weights.
  rs.rho_ambient.assign(rs.ambient_dim, Rat(0));
  for (const Root& root : rs.positive_roots)
    for (int a = 0; a < rs.ambient_dim; ++a) rs.rho_ambient[a] += root.ambient[a] / 2;
  {
    RVec sum_fw(rs.ambient_dim, Rat(0));
    for (int i = 0; i < rank; ++i)
      for (int a = 0; a < rs.ambient_dim; ++a)
        sum_fw[a] += rs.fundamental_weights_ambient[i][a];
    if (sum_fw != rs.rho_ambient)
      throw internal_error("rho: half-sum of positive roots != sum of fundamental weights");
  }

  // Duality check (varpi_i, alpha_j^vee) = delta_ij.
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rat p = 2 * pair_amb(rs.fundamental_weights_ambient[i], sd.simple_roots[j]) /
              pair_amb(sd.simple_roots[j], sd.simple_roots[j]);
      if (p != Rat(i == j ? 1 : 0))
        throw internal_error("(varpi_i, alpha_j^vee) != delta_ij");
    }

  // Bilinear form matrix (ambient).
  rs.bilinear_form.assign(rs.ambient_dim, RVec(rs.ambient_dim, Rat(0)));
  for (int a = 0; a < rs.ambient_dim; ++a) rs.bilinear_form[a][a] = rs.form_scale;

  // Gram matrix of fundamental weights and its integer scaling.
  rs.gram_fw.assign(rank, RVec(rank));
  rs.gram_fw_d.assign(rank, std::vector<double>(rank));
  Int den = 1;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      rs.gram_fw[i][j] =
          pair_amb(rs.fundamental_weights_ambient[i], rs.fundamental_weights_ambient[j]);
      rs.gram_fw_d[i][j] = to_double(rs.gram_fw[i][j]);
      if (rs.gram_fw[i][j] <= 0)
        throw internal_error("(varpi_i, varpi_j) must be positive for a simple system");
      den = boost::multiprecision::lcm(den, denominator(rs.gram_fw[i][j]));
    }
  rs.gram_den = den.convert_to<long long>();
  rs.gram_fw_scaled.assign(rank, std::vector<long long>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      rs.gram_fw_scaled[i][j] =
          numerator(Rat(rs.gram_fw[i][j] * rs.gram_den)).convert_to<long long>();

  // Coroot Gram matrix and its inverse (fw -> coroot coordinates).
  {
    std::vector<RVec> coroot_gram(rank, RVec(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        coroot_gram[i][j] = pair_amb(sd.simple_roots[i], sd.simple_roots[j]) /
                            (Rat(rs.d[i]) * Rat(rs.d[j]));
    rs.coroot_from_fw.assign(rank, RVec(rank));
    for (int i = 0; i < rank; ++i) {
      RVec e(rank, Rat(0));
      e[i] = 1;
      RVec col = solve_linear(coroot_gram, e);
      for (int k = 0; k < rank; ++k) rs.coroot_from_fw[k][i] = col[k];
    }
    rs.coroot_from_fw_d.assign(rank, std::vector<double>(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        rs.coroot_from_fw_d[i][j] = to_double(rs.coroot_from_fw[i][j]);
  }

  // fw -> simple-root coordinates (inverse Cartan).
  rs.root_from_fw.assign(rank, RVec(rank));
  for (int i = 0; i < rank; ++i) {
    RVec e(rank, Rat(0));
    e[i] = 1;
    RVec col = solve_linear(cartan_rat, e);
    for (int k = 0; k < rank; ++k) rs.root_from_fw[k][i] = col[k];
  }

  // det(Cartan) = [P:Q], integer by construction.
  {
    std::vector<RVec> m = cartan_rat;
    Rat det = 1;
    for (int col = 0; col < rank; ++col) {
      int pivot = col;
      while (pivot < rank && m[pivot][col] == 0) ++pivot;
      if (pivot == rank) throw internal_error("Cartan matrix singular");
      if (pivot != col) {
        std::swap(m[pivot], m[col]);
        det = -det;
      }
      det *= m[col][col];
      for (int i = col + 1; i < rank; ++i) {
        Rat f = m[i][col] / m[col][col];
        for (int j = col; j < rank; ++j) m[i][j] -= f * m[col][j];
      }
    }
    if (!is_integer(det) || det <= 0) throw internal_error("det(Cartan) not a positive integer");
    rs.cartan_det = numerator(det).convert_to<long long>();
  }

  rs.weyl = enumerate_weyl_group(rs.cartan, rs.weyl_order, rs.positive_roots);
  if (rs.weyl[rs.weyl.longest()].length != static_cast<int>(rs.positive_roots.size()))
    throw internal_error("longest element length != |Delta_+|");

  // P/Q classes, keyed by the fractional simple-root coordinates.
  {
    auto key_of = [&](const IVec& fw) {
      RVec key(rank, Rat(0));
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
          if (fw[j] != 0) key[i] += rs.root_from_fw[i][j] * Rat(fw[j]);
      for (auto& c : key) c = frac_part(c);
      return key;
    };
    std::deque<IVec> bfs;
    IVec zero(rank, 0);
    rs.class_index_[key_of(zero)] = 0;
    rs.class_reps_.push_back(Weight{zero});
    bfs.push_back(zero);
    while (!bfs.empty()) {
      IVec cur = bfs.front();
      bfs.pop_front();
      for (int i = 0; i < rank; ++i) {
        IVec next = cur;
        next[i] += 1;
        RVec key = key_of(next);
        if (rs.class_index_.emplace(key, rs.class_reps_.size()).second) {
          rs.class_reps_.push_back(Weight{next});
          bfs.push_back(next);
        }
      }
    }
    if (rs.class_reps_.size() != static_cast<size_t>(rs.cartan_det))
      throw internal_error("|P/Q| != det(Cartan)");
  }

  rs.table_cache_ = std::make_unique<RootSystem::TableCache>();
  return rs;
}

std::shared_ptr<const WeightMultiplicityTable> RootSystem::cached_table(
    const Weight& w) const {
  {
    std::lock_guard<std::mutex> lock(table_cache_->mu);
    auto it = table_cache_->map.find(w.fw);
    if (it != table_cache_->map.end()) return it->second;
  }
  auto table =
      std::make_shared<const WeightMultiplicityTable>(weight_multiplicities(*this, w));
  std::lock_guard<std::mutex> lock(table_cache_->mu);
  auto [it, inserted] = table_cache_->map.emplace(w.fw, table);
  return it->second;
}

}  // namespace weylq
