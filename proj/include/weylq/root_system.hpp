#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "weylq/rational.hpp"

namespace weylq {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', G = 'G' };
enum class GroupForm { simply_connected, adjoint };

Series series_from_char(char c);
std::string series_name(Series s, int rank);

// A weight of the lattice P, stored as integer coordinates in the basis of
// fundamental weights: lambda = sum coords[i] * varpi_i.
struct Weight {
  IVec fw;

  bool operator==(const Weight& o) const { return fw == o.fw; }
  bool operator<(const Weight& o) const { return fw < o.fw; }
};

struct Root {
  IVec fw;         // coordinates in the fundamental-weight basis (integral)
  IVec in_simple;  // coordinates in the simple-root basis (integral)
  RVec ambient;
  long long d;     // (alpha,alpha)/2, in {1,2,3}
};

// One Weyl group element. `mat` is the r x r matrix (row-major) of the action
// on fundamental-weight coordinates; it is integral and preserves P and Q.
struct WeylElement {
  std::vector<long long> mat;
  int length = 0;
  int sign = 1;  // (-1)^length
  size_t inverse = 0;
};

class WeylGroup {
 public:
  WeylGroup() = default;
  WeylGroup(int rank, std::vector<WeylElement> elems, size_t longest);

  size_t size() const { return elems_.size(); }
  const WeylElement& operator[](size_t i) const { return elems_[i]; }
  size_t longest() const { return longest_; }
  int rank() const { return rank_; }

  // Index of the composition a after b (i.e. the element acting as a ∘ b).
  size_t multiply(size_t a, size_t b) const;
  size_t index_of(const std::vector<long long>& mat) const;

  IVec apply(size_t w, const IVec& x) const;
  RVec apply(size_t w, const RVec& x) const;
  CVec apply(size_t w, const CVec& x) const;

 private:
  int rank_ = 0;
  std::vector<WeylElement> elems_;
  size_t longest_ = 0;
  std::map<std::vector<long long>, size_t> index_;
};

struct WeightMultiplicityTable;  // characters.hpp

// Exact root-system data for one simple series at desk-scale rank.
// Everything is computed in rational arithmetic at construction time and is
// immutable afterwards; instances are safe to share across threads.
class RootSystem {
 public:
  Series series;
  int rank = 0;
  GroupForm form = GroupForm::simply_connected;

  int ambient_dim = 0;
  long long form_scale = 1;  // (x,y) = form_scale * <x,y>_euclid in ambient coords
  std::vector<RVec> simple_roots_ambient;
  std::vector<RVec> fundamental_weights_ambient;
  RVec rho_ambient;
  std::vector<std::vector<Rat>> bilinear_form;  // ambient form matrix

  std::vector<std::vector<long long>> cartan;  // a_ij = 2(a_i,a_j)/(a_i,a_i)
  std::vector<long long> d;                    // d_i = (a_i,a_i)/2
  long long cartan_det = 0;                    // = [P:Q]
  unsigned long long weyl_order = 0;           // closed-form order of W

  std::vector<Root> positive_roots;
  WeylGroup weyl;

  // Gram matrix of the fundamental weights: (varpi_i, varpi_j).
  std::vector<RVec> gram_fw;
  std::vector<std::vector<double>> gram_fw_d;
  long long gram_den = 1;  // gram_den * gram_fw is integral
  std::vector<std::vector<long long>> gram_fw_scaled;

  // coroot_from_fw * (fw coords of x) = coords of x in the simple-coroot
  // basis. Inverse of the coroot Gram matrix (alpha_i^vee, alpha_j^vee).
  std::vector<RVec> coroot_from_fw;
  std::vector<std::vector<double>> coroot_from_fw_d;

  // root_from_fw * (fw coords of x) = coords of x in the simple-root basis.
  std::vector<RVec> root_from_fw;

  // ---- pairings ----
  Rat pair_fw(const IVec& x, const IVec& y) const;
  Rat pair_fw(const RVec& x, const RVec& y) const;
  double pair_fw_d(const IVec& x, const IVec& y) const;
  Cplx pair_fw_c(const CVec& x, const CVec& y) const;
  Cplx pair_fw_c(const CVec& x, const IVec& y) const;
  // gram_den * (x,y) for integral weight coords; exact in long long.
  long long pair_fw_scaled(const IVec& x, const IVec& y) const;

  double norm_fw(const CVec& x) const;

  // ---- weights ----
  IVec rho_fw() const { return IVec(rank, 1); }
  bool is_dominant(const Weight& w) const;
  bool in_root_lattice(const Weight& w) const;
  RVec simple_coords(const Weight& w) const;  // coords in simple-root basis
  RVec ambient_of(const Weight& w) const;
  RVec ambient_of_fw(const RVec& fw) const;

  // Dominant representative of the W-orbit. If `sign` is non-null it receives
  // the determinant sign of the reflecting element, or 0 when the orbit meets
  // a wall (some coordinate of the dominant representative vanishes).
  Weight dominantize(IVec x, int* sign = nullptr) const;

  // Orbit of a dominant weight under W (BFS over simple reflections).
  std::vector<IVec> orbit_of_dominant(const IVec& x) const;

  // ---- P/Q classes ----
  size_t num_classes() const { return class_reps_.size(); }
  size_t class_of(const Weight& w) const;
  const std::vector<Weight>& class_reps() const { return class_reps_; }

  // ---- enumeration (restricted to P+ ∩ Q in adjoint form) ----
  std::vector<Weight> dominant_by_norm(double max_norm) const;
  std::vector<Weight> dominant_by_dim(const Int& max_dim) const;
  double shell_norm(const Weight& w) const;  // ||lambda + rho||

  // Memoized weight multiplicity tables (used by fusion and the oracles).
  std::shared_ptr<const WeightMultiplicityTable> cached_table(const Weight& w) const;

  RootSystem() = default;
  RootSystem(const RootSystem&) = delete;
  RootSystem& operator=(const RootSystem&) = delete;
  RootSystem(RootSystem&&) = default;
  RootSystem& operator=(RootSystem&&) = default;

 private:
  friend RootSystem build_root_system(Series, int, GroupForm);

  std::vector<Weight> class_reps_;
  std::map<RVec, size_t> class_index_;

  struct TableCache {
    std::mutex mu;
    std::map<IVec, std::shared_ptr<const WeightMultiplicityTable>> map;
  };
  mutable std::unique_ptr<TableCache> table_cache_;
};

// Builds the exact root-system data. Supported: A (rank 1..7), B/C (2..4),
// D (3..4), G (rank 2). Throws configuration_error otherwise.
RootSystem build_root_system(Series series, int rank, GroupForm form);

// The enumerated Weyl group of the given simple-root data; guards |W| <= 1e5.
// build_root_system calls this internally; exposed for direct use and tests.
WeylGroup enumerate_weyl_group(const std::vector<std::vector<long long>>& cartan,
                               unsigned long long order_bound_check,
                               const std::vector<Root>& positive_roots);

}  // namespace weylq
