#include <doctest.h>

#include "weylq/characters.hpp"
#include "weylq/rng.hpp"
#include "weylq/root_system.hpp"

using namespace weylq;

namespace {

struct Supported {
  Series series;
  int rank;
  size_t positive;
  long long det;
  unsigned long long weyl;
};

const Supported kSupported[] = {
    {Series::A, 1, 1, 2, 2},       {Series::A, 2, 3, 3, 6},
    {Series::A, 3, 6, 4, 24},      {Series::A, 4, 10, 5, 120},
    {Series::A, 5, 15, 6, 720},    {Series::A, 6, 21, 7, 5040},
    {Series::A, 7, 28, 8, 40320},  {Series::B, 2, 4, 2, 8},
    {Series::B, 3, 9, 2, 48},      {Series::B, 4, 16, 2, 384},
    {Series::C, 2, 4, 2, 8},       {Series::C, 3, 9, 2, 48},
    {Series::C, 4, 16, 2, 384},    {Series::D, 3, 6, 4, 24},
    {Series::D, 4, 12, 4, 192},    {Series::G, 2, 6, 1, 12},
};

}  // namespace

TEST_CASE("every supported system satisfies the structural invariants") {
  for (const auto& s : kSupported) {
    CAPTURE(series_name(s.series, s.rank));
    RootSystem rs = build_root_system(s.series, s.rank, GroupForm::simply_connected);
    CHECK(rs.positive_roots.size() == s.positive);
    CHECK(rs.cartan_det == s.det);
    CHECK(rs.weyl_order == s.weyl);
    CHECK(rs.weyl.size() == s.weyl);
    CHECK(rs.num_classes() == static_cast<size_t>(s.det));

    // Cartan entries from the ambient form.
    auto pair_amb = [&](const RVec& x, const RVec& y) {
      Rat acc = 0;
      for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
      return Rat(acc * rs.form_scale);
    };
    for (int i = 0; i < rs.rank; ++i) {
      CHECK(rs.cartan[i][i] == 2);
      CHECK(rs.d[i] ==
            numerator(Rat(pair_amb(rs.simple_roots_ambient[i], rs.simple_roots_ambient[i]) / 2))
                .convert_to<long long>());
      for (int j = 0; j < rs.rank; ++j) {
        Rat a = 2 * pair_amb(rs.simple_roots_ambient[i], rs.simple_roots_ambient[j]) /
                pair_amb(rs.simple_roots_ambient[i], rs.simple_roots_ambient[i]);
        CHECK(Rat(rs.cartan[i][j]) == a);
        if (i != j) CHECK(rs.cartan[i][j] <= 0);
      }
    }

    // rho: half-sum of positive roots == sum of fundamental weights, exactly.
    RVec half_sum(rs.ambient_dim, Rat(0));
    for (const Root& root : rs.positive_roots)
      for (int a = 0; a < rs.ambient_dim; ++a) half_sum[a] += root.ambient[a] / 2;
    RVec fw_sum(rs.ambient_dim, Rat(0));
    for (int i = 0; i < rs.rank; ++i)
      for (int a = 0; a < rs.ambient_dim; ++a)
        fw_sum[a] += rs.fundamental_weights_ambient[i][a];
    CHECK(half_sum == fw_sum);
    CHECK(half_sum == rs.rho_ambient);

    // (varpi_i, alpha_j^vee) = delta_ij.
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        Rat p = 2 * pair_amb(rs.fundamental_weights_ambient[i], rs.simple_roots_ambient[j]) /
                pair_amb(rs.simple_roots_ambient[j], rs.simple_roots_ambient[j]);
        CHECK(p == Rat(i == j ? 1 : 0));
      }

    // Short-root normalization.
    long long dmin = rs.d[0];
    for (long long di : rs.d) dmin = std::min(dmin, di);
    CHECK(dmin == 1);
  }
}

TEST_CASE("unsupported configurations raise configuration errors naming the range") {
  CHECK_THROWS_AS(build_root_system(Series::A, 8, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::A, 0, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::B, 1, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::B, 5, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::C, 5, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::D, 2, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(build_root_system(Series::G, 3, GroupForm::simply_connected),
                  configuration_error);
  CHECK_THROWS_AS(series_from_char('E'), configuration_error);
  CHECK_THROWS_WITH_AS(build_root_system(Series::B, 7, GroupForm::simply_connected),
                       doctest::Contains("B rank 2..4"), configuration_error);
}

TEST_CASE("A1 closed form") {
  RootSystem rs = build_root_system(Series::A, 1, GroupForm::simply_connected);
  CHECK(rs.positive_roots.size() == 1);
  // rho = varpi_1 = alpha/2.
  RVec alpha = rs.simple_roots_ambient[0];
  for (int a = 0; a < rs.ambient_dim; ++a) CHECK(rs.rho_ambient[a] == alpha[a] / 2);
  CHECK(rs.rho_ambient == rs.fundamental_weights_ambient[0]);
  CHECK(rs.cartan_det == 2);
}

TEST_CASE("A2 and G2 frozen data from reflection closure") {
  RootSystem a2 = build_root_system(Series::A, 2, GroupForm::simply_connected);
  CHECK(a2.positive_roots.size() == 3);
  CHECK(a2.cartan_det == 3);
  RootSystem g2 = build_root_system(Series::G, 2, GroupForm::simply_connected);
  CHECK(g2.positive_roots.size() == 6);
  CHECK(g2.cartan_det == 1);
  std::set<long long> ds;
  for (const Root& r : g2.positive_roots) ds.insert(r.d);
  CHECK(ds == std::set<long long>{1, 3});
}

TEST_CASE("root lattice membership and P/Q classes") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  CHECK(!rs.in_root_lattice(Weight{{1, 0}}));
  CHECK(rs.in_root_lattice(Weight{{1, 1}}));  // rho = alpha_1 + alpha_2
  CHECK(rs.in_root_lattice(Weight{{3, 0}}));
  CHECK(rs.in_root_lattice(Weight{{0, 0}}));

  // Classes are constant along Q and distinguish the three cosets.
  DetRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Weight w{{rng.integer(0, 6), rng.integer(0, 6)}};
    IVec shifted = w.fw;
    const Root& alpha = rs.positive_roots[rng.integer(0, 2)];
    for (int i = 0; i < rs.rank; ++i) shifted[i] += alpha.fw[i];
    CHECK(rs.class_of(w) == rs.class_of(Weight{shifted}));
  }
  CHECK(rs.class_of(Weight{{0, 0}}) != rs.class_of(Weight{{1, 0}}));
  CHECK(rs.class_of(Weight{{1, 0}}) != rs.class_of(Weight{{0, 1}}));
}

TEST_CASE("adjoint form restricts enumeration to P+ in Q") {
  RootSystem adj = build_root_system(Series::A, 2, GroupForm::adjoint);
  for (const Weight& w : adj.dominant_by_norm(8.0)) CHECK(adj.in_root_lattice(w));
  RootSystem sc = build_root_system(Series::A, 2, GroupForm::simply_connected);
  CHECK(adj.dominant_by_norm(8.0).size() < sc.dominant_by_norm(8.0).size());
  for (const Weight& w : adj.dominant_by_dim(Int(100))) CHECK(adj.in_root_lattice(w));
}

TEST_CASE("dominant enumeration by norm is exhaustive and sorted") {
  RootSystem rs = build_root_system(Series::B, 2, GroupForm::simply_connected);
  auto byn = rs.dominant_by_norm(9.0);
  // Direct double loop over a generous box.
  size_t count = 0;
  for (long long a = 0; a < 30; ++a)
    for (long long b = 0; b < 30; ++b)
      if (rs.shell_norm(Weight{{a, b}}) <= 9.0) ++count;
  CHECK(byn.size() == count);
  CHECK(std::is_sorted(byn.begin(), byn.end()));
}

TEST_CASE("gram matrix entries are positive and scaled pairing is exact") {
  for (const auto& s : kSupported) {
    RootSystem rs = build_root_system(s.series, s.rank, GroupForm::simply_connected);
    DetRng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      IVec x(rs.rank), y(rs.rank);
      for (int i = 0; i < rs.rank; ++i) {
        x[i] = rng.integer(-9, 9);
        y[i] = rng.integer(-9, 9);
      }
      CHECK(Rat(rs.pair_fw_scaled(x, y)) == rs.pair_fw(x, y) * rs.gram_den);
    }
  }
}
