#include <doctest.h>

#include "weylq/fusion.hpp"
#include "weylq/rng.hpp"

using namespace weylq;

namespace {

// Linear extension of fuse to a formal sum, for the associativity check.
std::map<IVec, long long> fuse_into(const RootSystem& rs,
                                    const std::map<IVec, long long>& sum, const Weight& mu) {
  std::map<IVec, long long> out;
  for (const auto& [lam, c] : sum) {
    FusionDecomposition dec = fuse(rs, Weight{lam}, mu);
    for (const auto& [nu, m] : dec.terms) out[nu] += c * m;
  }
  return out;
}

Weight random_dominant(const RootSystem& rs, DetRng& rng, long long max_dim) {
  for (;;) {
    IVec fw(rs.rank);
    for (int i = 0; i < rs.rank; ++i) fw[i] = rng.integer(0, 3);
    if (dim_v(rs, Weight{fw}) <= max_dim) return Weight{fw};
  }
}

}  // namespace

TEST_CASE("A1 Clebsch-Gordan and the tensor unit") {
  RootSystem rs = build_root_system(Series::A, 1, GroupForm::simply_connected);
  auto f = fuse(rs, Weight{{1}}, Weight{{1}});
  CHECK(f.terms == std::map<IVec, long long>{{IVec{0}, 1}, {IVec{2}, 1}});
  auto unit = fuse(rs, Weight{{5}}, Weight{{0}});
  CHECK(unit.terms == std::map<IVec, long long>{{IVec{5}, 1}});
  auto g = fuse(rs, Weight{{4}}, Weight{{2}});
  CHECK(g.terms ==
        std::map<IVec, long long>{{IVec{2}, 1}, {IVec{4}, 1}, {IVec{6}, 1}});
}

TEST_CASE("A2: fundamental times antifundamental") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  auto f = fuse(rs, Weight{{1, 0}}, Weight{{0, 1}});
  CHECK(f.terms == std::map<IVec, long long>{{IVec{0, 0}, 1}, {IVec{1, 1}, 1}});
}

TEST_CASE("dimension homomorphism holds exactly") {
  for (auto [series, rank] : {std::pair{Series::A, 2}, {Series::B, 2}, {Series::G, 2},
                              {Series::C, 3}}) {
    CAPTURE(series_name(series, rank));
    RootSystem rs = build_root_system(series, rank, GroupForm::simply_connected);
    DetRng rng(71);
    for (int trial = 0; trial < 15; ++trial) {
      Weight a = random_dominant(rs, rng, 400), b = random_dominant(rs, rng, 400);
      FusionDecomposition dec = fuse(rs, a, b);
      Int total = 0;
      for (const auto& [nu, m] : dec.terms) total += m * dim_v(rs, Weight{nu});
      CHECK(total == dim_v(rs, a) * dim_v(rs, b));
    }
  }
}

TEST_CASE("central-character conservation: nu = lambda + mu mod Q") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  DetRng rng(73);
  for (int trial = 0; trial < 15; ++trial) {
    Weight a = random_dominant(rs, rng, 200), b = random_dominant(rs, rng, 200);
    IVec sum(rs.rank);
    for (int i = 0; i < rs.rank; ++i) sum[i] = a.fw[i] + b.fw[i];
    size_t cls = rs.class_of(Weight{sum});
    for (const auto& [nu, m] : fuse(rs, a, b).terms)
      CHECK(rs.class_of(Weight{nu}) == cls);
  }
}

TEST_CASE("fusion is symmetric") {
  RootSystem rs = build_root_system(Series::B, 2, GroupForm::simply_connected);
  DetRng rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    Weight a = random_dominant(rs, rng, 300), b = random_dominant(rs, rng, 300);
    CHECK(fuse(rs, a, b).terms == fuse(rs, b, a).terms);
  }
}

TEST_CASE("character-product oracle at random regular points") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  DetRng rng(83);
  for (int trial = 0; trial < 4; ++trial) {
    Weight a = random_dominant(rs, rng, 100), b = random_dominant(rs, rng, 100);
    FusionDecomposition dec = fuse(rs, a, b);
    for (int pt = 0; pt < 10; ++pt) {
      std::vector<double> c(rs.rank);
      for (int i = 0; i < rs.rank; ++i) c[i] = rng.unit();
      TorusPoint t = torus_angle(rs, c);
      if (std::abs(alt_sum(rs, to_cvec(rs.rho_fw()), t)) < 0.05) continue;
      Cplx lhs = character(rs, a, t) * character(rs, b, t);
      Cplx rhs(0, 0);
      for (const auto& [nu, m] : dec.terms) rhs += double(m) * character(rs, Weight{nu}, t);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * (1 + std::abs(lhs)));
    }
  }
}

TEST_CASE("associativity as multisets of dominant weights") {
  for (auto [series, rank] : {std::pair{Series::A, 2}, {Series::B, 2}}) {
    RootSystem rs = build_root_system(series, rank, GroupForm::simply_connected);
    DetRng rng(89);
    for (int trial = 0; trial < 8; ++trial) {
      Weight a = random_dominant(rs, rng, 60), b = random_dominant(rs, rng, 60),
             c = random_dominant(rs, rng, 60);
      auto left = fuse_into(rs, fuse(rs, a, b).terms, c);
      std::map<IVec, long long> bc_then_a;
      for (const auto& [nu, m] : fuse(rs, b, c).terms) {
        for (const auto& [out, k] : fuse(rs, a, Weight{nu}).terms) bc_then_a[out] += m * k;
      }
      CHECK(left == bc_then_a);
    }
  }
}

TEST_CASE("Frobenius reciprocity on small triples") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  DetRng rng(97);
  for (int trial = 0; trial < 12; ++trial) {
    Weight a = random_dominant(rs, rng, 60), b = random_dominant(rs, rng, 60),
           c = random_dominant(rs, rng, 200);
    auto ab = fuse(rs, a, b).terms;
    long long lhs = ab.count(c.fw) ? ab.at(c.fw) : 0;
    auto ac = fuse(rs, conjugate_weight(rs, a), c).terms;
    long long rhs = ac.count(b.fw) ? ac.at(b.fw) : 0;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("conjugation: fixed points, the A2 swap, involutivity, duality unit") {
  RootSystem a1 = build_root_system(Series::A, 1, GroupForm::simply_connected);
  CHECK(conjugate_weight(a1, Weight{{7}}).fw == IVec{7});
  RootSystem a2 = build_root_system(Series::A, 2, GroupForm::simply_connected);
  CHECK(conjugate_weight(a2, Weight{{1, 0}}).fw == IVec{0, 1});
  CHECK(conjugate_weight(a2, Weight{{0, 0}}).fw == IVec{0, 0});
  DetRng rng(101);
  for (auto [series, rank] : {std::pair{Series::A, 3}, {Series::B, 3}, {Series::G, 2}}) {
    RootSystem rs = build_root_system(series, rank, GroupForm::simply_connected);
    for (int trial = 0; trial < 10; ++trial) {
      Weight a = random_dominant(rs, rng, 500);
      Weight cc = conjugate_weight(rs, conjugate_weight(rs, a));
      CHECK(cc.fw == a.fw);
      auto dec = fuse(rs, a, conjugate_weight(rs, a)).terms;
      CHECK(dec.at(IVec(rs.rank, 0)) == 1);  // mult of the unit is exactly 1
    }
  }
}

TEST_CASE("adjoint-form closure: Q times Q stays in Q") {
  RootSystem adj = build_root_system(Series::A, 2, GroupForm::adjoint);
  DetRng rng(103);
  auto q_weights = adj.dominant_by_dim(Int(300));
  for (int trial = 0; trial < 15; ++trial) {
    const Weight& a = q_weights[rng.integer(0, q_weights.size() - 1)];
    const Weight& b = q_weights[rng.integer(0, q_weights.size() - 1)];
    for (const auto& [nu, m] : fuse(adj, a, b).terms)
      CHECK(adj.in_root_lattice(Weight{nu}));
  }
}

TEST_CASE("resource guard for oversized products") {
  RootSystem rs = build_root_system(Series::A, 1, GroupForm::simply_connected);
  CHECK_THROWS_AS(fuse(rs, Weight{{20000}}, Weight{{20000}}), resource_error);
}

TEST_CASE("fusion rejects non-dominant inputs") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  CHECK_THROWS_AS(fuse(rs, Weight{{-1, 0}}, Weight{{1, 0}}), argument_error);
  CHECK_THROWS_AS(conjugate_weight(rs, Weight{{0, -3}}), argument_error);
}
