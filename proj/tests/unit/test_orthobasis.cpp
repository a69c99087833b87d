#include <doctest.h>

#include <thread>

#include "pbf/error.hpp"
#include "pbf/orthobasis.hpp"

using namespace pbf;

namespace {

using Gram = std::vector<std::vector<Scalar>>;

Gram g1(long a) { return {{Scalar(a)}}; }
Gram g2(long a, long b, long d) { return {{Scalar(a), Scalar(b)}, {Scalar(b), Scalar(d)}}; }

struct Expected {
  int m, n;
  Gram g;
  long minus_norm2;  // 0 for 1-dimensional cells
};

// Values from an independent rational-arithmetic implementation of the
// ladder formulas and the adjoint-word pairing.
const std::vector<Expected> kP2 = {
    {0, 0, g1(1), 0},           {0, 1, g1(2), 0},          {0, 2, g1(4), 0},
    {1, 0, g1(2), 0},           {1, 1, g2(4, 2, 2), 4},    {1, 2, g1(8), 0},
    {2, 0, g1(4), 0},           {2, 1, g2(8, 4, 6), 16},   {2, 2, g1(16), 0},
    {3, 0, g1(16), 0},          {3, 1, g2(32, 16, 16), 32}, {3, 2, g1(64), 0},
};

const std::vector<Expected> kP3 = {
    {0, 1, g1(3), 0},            {0, 2, g1(12), 0},           {0, 3, g1(36), 0},
    {1, 0, g1(3), 0},            {1, 1, g2(9, 3, 3), 18},     {1, 2, g2(36, 12, 6), 18},
    {1, 3, g1(108), 0},          {2, 0, g1(6), 0},            {2, 1, g2(18, 6, 12), 90},
    {2, 2, g2(72, 24, 18), 90},  {2, 3, g1(216), 0},          {3, 0, g1(30), 0},
    {3, 1, g2(90, 30, 30), 180}, {3, 2, g2(360, 120, 60), 180}, {3, 3, g1(1080), 0},
};

}  // namespace

TEST_CASE("Gram matrices match the reference values") {
  for (const auto& [p, table] : {std::pair{2, &kP2}, std::pair{3, &kP3}}) {
    const InnerProductContext ctx(FockParams(p, 4));
    for (const auto& e : *table) {
      INFO("p=" << p << " m=" << e.m << " n=" << e.n);
      CHECK(gram(ctx, e.m, e.n) == e.g);
      const auto dirs = orthonormal_basis(ctx, e.m, e.n);
      CHECK(dirs.front().norm2 == e.g[0][0]);
      if (e.minus_norm2 != 0) {
        REQUIRE(dirs.size() == 2);
        CHECK(dirs[1].norm2 == Scalar(e.minus_norm2));
      }
    }
  }
  const InnerProductContext p1(FockParams(1, 4));
  const std::vector<std::tuple<int, int, long>> ones = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1},
                                                        {2, 0, 2}, {2, 1, 2}, {3, 0, 6}, {3, 1, 6}};
  for (const auto& [m, n, v] : ones) CHECK(gram(p1, m, n) == g1(v));
}

TEST_CASE("vacuum normalization and simple pairings") {
  for (int p = 1; p <= 5; ++p) {
    const InnerProductContext ctx(FockParams(p, 3));
    CHECK(ctx.inner_product(SparseVector(phi(0, 0)), SparseVector(phi(0, 0))) == Scalar(1));
    CHECK(ctx.inner_product(SparseVector(phi(1, 0)), SparseVector(phi(1, 0))) == Scalar(p));
    CHECK(ctx.inner_product(SparseVector(phi(1, 0)), SparseVector(phi(0, 1))) == Scalar(0));
  }
  const InnerProductContext ctx(FockParams(2, 3));
  const SparseVector v(phi(1, 1), Scalar::imaginary_unit());
  CHECK(ctx.inner_product(v, v) == Scalar(4));
  CHECK(ctx.inner_product(v, SparseVector(phi(1, 1))) == Scalar(0, -4));
}

TEST_CASE("adjointness, hermiticity and orthogonality of cells") {
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, 5);
    const InnerProductContext ctx(params);
    const auto interior = enumerate_basis(params.with_m_max(4));
    for (const auto& v : interior) {
      for (const auto& w : interior) {
        const Scalar vw = ctx.pairing(v, w);
        CHECK(vw == ctx.pairing(w, v).conj());
        if (v.m != w.m || v.n != w.n) CHECK(vw.is_zero());
        for (Generator g : kAllGenerators) {
          const SparseVector gv = apply_generator(g, v, params);
          const SparseVector gw = apply_generator(adjoint(g), w, params);
          CHECK(ctx.inner_product(gv, SparseVector(w)) == ctx.inner_product(SparseVector(v), gw));
        }
      }
    }
  }
}

TEST_CASE("Gram matrices are positive definite and directions orthogonal") {
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, 8);
    const InnerProductContext ctx(params);
    for (int m = 0; m <= 8; ++m) {
      for (int n = 0; n <= p; ++n) {
        const auto g = gram(ctx, m, n);
        CHECK(sgn(g[0][0].re()) > 0);
        if (g.size() == 2) CHECK(sgn((g[0][0] * g[1][1] - g[0][1] * g[1][0]).re()) > 0);
        const auto dirs = orthonormal_basis(ctx, m, n);
        CHECK(dirs.size() == g.size());
        if (dirs.size() == 2) {
          CHECK(ctx.inner_product(dirs[0].direction, dirs[1].direction).is_zero());
          CHECK(dirs[1].direction == SparseVector(phi(m, n)) - SparseVector(psi(m, n), Scalar(p)));
        }
      }
    }
  }
}

TEST_CASE("gram errors") {
  const InnerProductContext ctx(FockParams(3, 4));
  CHECK_THROWS_AS(gram(ctx, 1, 4), Error);
  try {
    gram(ctx, 5, 9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionZero);
  }
  CHECK_THROWS_AS(gram(ctx, 5, 1), Error);
}

TEST_CASE("complete set of commuting observables") {
  for (int p = 1; p <= 4; ++p) {
    const InnerProductContext ctx(FockParams(p, 6));
    const CscoReport report = csco_check(ctx);
    CHECK(report.pass);
    CHECK(report.commutators.size() == 3);
    for (const auto& e : report.eigen) {
      CHECK(e.ns == Scalar::ratio(e.sign, 2));
      CHECK(e.nb == Scalar(e.m));
    }
  }
  CHECK_THROWS_AS(csco_check(InnerProductContext(FockParams(2, 2))), Error);
}

TEST_CASE("shared context from several threads") {
  const InnerProductContext ctx(FockParams(3, 6));
  std::vector<std::thread> pool;
  std::vector<Scalar> results(8);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] { results[static_cast<std::size_t>(t)] = gram(ctx, 3, 2)[1][1]; });
  for (auto& th : pool) th.join();
  for (const auto& r : results) CHECK(r == Scalar(60));
}
