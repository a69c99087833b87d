#include <doctest.h>

#include <algorithm>

#include "pbf/error.hpp"
#include "pbf/fock_space.hpp"

using namespace pbf;

TEST_CASE("basis enumeration matches the cell dimensions") {
  const auto small = enumerate_basis(FockParams(1, 0));
  REQUIRE(small.size() == 2);
  CHECK(small[0] == phi(0, 0));
  CHECK(small[1] == phi(0, 1));

  const auto p2 = enumerate_basis(FockParams(2, 1));
  const std::vector<BasisVector> expected{phi(0, 0), phi(0, 1), phi(0, 2), phi(1, 0),
                                          phi(1, 1), psi(1, 1), phi(1, 2)};
  CHECK(p2 == expected);

  CHECK(enumerate_basis(FockParams(3, 2)).size() == 16);

  for (int p = 1; p <= 5; ++p) {
    for (int m_max = 0; m_max <= 6; ++m_max) {
      const FockParams params(p, m_max);
      const auto basis = enumerate_basis(params);
      std::size_t total = 0;
      for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= p; ++n) total += static_cast<std::size_t>(subspace_dimension(params, m, n));
      CHECK(basis.size() == total);
      CHECK(basis.size() == basis_size(params));
      CHECK(std::is_sorted(basis.begin(), basis.end()));
      CHECK(std::adjacent_find(basis.begin(), basis.end()) == basis.end());
      for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis_index(basis[i], p) == i);
    }
  }
}

TEST_CASE("subspace dimensions") {
  const FockParams params(3, 10);
  CHECK(subspace_dimension(params, 0, 2) == 1);
  CHECK(subspace_dimension(params, 5, 2) == 2);
  CHECK(subspace_dimension(params, 5, 4) == 0);
  CHECK(subspace_dimension(params, 5, 0) == 1);
  CHECK(subspace_dimension(params, 5, 3) == 1);
  CHECK(subspace_dimension(params, -1, 1) == 0);
}

TEST_CASE("gradings") {
  CHECK(grade_z2z2(phi(0, 0)) == GradeZ2Z2{0, 0});
  CHECK(grade_z2z2(psi(1, 1)) == GradeZ2Z2{1, 1});
  CHECK(grade_z2z2(phi(2, 3)) == GradeZ2Z2{0, 1});
  CHECK(grade_z2(phi(0, 5), Z2Scheme::RowsEvenFirst) == 0);
  CHECK(grade_z2(phi(3, 2), Z2Scheme::RowsEvenFirst) == 1);
  CHECK(grade_z2(phi(3, 2), Z2Scheme::ColsEvenFirst) == 0);
  CHECK(grade_z2(phi(3, 2), Z2Scheme::RowsOddFirst) == 0);
  CHECK(grade_z2(phi(3, 2), Z2Scheme::ColsOddFirst) == 1);
}

TEST_CASE("canonicalize rewrites degenerate labels") {
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, 6);
    CHECK(canonicalize(4, p, Kind::Beta, params) == SparseVector(phi(4, p), Scalar::ratio(1, p)));
    CHECK(canonicalize(0, 1, Kind::Beta, params).is_zero());
    CHECK(canonicalize(3, 0, Kind::Beta, params).is_zero());
    CHECK(canonicalize(2, p + 1, Kind::Alpha, params).is_zero());
    CHECK(canonicalize(-1, 0, Kind::Alpha, params).is_zero());
    CHECK(canonicalize(2, 0, Kind::Alpha, params) == SparseVector(phi(2, 0)));
    const SparseVector rewritten = canonicalize(5, p, Kind::Beta, params);
    for (const auto& [v, c] : rewritten.terms()) CHECK(grade_z2z2(v) == grade_z2z2(psi(5, p)));
  }
  CHECK(canonicalize(2, 1, Kind::Alpha, FockParams(2, 4)) == SparseVector(phi(2, 1)));
  CHECK(canonicalize(0, 2, Kind::Beta, FockParams(3, 4)).is_zero());
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(FockParams(0, 3), Error);
  CHECK_THROWS_AS(FockParams(2, -1), Error);
  try {
    FockParams(0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("sparse vectors drop zero coefficients") {
  SparseVector v(phi(1, 1), Scalar(3));
  v.add(phi(1, 1), Scalar(-3));
  CHECK(v.is_zero());
  v.add(psi(2, 1), Scalar::ratio(1, 2));
  CHECK(v.max_m() == 2);
  CHECK(v.to_string() == "(1/2)*psi(2,1)");
}
