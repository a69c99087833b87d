#include <doctest.h>

#include "pbf/error.hpp"
#include "pbf/operators.hpp"

using namespace pbf;

namespace {

SparseVector vec(std::initializer_list<std::pair<BasisVector, Scalar>> terms) {
  SparseVector v;
  for (const auto& [b, c] : terms) v.add(b, c);
  return v;
}

const OperatorExpr bp(Generator::BPlus), bm(Generator::BMinus);
const OperatorExpr fp(Generator::FPlus), fm(Generator::FMinus);

}  // namespace

TEST_CASE("generator actions on sample vectors") {
  const FockParams p3(3, 6);
  CHECK(apply_generator(Generator::FMinus, phi(2, 2), p3) == vec({{phi(2, 1), 4}}));
  CHECK(apply_generator(Generator::BMinus, phi(0, 0), p3).is_zero());
  CHECK(apply_generator(Generator::BPlus, phi(2, 1), p3) == vec({{phi(3, 1), -1}, {psi(3, 1), 2}}));
  CHECK(apply_generator(Generator::BPlus, psi(1, 1), p3) == vec({{psi(2, 1), 1}}));
  CHECK(apply_generator(Generator::FPlus, phi(4, 3), p3).is_zero());
  // f+ on psi_{m,p-1} lands on psi_{m,p} = phi_{m,p}/p.
  CHECK(apply_generator(Generator::FPlus, psi(2, 2), p3) == vec({{phi(2, 3), Scalar::ratio(1, 3)}}));
}

TEST_CASE("generator errors") {
  const FockParams params(2, 3);
  try {
    apply_generator(Generator::BPlus, phi(3, 0), params);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationOverflow);
  }
  CHECK_THROWS_AS(apply_generator(Generator::BMinus, psi(0, 1), params), Error);
  CHECK_THROWS_AS(apply_generator(Generator::BMinus, phi(4, 0), params), Error);
}

TEST_CASE("closed forms on sample vectors") {
  const FockParams p3(3, 6);
  CHECK(apply_derived_closed_form(DerivedOp::Nb, phi(2, 1), p3) == vec({{phi(2, 1), 2}}));
  CHECK(apply_derived_closed_form(DerivedOp::Nf, psi(2, 1), p3) == vec({{psi(2, 1), 1}}));
  for (int m = 0; m < 6; ++m) {
    CHECK(apply_derived_closed_form(DerivedOp::QMinus, phi(m, 0), p3).is_zero());
    if (m >= 1)
      CHECK(apply_derived_closed_form(DerivedOp::QMinus, psi(m, 1), p3) == vec({{phi(m + 1, 0), 1}}));
  }
  CHECK(apply_derived_closed_form(DerivedOp::QPlus, phi(2, 1), p3) == vec({{psi(1, 2), -2}}));
  CHECK(apply_derived_closed_form(DerivedOp::QPlus, phi(1, 2), p3) == vec({{phi(0, 3), 1}}));
  CHECK(apply_derived_closed_form(DerivedOp::QPlus, phi(0, 1), p3).is_zero());
  CHECK(apply_derived_closed_form(DerivedOp::QPlus, psi(3, 1), p3).is_zero());
  CHECK_THROWS_AS(apply_derived_closed_form(DerivedOp::QMinus, phi(6, 1), p3), Error);
  CHECK_THROWS_AS(apply_derived_closed_form(DerivedOp::Ns, phi(1, 1), p3), Error);
}

TEST_CASE("compiled anticommutator of b+ and b-") {
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, 6);
    const OperatorMatrix mat = compile(anticommutator(bp, bm), params);
    CHECK(mat.raising_degree() == 0);
    for (const auto& v : enumerate_basis(params)) {
      if (v.kind != Kind::Alpha) continue;
      CHECK(mat.column(v) == SparseVector(v, Scalar(2 * v.m + p)));
    }
  }
}

TEST_CASE("compiled identity word is the identity matrix") {
  const FockParams params(2, 3);
  const OperatorMatrix mat = compile(OperatorExpr::identity(), params);
  for (const auto& v : enumerate_basis(params)) CHECK(mat.column(v) == SparseVector(v));
}

TEST_CASE("compiled definitions agree with closed forms") {
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, 8);
    for (DerivedOp op : {DerivedOp::Nb, DerivedOp::Nf, DerivedOp::QPlus, DerivedOp::QMinus}) {
      const OperatorMatrix compiled = compile(OperatorExpr(op), params);
      const OperatorMatrix closed = closed_form_matrix(op, params);
      CHECK(compiled.columns() == closed.columns());
    }
  }
}

TEST_CASE("raising degree of compiled words") {
  const FockParams params(2, 4);
  CHECK(compile(bp * bp, params).raising_degree() == 2);
  CHECK(compile(bm * bp, params).raising_degree() == 0);
  CHECK(compile(OperatorExpr(DerivedOp::QMinus), params).raising_degree() == 1);
  CHECK_THROWS_AS(compile_within(bp, params), Error);
  CHECK_NOTHROW(compile_within(bm * bp, params));
}

TEST_CASE("grades and the color function") {
  CHECK(grade_of_expr(bp) == GradeZ2Z2{1, 0});
  CHECK(grade_of_expr(OperatorExpr(DerivedOp::QPlus)) == GradeZ2Z2{1, 1});
  CHECK(grade_of_expr(expand(OperatorExpr(DerivedOp::QPlus), 2)) == GradeZ2Z2{1, 1});
  CHECK_FALSE(grade_of_expr(bp + fp).has_value());
  CHECK(grade_of_expr(OperatorExpr()) == GradeZ2Z2{0, 0});
  CHECK(theta({1, 0}, {1, 0}) == Scalar(-1));
  CHECK(theta({1, 0}, {1, 1}) == Scalar(-1));
  CHECK(theta({1, 0}, {0, 1}) == Scalar(1));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(theta({0, 0}, {a, b}) == Scalar(1));
}

TEST_CASE("expression algebra") {
  CHECK(commutator(bp, bp).is_zero());
  CHECK(anticommutator(bp, bm) == bp * bm + bm * bp);
  CHECK(power(fp, 3) == fp * fp * fp);
  CHECK((bp - bp).is_zero());
  CHECK(expand(OperatorExpr(DerivedOp::BPlusSq), 2) == bp * bp);
}
