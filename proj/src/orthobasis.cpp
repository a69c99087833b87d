#include "pbf/orthobasis.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

#include "pbf/error.hpp"

namespace pbf {

namespace {

// Annihilators in the order they act, rightmost first.
std::vector<Generator> lowering_word(const BasisVector& u) {
  std::vector<Generator> out;
  const int fs = u.kind == Kind::Alpha ? u.n : u.n - 1;
  const int bs = u.kind == Kind::Alpha ? u.m : u.m - 1;
  out.insert(out.end(), static_cast<std::size_t>(fs), Generator::FMinus);
  out.insert(out.end(), static_cast<std::size_t>(bs), Generator::BMinus);
  return out;
}

SparseVector lower(const std::vector<Generator>& word, SparseVector v, const FockParams& params) {
  for (Generator g : word) {
    if (v.is_zero()) break;
    v = apply_generator(g, v, params);
  }
  return v;
}

}  // namespace

Scalar InnerProductContext::pairing(const BasisVector& u, const BasisVector& w) const {
  if (!is_canonical(u, params_.p()) || !is_canonical(w, params_.p()))
    fail(ErrorCode::InvalidArgument, "inner product of non-canonical labels");
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find({u, w}); it != memo_.end()) return it->second;
  }
  const FockParams space = params_.with_m_max(std::max({u.m, w.m, params_.m_max()}));
  SparseVector image = lower(lowering_word(u), SparseVector(w), space);
  if (u.kind == Kind::Beta) {
    // R- = (b- f- + f- b-)/2 is the adjoint of R+.
    const SparseVector bf = apply_generator(Generator::BMinus, apply_generator(Generator::FMinus, image, space), space);
    const SparseVector fb = apply_generator(Generator::FMinus, apply_generator(Generator::BMinus, image, space), space);
    image = (bf + fb).scaled(Scalar::ratio(1, 2));
  }
  const Scalar value = image.coefficient(phi(0, 0));
  std::unique_lock lock(mutex_);
  memo_.emplace(std::pair{u, w}, value);
  return value;
}

Scalar InnerProductContext::inner_product(const SparseVector& v, const SparseVector& w) const {
  Scalar total;
  for (const auto& [u, cu] : v.terms())
    for (const auto& [t, ct] : w.terms()) total += cu.conj() * ct * pairing(u, t);
  return total;
}

std::vector<BasisVector> cell_basis(const FockParams& params, int m, int n) {
  switch (subspace_dimension(params, m, n)) {
    case 0: return {};
    case 1: return {phi(m, n)};
    default: return {phi(m, n), psi(m, n)};
  }
}

std::vector<std::vector<Scalar>> gram(const InnerProductContext& ctx, int m, int n) {
  const auto basis = cell_basis(ctx.params(), m, n);
  if (basis.empty())
    fail(ErrorCode::DimensionZero,
         "V(" + std::to_string(m) + "," + std::to_string(n) + ") is zero for p=" + std::to_string(ctx.params().p()));
  if (m > ctx.params().m_max())
    fail(ErrorCode::InvalidArgument, "m=" + std::to_string(m) + " exceeds m_max");
  std::vector<std::vector<Scalar>> out(basis.size(), std::vector<Scalar>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) out[i][j] = ctx.pairing(basis[i], basis[j]);
  return out;
}

std::vector<OrthoVector> orthonormal_basis(const InnerProductContext& ctx, int m, int n) {
  const auto g = gram(ctx, m, n);
  const auto positive = [](const Scalar& s) { return s.is_real() && sgn(s.re()) > 0; };
  if (!positive(g[0][0]) || (g.size() == 2 && !positive(g[0][0] * g[1][1] - g[0][1] * g[1][0])))
    fail(ErrorCode::GramDegenerate,
         "Gram matrix of V(" + std::to_string(m) + "," + std::to_string(n) + ") is not positive definite");
  std::vector<OrthoVector> out;
  SparseVector plus(phi(m, n));
  out.push_back({m, n, 1, plus, ctx.inner_product(plus, plus)});
  if (g.size() == 2) {
    SparseVector minus(phi(m, n));
    minus.add(psi(m, n), Scalar(-ctx.params().p()));
    out.push_back({m, n, -1, minus, ctx.inner_product(minus, minus)});
  }
  return out;
}

namespace {

// lambda with mat v = lambda v, or nullopt when v is not an eigenvector.
std::optional<Scalar> eigenvalue(const OperatorMatrix& mat, const SparseVector& v) {
  const SparseVector image = mat.apply(v);
  const auto& [b, c] = *v.terms().begin();
  const Scalar lambda = image.coefficient(b) / c;
  if (image != v.scaled(lambda)) return std::nullopt;
  return lambda;
}

}  // namespace

CscoReport csco_check(const InnerProductContext& ctx) {
  const FockParams& params = ctx.params();
  if (params.m_max() < 3)
    fail(ErrorCode::TruncationTooSmall, "CSCO check needs m_max >= 3, got " + std::to_string(params.m_max()));
  CscoReport report;
  report.p = params.p();
  report.m_max = params.m_max();
  for (const auto& id : select_relations(relation_catalog(params.p()), {"csco"})) {
    report.commutators.push_back(verify_relation(id, params));
    report.pass = report.pass && report.commutators.back().pass;
  }

  const OperatorMatrix nb = compile(OperatorExpr(DerivedOp::Nb), params);
  const OperatorMatrix nf = compile(OperatorExpr(DerivedOp::Nf), params);
  const OperatorMatrix ns = compile(OperatorExpr(DerivedOp::Ns), params);
  for (int m = 0; m <= params.m_max(); ++m) {
    for (int n = 0; n <= params.p(); ++n) {
      for (const auto& dir : orthonormal_basis(ctx, m, n)) {
        EigenCheck check{m, n, dir.sign, {}, {}, {}, false};
        const auto eb = eigenvalue(nb, dir.direction);
        const auto ef = eigenvalue(nf, dir.direction);
        const auto es = eigenvalue(ns, dir.direction);
        if (eb && ef && es) {
          check.nb = *eb;
          check.nf = *ef;
          check.ns = *es;
          check.pass = *eb == Scalar(m) && *ef == Scalar(n) && *es == Scalar::ratio(dir.sign, 2);
        }
        report.pass = report.pass && check.pass;
        report.eigen.push_back(std::move(check));
      }
    }
  }
  return report;
}

}  // namespace pbf
