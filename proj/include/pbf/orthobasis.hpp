#pragma once

#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "pbf/relations.hpp"

namespace pbf {

/// Inner product fixed by <0|0> = 1 and (b-)^dagger = b+, (f-)^dagger = f+.
/// Basis vectors are the words phi(m,n) = (f+)^n (b+)^m |0> and
/// psi(m,n) = (f+)^(n-1) (b+)^(m-1) R+ |0>, so <u, w> is the vacuum
/// component of the adjoint word of u applied to w. Pairings are memoized;
/// the memo is safe to share between threads.
class InnerProductContext {
 public:
  explicit InnerProductContext(FockParams params) : params_(params) {}

  const FockParams& params() const { return params_; }

  /// Antilinear in the first argument.
  Scalar inner_product(const SparseVector& v, const SparseVector& w) const;
  Scalar pairing(const BasisVector& u, const BasisVector& w) const;

 private:
  FockParams params_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<BasisVector, BasisVector>, Scalar> memo_;
};

/// Basis of V_{m,n}: {phi} or {phi, psi}.
std::vector<BasisVector> cell_basis(const FockParams& params, int m, int n);

/// Gram matrix on cell_basis(m, n), row-major. Throws DimensionZero for an
/// empty cell and InvalidArgument for m > m_max.
std::vector<std::vector<Scalar>> gram(const InnerProductContext& ctx, int m, int n);

/// Unnormalized |m,n,+> or |m,n,->: direction phi for +, phi - p psi for -.
/// The normalizer is 1/sqrt(norm2).
struct OrthoVector {
  int m = 0;
  int n = 0;
  int sign = 1;
  SparseVector direction;
  Scalar norm2;
};

/// One vector for 1-dimensional cells, two (+ then -) otherwise. Throws
/// GramDegenerate unless the Gram matrix is positive definite.
std::vector<OrthoVector> orthonormal_basis(const InnerProductContext& ctx, int m, int n);

struct EigenCheck {
  int m = 0;
  int n = 0;
  int sign = 1;
  Scalar nb, nf, ns;
  bool pass = true;
};

struct CscoReport {
  int p = 0;
  int m_max = 0;
  std::vector<VerificationReport> commutators;
  std::vector<EigenCheck> eigen;
  bool pass = true;
};

/// [Nb,Nf] = [Nb,Ns] = [Nf,Ns] = 0 on the interior, and on every direction
/// of every cell: Nb = m, Nf = n, Ns = sign/2. Requires m_max >= 3.
CscoReport csco_check(const InnerProductContext& ctx);

}  // namespace pbf
