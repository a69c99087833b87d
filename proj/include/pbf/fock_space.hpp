#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pbf/scalar.hpp"

namespace pbf {

/// Order p of the Fock-like representation plus the cutoff on the
/// parabosonic quantum number m.
class FockParams {
 public:
  /// Throws InvalidArgument unless p >= 1 and m_max >= 0.
  FockParams(int p, int m_max);

  int p() const { return p_; }
  int m_max() const { return m_max_; }

  FockParams with_m_max(int m_max) const { return FockParams(p_, m_max); }

  friend bool operator==(const FockParams&, const FockParams&) = default;

 private:
  int p_;
  int m_max_;
};

enum class Kind { Alpha, Beta };

/// Label |m,n,alpha> (phi) or |m,n,beta> (psi).
struct BasisVector {
  int m = 0;
  int n = 0;
  Kind kind = Kind::Alpha;

  friend auto operator<=>(const BasisVector&, const BasisVector&) = default;
};

inline BasisVector phi(int m, int n) { return {m, n, Kind::Alpha}; }
inline BasisVector psi(int m, int n) { return {m, n, Kind::Beta}; }

/// True when the label belongs to the canonical basis for order p
/// (no range check on m beyond m >= 0).
bool is_canonical(const BasisVector& v, int p);
/// Canonical and m <= m_max.
bool in_window(const BasisVector& v, const FockParams& params);

std::string to_string(const BasisVector& v);

/// Finite linear combination of canonical basis vectors; zero coefficients
/// are never stored.
class SparseVector {
 public:
  using Terms = std::map<BasisVector, Scalar>;

  SparseVector() = default;
  explicit SparseVector(const BasisVector& v, Scalar coeff = Scalar(1));

  void add(const BasisVector& v, const Scalar& coeff);
  void add(const SparseVector& other, const Scalar& factor = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const BasisVector& v) const;
  /// Largest m in the support, -1 for the zero vector.
  int max_m() const;

  SparseVector scaled(const Scalar& factor) const;

  friend SparseVector operator+(SparseVector a, const SparseVector& b) {
    a.add(b);
    return a;
  }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    a.add(b, Scalar(-1));
    return a;
  }
  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Element of the Klein group Z2 x Z2 in additive notation.
struct GradeZ2Z2 {
  int first = 0;
  int second = 0;

  friend bool operator==(const GradeZ2Z2&, const GradeZ2Z2&) = default;
  friend GradeZ2Z2 operator+(GradeZ2Z2 a, GradeZ2Z2 b) {
    return {(a.first + b.first) & 1, (a.second + b.second) & 1};
  }
};

std::string to_string(const GradeZ2Z2& g);

enum class Z2Scheme { RowsEvenFirst, RowsOddFirst, ColsEvenFirst, ColsOddFirst };

inline constexpr Z2Scheme kAllZ2Schemes[] = {Z2Scheme::RowsEvenFirst, Z2Scheme::RowsOddFirst,
                                             Z2Scheme::ColsEvenFirst, Z2Scheme::ColsOddFirst};

const char* to_string(Z2Scheme s);

/// dim V_{m,n}: 0 outside 0<=n<=p, m>=0; 1 on the m=0 row and the n=0, n=p
/// columns; 2 elsewhere.
int subspace_dimension(const FockParams& params, int m, int n);

/// Canonical basis ordered by (m, n, Alpha<Beta).
std::vector<BasisVector> enumerate_basis(const FockParams& params);

/// Number of canonical basis vectors with m <= m_max.
std::size_t basis_size(const FockParams& params);

/// Position of v in enumerate_basis(params); v must be canonical.
std::size_t basis_index(const BasisVector& v, int p);

GradeZ2Z2 grade_z2z2(const BasisVector& v);
int grade_z2(const BasisVector& v, Z2Scheme scheme);

/// Rewrites a raw label into the canonical basis: psi_{0,n}, psi_{m,0} and
/// labels outside 0<=n<=p, m>=0 vanish; psi_{m,p} = (1/p) phi_{m,p}.
SparseVector canonicalize(int m, int n, Kind kind, const FockParams& params);

}  // namespace pbf
