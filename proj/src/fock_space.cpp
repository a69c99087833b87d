#include "pbf/fock_space.hpp"

#include <sstream>

#include "pbf/error.hpp"

namespace pbf {

FockParams::FockParams(int p, int m_max) : p_(p), m_max_(m_max) {
  if (p < 1) fail(ErrorCode::InvalidArgument, "p must be a positive integer, got " + std::to_string(p));
  if (m_max < 0)
    fail(ErrorCode::InvalidArgument, "m_max must be non-negative, got " + std::to_string(m_max));
}

bool is_canonical(const BasisVector& v, int p) {
  if (v.m < 0 || v.n < 0 || v.n > p) return false;
  if (v.kind == Kind::Beta) return v.m >= 1 && v.n >= 1 && v.n <= p - 1;
  return true;
}

bool in_window(const BasisVector& v, const FockParams& params) {
  return is_canonical(v, params.p()) && v.m <= params.m_max();
}

std::string to_string(const BasisVector& v) {
  std::ostringstream os;
  os << (v.kind == Kind::Alpha ? "phi" : "psi") << '(' << v.m << ',' << v.n << ')';
  return os.str();
}

SparseVector::SparseVector(const BasisVector& v, Scalar coeff) { add(v, coeff); }

void SparseVector::add(const BasisVector& v, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(v, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

void SparseVector::add(const SparseVector& other, const Scalar& factor) {
  if (factor.is_zero()) return;
  for (const auto& [v, c] : other.terms_) add(v, c * factor);
}

Scalar SparseVector::coefficient(const BasisVector& v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Scalar() : it->second;
}

int SparseVector::max_m() const {
  int best = -1;
  for (const auto& [v, c] : terms_) best = std::max(best, v.m);
  return best;
}

SparseVector SparseVector::scaled(const Scalar& factor) const {
  SparseVector out;
  out.add(*this, factor);
  return out;
}

std::string SparseVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c << ")*" << pbf::to_string(v);
  }
  return os.str();
}

std::string to_string(const GradeZ2Z2& g) {
  return "(" + std::to_string(g.first) + "," + std::to_string(g.second) + ")";
}

const char* to_string(Z2Scheme s) {
  switch (s) {
    case Z2Scheme::RowsEvenFirst: return "rows-even-first";
    case Z2Scheme::RowsOddFirst: return "rows-odd-first";
    case Z2Scheme::ColsEvenFirst: return "cols-even-first";
    case Z2Scheme::ColsOddFirst: return "cols-odd-first";
  }
  return "?";
}

int subspace_dimension(const FockParams& params, int m, int n) {
  const int p = params.p();
  if (m < 0 || n < 0 || n > p) return 0;
  if (m == 0 || n == 0 || n == p) return 1;
  return 2;
}

std::size_t basis_size(const FockParams& params) {
  const auto p = static_cast<std::size_t>(params.p());
  return (p + 1) + static_cast<std::size_t>(params.m_max()) * 2 * p;
}

// Row m=0 holds p+1 vectors; every row m>=1 holds 2p (phi at n=0 and n=p,
// phi/psi pairs in between).
std::size_t basis_index(const BasisVector& v, int p) {
  const auto up = static_cast<std::size_t>(p);
  if (v.m == 0) return static_cast<std::size_t>(v.n);
  const std::size_t row_start = (up + 1) + static_cast<std::size_t>(v.m - 1) * 2 * up;
  if (v.n == 0) return row_start;
  if (v.n == p) return row_start + 2 * up - 1;
  return row_start + 1 + 2 * static_cast<std::size_t>(v.n - 1) + (v.kind == Kind::Beta ? 1 : 0);
}

std::vector<BasisVector> enumerate_basis(const FockParams& params) {
  std::vector<BasisVector> out;
  out.reserve(basis_size(params));
  for (int m = 0; m <= params.m_max(); ++m) {
    for (int n = 0; n <= params.p(); ++n) {
      out.push_back(phi(m, n));
      if (subspace_dimension(params, m, n) == 2) out.push_back(psi(m, n));
    }
  }
  return out;
}

GradeZ2Z2 grade_z2z2(const BasisVector& v) { return {v.m & 1, v.n & 1}; }

int grade_z2(const BasisVector& v, Z2Scheme scheme) {
  switch (scheme) {
    case Z2Scheme::RowsEvenFirst: return v.m & 1;
    case Z2Scheme::RowsOddFirst: return (v.m + 1) & 1;
    case Z2Scheme::ColsEvenFirst: return v.n & 1;
    case Z2Scheme::ColsOddFirst: return (v.n + 1) & 1;
  }
  return 0;
}

SparseVector canonicalize(int m, int n, Kind kind, const FockParams& params) {
  const int p = params.p();
  if (m < 0 || n < 0 || n > p) return {};
  if (kind == Kind::Beta) {
    if (m == 0 || n == 0) return {};
    if (n == p) return SparseVector(phi(m, n), Scalar::ratio(1, p));
  }
  return SparseVector(BasisVector{m, n, kind});
}

}  // namespace pbf
