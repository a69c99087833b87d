#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbf/fock_space.hpp"

namespace pbf {

/// The four generators of P_BF^(1,1): b+, b-, f+, f-.
enum class Generator { BPlus, BMinus, FPlus, FMinus };

inline constexpr Generator kAllGenerators[] = {Generator::BPlus, Generator::BMinus,
                                               Generator::FPlus, Generator::FMinus};

/// Operators defined as polynomials in the generators:
///   Nb = 1/2{b+,b-} - p/2        Nf = 1/2[f+,f-] + p/2
///   Ns = (1/p)(Nf^2 - (p+1)Nf + f+f- + p/2)
///   R^e = 1/2{b^e,f^e}           Q^e = 1/2{b^-e,f^e}
///   BPlusSq = (b+)^2             BMinusSq = (b-)^2
enum class DerivedOp { Nb, Nf, Ns, QPlus, QMinus, RPlus, RMinus, BPlusSq, BMinusSq };

using Symbol = std::variant<Generator, DerivedOp>;
using Word = std::vector<Symbol>;

const char* to_string(Generator g);
const char* to_string(DerivedOp d);
std::string to_string(const Symbol& s);

/// Change of m produced by a symbol (b+ raises by 1, Q- by 1, R- lowers...).
int m_shift(const Symbol& s);
/// Change of n produced by a symbol.
int n_shift(const Symbol& s);
GradeZ2Z2 symbol_grade(const Symbol& s);
Generator adjoint(Generator g);

/// Formal linear combination of words; a word acts right-to-left, so the
/// word {x, y} is the product x*y.
class OperatorExpr {
 public:
  using Terms = std::map<Word, Scalar>;

  OperatorExpr() = default;
  OperatorExpr(Generator g);  // NOLINT(implicit)
  OperatorExpr(DerivedOp d);  // NOLINT(implicit)

  static OperatorExpr identity();
  static OperatorExpr word(Word w, Scalar coeff = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const Scalar& c, const OperatorExpr& e);
  OperatorExpr operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  std::string to_string() const;

 private:
  void add_term(const Word& w, const Scalar& c);

  Terms terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr power(const OperatorExpr& a, int k);

/// Definition of a derived operator as a generator polynomial for order p.
OperatorExpr definition(DerivedOp op, int p);
/// Replaces every derived symbol by its definition.
OperatorExpr expand(const OperatorExpr& expr, int p);

/// Common Z2xZ2 grade of every word, or nullopt when the words disagree.
/// The zero expression is reported as grade (0,0).
std::optional<GradeZ2Z2> grade_of_expr(const OperatorExpr& expr);

/// Commutation factor (-1)^(a1 b1 + a2 b2).
Scalar theta(GradeZ2Z2 a, GradeZ2Z2 b);

/// One term of an action formula before canonicalization.
struct RawTerm {
  BasisVector label;
  long coeff = 0;
};

/// Generator action on a canonical basis vector exactly as written in the
/// closed-form ladder formulas, before degenerate labels are rewritten.
std::vector<RawTerm> raw_generator_action(Generator g, const BasisVector& v, int p);

/// Canonicalized generator action. Throws TruncationOverflow for b+ on the
/// top row m = m_max and InvalidArgument for labels outside the window.
SparseVector apply_generator(Generator g, const BasisVector& v, const FockParams& params);
SparseVector apply_generator(Generator g, const SparseVector& v, const FockParams& params);

/// Closed-form action of Nb, Nf, Q+ and Q-. Throws InvalidArgument for any
/// other operator and TruncationOverflow for Q- on the top row.
SparseVector apply_derived_closed_form(DerivedOp op, const BasisVector& v,
                                       const FockParams& params);
SparseVector apply_derived_closed_form(DerivedOp op, const SparseVector& v,
                                       const FockParams& params);

/// Sparse matrix of an operator from the truncated space with m <= m_max
/// into the space with m <= codomain_m_max. Columns follow enumerate_basis.
class OperatorMatrix {
 public:
  OperatorMatrix(FockParams domain, int codomain_m_max, std::vector<SparseVector> columns);

  const FockParams& domain() const { return domain_; }
  int codomain_m_max() const { return codomain_m_max_; }
  int raising_degree() const { return codomain_m_max_ - domain_.m_max(); }

  const std::vector<SparseVector>& columns() const { return columns_; }
  const SparseVector& column(const BasisVector& v) const;

  /// Throws TruncationOverflow when v has support outside the domain.
  SparseVector apply(const SparseVector& v) const;

  bool is_zero() const;

  friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

 private:
  FockParams domain_;
  int codomain_m_max_;
  std::vector<SparseVector> columns_;
};

/// Compiles an expression by composing generator matrices between
/// truncation levels. Derived symbols are expanded through their generator
/// definitions, never through the closed forms, so the two can be compared.
/// The codomain is m_max + max(0, largest net m-raising of any word);
/// intermediate products are carried on a wide enough space to stay exact.
OperatorMatrix compile(const OperatorExpr& expr, const FockParams& params);

/// Like compile, but the result must stay inside the domain window;
/// throws TruncationOverflow otherwise.
OperatorMatrix compile_within(const OperatorExpr& expr, const FockParams& params);

/// Matrix of Nb, Nf, Q+ or Q- assembled from the closed-form actions.
OperatorMatrix closed_form_matrix(DerivedOp op, const FockParams& params);

}  // namespace pbf
