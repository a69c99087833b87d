#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pbf/relations.hpp"

namespace pbf {

enum class Parity { Even, Odd };

const char* to_string(Parity parity);

/// Image of a basis element under a 2x2 graded representation,
/// [[A, B], [C, D]]; even elements use A, D and odd ones B, C.
struct SuperMatrix2 {
  Scalar a, b, c, d;

  friend bool operator==(const SuperMatrix2&, const SuperMatrix2&) = default;
};

struct SpecElement {
  std::string name;
  Parity parity = Parity::Even;
};

/// Lie superalgebra with a homogeneous basis, its brackets and a 2x2
/// graded representation. Brackets are stored as coefficient vectors over
/// the basis; pairs that were never given are zero.
class SuperAlgebraSpec {
 public:
  SuperAlgebraSpec() = default;

  /// Throws SpecInvalid on a duplicate name.
  std::size_t add_element(const std::string& name, Parity parity);
  /// Records <x,y> = sum terms. Throws UnknownElement for unknown names.
  void set_bracket(const std::string& x, const std::string& y,
                   const std::vector<std::pair<std::string, Scalar>>& terms);
  void set_rep2(const std::string& name, const SuperMatrix2& m);

  const std::vector<SpecElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  /// Throws UnknownElement.
  std::size_t index_of(const std::string& name) const;
  const SpecElement& element(std::size_t i) const { return elements_.at(i); }

  /// Brackets exactly as given, keyed by index pair.
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<Scalar>>& given_brackets() const {
    return brackets_;
  }
  /// <x_i, x_j> as a coefficient vector, falling back on graded symmetry
  /// when only <x_j, x_i> was given.
  std::vector<Scalar> bracket(std::size_t i, std::size_t j) const;

  bool has_rep2(std::size_t i) const { return rep2_.contains(i); }
  /// Zero matrix when the element has no entry.
  SuperMatrix2 rep2(std::size_t i) const;

 private:
  std::vector<SpecElement> elements_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Scalar>> brackets_;
  std::map<std::size_t, SuperMatrix2> rep2_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Parity shapes of rep2, parity of every bracket, graded antisymmetry,
/// graded Jacobi on all triples, and the brackets on the 2x2 matrices.
ValidationReport validate_spec(const SuperAlgebraSpec& spec);
/// Throws SpecInvalid carrying the first violation.
void require_valid(const SuperAlgebraSpec& spec);

/// Parses the JSON description; throws Parse on malformed JSON and
/// SpecInvalid or UnknownElement on structural problems. Does not run
/// validate_spec.
SuperAlgebraSpec spec_from_json(const std::string& text);
SuperAlgebraSpec spec_from_file(const std::string& path);
std::string spec_to_json(const SuperAlgebraSpec& spec);

/// gl(1/1) with basis E11, E22 (even), E12, E21 (odd) and its defining
/// representation.
SuperAlgebraSpec gl11_defining_spec();

/// Operator image of a basis element:
///   even: A Nb + D Nf + (A - D) p/2
///   odd:  B Q- + C Q+
OperatorExpr realize(const SuperAlgebraSpec& spec, const std::string& name, int p);

/// Action through the closed forms. Throws TruncationOverflow when a Q-
/// term would leave the window.
SparseVector act(const SuperAlgebraSpec& spec, const std::string& name, const SparseVector& v,
                 const FockParams& params);

/// The identity <J(x), J(y)> = J(<x, y>) for elements i and j.
Identity bracket_identity(const SuperAlgebraSpec& spec, std::size_t i, std::size_t j, int p);

struct BracketReport {
  int p = 0;
  int m_max = 0;
  bool pass = true;
  std::vector<VerificationReport> pairs;
};

/// Checks every pair i <= j on the interior. Requires m_max >= 4
/// (TruncationTooSmall) and a valid spec (SpecInvalid).
BracketReport check_bracket_preservation(const SuperAlgebraSpec& spec, const FockParams& params,
                                         int jobs = 1);

}  // namespace pbf
