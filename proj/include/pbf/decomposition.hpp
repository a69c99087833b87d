#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbf/realization.hpp"

namespace pbf {

struct GeneratorSet {
  std::string name;
  std::vector<std::pair<std::string, OperatorExpr>> exprs;
};

/// gl11, l00l01, osp12, sp2, so3, so2. Throws UnknownPreset.
GeneratorSet preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Coordinate subspace spanned by `basis` (sorted); complete is false when
/// some generator maps it outside the window m <= m_max.
struct InvariantComponent {
  std::vector<BasisVector> basis;
  bool complete = true;

  std::size_t dimension() const { return basis.size(); }
  bool contains(const BasisVector& v) const;
};

/// Smallest coordinate subspace containing the seeds' support and closed
/// under every generator, as far as the window allows.
InvariantComponent closure(const std::vector<SparseVector>& seeds, const GeneratorSet& gens,
                           const FockParams& params);

/// Connected components of the union of the generator support graphs,
/// sorted by smallest basis vector. Requires m_max >= 2.
std::vector<InvariantComponent> decompose(const GeneratorSet& gens, const FockParams& params);

/// True when every generator's matrix entries are nonzero on the same
/// positions of `a` and `b`, pairing the i-th vector of one with the i-th
/// of the other.
bool support_graphs_isomorphic(const InvariantComponent& a, const InvariantComponent& b,
                               const GeneratorSet& gens, const FockParams& params);

struct DiagonalFamily {
  bool upper = false;
  /// s for upper families (sum_{i<=s} V_{s-i,i}), k for lower ones
  /// (sum_{i<=p} V_{k+p-i,i}).
  int index = 0;
  std::vector<BasisVector> basis;
  /// 2s for upper families, 2p for lower ones.
  int formula_dimension = 0;
  bool invariant = true;
};

struct DiagonalReport {
  int p = 0;
  int m_max = 0;
  std::vector<DiagonalFamily> families;
  bool disjoint = true;
  bool covers_window = true;
  bool invariant = true;
  bool dimensions_match = true;
  std::vector<std::string> notes;
  bool pass = true;
};

/// Upper and lower diagonal families inside the window m + n <= m_max,
/// checked for disjointness, coverage and invariance under every realized
/// element of `spec`. Requires m_max >= p. The upper s = 0 family has
/// dimension 1 while the 2s count gives 0; that mismatch is reported in
/// notes and does not count against dimensions_match.
DiagonalReport diagonal_decomposition(const FockParams& params, const SuperAlgebraSpec& spec);

struct FilledEmptyReport {
  int p = 0;
  int m_max = 0;
  std::vector<InvariantComponent> components;
  /// Indices into components, -1 when absent.
  int filled = -1;
  int empty = -1;
  bool two_components = false;
  bool parity_consistent = false;
  bool star_in_empty = false;
  bool pass = false;
};

/// Splits the space under `gens` (normally the l00l01 preset) into the
/// family with m + n odd ("filled") and the one with m + n even ("empty",
/// holding phi(0,0)). Requires m_max >= 4.
FilledEmptyReport filled_empty_split(const GeneratorSet& gens, const FockParams& params);

}  // namespace pbf
