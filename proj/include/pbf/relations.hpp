#pragma once

#include <string>
#include <vector>

#include "pbf/operators.hpp"

namespace pbf {

/// lhs = rhs as operators, or only on the vacuum when vacuum_only is set.
struct Identity {
  std::string name;
  std::string text;
  OperatorExpr lhs;
  OperatorExpr rhs;
  bool vacuum_only = false;
};

struct VectorFailure {
  SparseVector input;
  SparseVector residual;
};

struct VerificationReport {
  std::string relation;
  std::string text;
  int p = 0;
  int m_max = 0;
  int margin = 0;
  std::size_t checked = 0;
  bool pass = true;
  std::vector<VectorFailure> failures;
};

/// Largest number of b+ factors in any expanded word of lhs or rhs.
/// Vectors with m <= m_max - margin are the interior for the identity.
int identity_margin(const Identity& identity, int p);

/// All identities for order p, in a fixed order with unique names.
std::vector<Identity> relation_catalog(int p);

/// Identities whose name equals one of the selectors or starts with
/// "<selector>."; throws UnknownRelation when a selector matches nothing.
std::vector<Identity> select_relations(const std::vector<Identity>& catalog,
                                       const std::vector<std::string>& selectors);

/// Checks lhs v = rhs v on every interior basis vector (on phi(0,0) alone
/// for vacuum-only identities). Throws TruncationTooSmall when
/// m_max < margin.
VerificationReport verify_relation(const Identity& identity, const FockParams& params);

/// Checks the identity on the given vectors, which must lie in the window
/// m <= m_max - margin.
VerificationReport verify_on_vectors(const Identity& identity, const std::vector<SparseVector>& vectors,
                                     const FockParams& params);

/// verify_relation over a list, spread across up to `jobs` threads; the
/// result order follows the input order.
std::vector<VerificationReport> verify_all(const std::vector<Identity>& identities,
                                           const FockParams& params, int jobs = 1);

}  // namespace pbf
