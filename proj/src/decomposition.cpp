#include "pbf/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "pbf/error.hpp"

namespace pbf {

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"gl11", "l00l01", "osp12", "sp2", "so3", "so2"};
  return names;
}

GeneratorSet preset(const std::string& name) {
  const auto d = [](DerivedOp op) { return std::pair{std::string(to_string(op)), OperatorExpr(op)}; };
  const auto g = [](Generator op) { return std::pair{std::string(to_string(op)), OperatorExpr(op)}; };
  using D = DerivedOp;
  using G = Generator;
  if (name == "gl11") return {name, {d(D::Nb), d(D::Nf), d(D::QPlus), d(D::QMinus)}};
  if (name == "l00l01")
    return {name, {d(D::Nb), d(D::Nf), d(D::BPlusSq), d(D::BMinusSq), d(D::QPlus), d(D::QMinus),
                   d(D::RPlus), d(D::RMinus)}};
  if (name == "osp12") return {name, {d(D::Nb), d(D::BPlusSq), d(D::BMinusSq), g(G::BPlus), g(G::BMinus)}};
  if (name == "sp2") return {name, {d(D::Nb), d(D::BPlusSq), d(D::BMinusSq)}};
  if (name == "so3") return {name, {d(D::Nf), g(G::FPlus), g(G::FMinus)}};
  if (name == "so2") return {name, {d(D::Nf)}};
  fail(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

bool InvariantComponent::contains(const BasisVector& v) const {
  return std::binary_search(basis.begin(), basis.end(), v);
}

namespace {

std::vector<OperatorMatrix> compile_all(const GeneratorSet& gens, const FockParams& params) {
  std::vector<OperatorMatrix> out;
  out.reserve(gens.exprs.size());
  for (const auto& [label, expr] : gens.exprs) out.push_back(compile(expr, params));
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

InvariantComponent closure(const std::vector<SparseVector>& seeds, const GeneratorSet& gens,
                           const FockParams& params) {
  const std::vector<OperatorMatrix> mats = compile_all(gens, params);
  std::set<BasisVector> seen;
  std::deque<BasisVector> queue;
  InvariantComponent out;
  for (const auto& seed : seeds) {
    for (const auto& [v, c] : seed.terms()) {
      if (!in_window(v, params))
        fail(ErrorCode::TruncationOverflow, to_string(v) + " lies outside the window");
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const BasisVector v = queue.front();
    queue.pop_front();
    for (const auto& mat : mats) {
      for (const auto& [w, c] : mat.column(v).terms()) {
        if (!in_window(w, params)) {
          out.complete = false;
          continue;
        }
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
  }
  out.basis.assign(seen.begin(), seen.end());
  return out;
}

std::vector<InvariantComponent> decompose(const GeneratorSet& gens, const FockParams& params) {
  if (params.m_max() < 2)
    fail(ErrorCode::TruncationTooSmall, "decomposition needs m_max >= 2, got " + std::to_string(params.m_max()));
  const std::vector<OperatorMatrix> mats = compile_all(gens, params);
  const auto basis = enumerate_basis(params);
  DisjointSets sets(basis.size());
  std::vector<bool> leaks(basis.size(), false);
  for (const auto& mat : mats) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (const auto& [w, c] : mat.columns()[j].terms()) {
        if (in_window(w, params)) sets.unite(j, basis_index(w, params.p()));
        else leaks[j] = true;
      }
    }
  }
  // Roots are the smallest index of each set, so iterating in basis order
  // yields components sorted by their smallest vector.
  std::vector<InvariantComponent> out;
  std::vector<std::size_t> slot(basis.size(), SIZE_MAX);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const std::size_t root = sets.find(j);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    InvariantComponent& comp = out[slot[root]];
    comp.basis.push_back(basis[j]);
    if (leaks[j]) comp.complete = false;
  }
  return out;
}

bool support_graphs_isomorphic(const InvariantComponent& a, const InvariantComponent& b,
                               const GeneratorSet& gens, const FockParams& params) {
  if (a.dimension() != b.dimension()) return false;
  for (const auto& mat : compile_all(gens, params)) {
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      const SparseVector& ca = mat.column(a.basis[i]);
      const SparseVector& cb = mat.column(b.basis[i]);
      for (std::size_t j = 0; j < a.dimension(); ++j)
        if (ca.coefficient(a.basis[j]).is_zero() != cb.coefficient(b.basis[j]).is_zero()) return false;
    }
  }
  return true;
}

DiagonalReport diagonal_decomposition(const FockParams& params, const SuperAlgebraSpec& spec) {
  const int p = params.p();
  if (params.m_max() < p)
    fail(ErrorCode::TruncationTooSmall,
         "diagonal decomposition needs m_max >= p = " + std::to_string(p) + ", got " +
             std::to_string(params.m_max()));
  DiagonalReport report;
  report.p = p;
  report.m_max = params.m_max();

  const auto diagonal = [&](int total, int n_max) {
    std::vector<BasisVector> out;
    for (int n = 0; n <= n_max; ++n) {
      const int m = total - n;
      out.push_back(phi(m, n));
      if (subspace_dimension(params, m, n) == 2) out.push_back(psi(m, n));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int s = 0; s < p; ++s) {
    report.families.push_back({true, s, diagonal(s, s), 2 * s, true});
  }
  for (int k = 0; k + p <= params.m_max(); ++k) {
    report.families.push_back({false, k, diagonal(k + p, p), 2 * p, true});
  }

  std::set<BasisVector> covered;
  for (const auto& fam : report.families) {
    for (const auto& v : fam.basis)
      if (!covered.insert(v).second) report.disjoint = false;
    const bool matches = static_cast<int>(fam.basis.size()) == fam.formula_dimension;
    if (fam.upper && fam.index == 0) {
      if (!matches)
        report.notes.push_back("upper family s=0 is {phi(0,0)} of dimension " +
                               std::to_string(fam.basis.size()) + "; the 2s count gives 0");
    } else if (!matches) {
      report.dimensions_match = false;
    }
  }
  for (const auto& v : enumerate_basis(params)) {
    const bool inside = v.m + v.n <= params.m_max();
    if (inside != covered.contains(v)) report.covers_window = false;
  }

  for (const auto& e : spec.elements()) {
    const OperatorMatrix mat = compile(realize(spec, e.name, p), params);
    for (auto& fam : report.families) {
      for (const auto& v : fam.basis)
        for (const auto& [w, c] : mat.column(v).terms())
          if (!std::binary_search(fam.basis.begin(), fam.basis.end(), w)) fam.invariant = false;
      report.invariant = report.invariant && fam.invariant;
    }
  }
  report.pass = report.disjoint && report.covers_window && report.invariant && report.dimensions_match;
  return report;
}

FilledEmptyReport filled_empty_split(const GeneratorSet& gens, const FockParams& params) {
  if (params.m_max() < 4)
    fail(ErrorCode::TruncationTooSmall, "filled/empty split needs m_max >= 4, got " + std::to_string(params.m_max()));
  FilledEmptyReport report;
  report.p = params.p();
  report.m_max = params.m_max();
  report.components = decompose(gens, params);
  report.two_components = report.components.size() == 2;
  report.parity_consistent = true;
  for (std::size_t i = 0; i < report.components.size(); ++i) {
    const auto& basis = report.components[i].basis;
    const int parity = (basis.front().m + basis.front().n) & 1;
    for (const auto& v : basis)
      if (((v.m + v.n) & 1) != parity) report.parity_consistent = false;
    if (parity == 1 && report.filled < 0) report.filled = static_cast<int>(i);
    if (parity == 0 && report.empty < 0) report.empty = static_cast<int>(i);
  }
  report.star_in_empty =
      report.empty >= 0 && report.components[static_cast<std::size_t>(report.empty)].contains(phi(0, 0));
  report.pass = report.two_components && report.parity_consistent && report.filled >= 0 &&
                report.empty >= 0 && report.star_in_empty;
  return report;
}

}  // namespace pbf
