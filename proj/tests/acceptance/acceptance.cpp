// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// All comparisons are exact.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbf/decomposition.hpp"
#include "pbf/error.hpp"
#include "pbf/orthobasis.hpp"

using namespace pbf;

namespace {

constexpr int kMMax = 12;
constexpr int kRealizeMMax = 10;
constexpr int kJobs = 4;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

std::string failed_names(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports)
    if (!r.pass) out += (out.empty() ? "" : ",") + r.relation;
  return out;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

Outcome relation_suite() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const auto ids = select_relations(relation_catalog(p), {"mixed", "pure"});
    o.require(ids.size() == 32, "expected 32 defining relations, found " + std::to_string(ids.size()));
    const auto reports = verify_all(ids, FockParams(p, kMMax), kJobs);
    o.require(all_pass(reports), "p=" + std::to_string(p) + " failed: " + failed_names(reports));
  }
  return o;
}

Outcome fock_conditions() {
  Outcome o;
  for (int p = 1; p <= 6; ++p) {
    const FockParams params(p, 2);
    const SparseVector vac(phi(0, 0));
    const auto twice = [&](Generator outer, Generator inner) {
      return apply_generator(outer, apply_generator(inner, vac, params), params);
    };
    const std::string tag = " at p=" + std::to_string(p);
    o.require(twice(Generator::BMinus, Generator::BPlus) == vac.scaled(Scalar(p)), "b-b+|0> != p|0>" + tag);
    o.require(twice(Generator::FMinus, Generator::FPlus) == vac.scaled(Scalar(p)), "f-f+|0> != p|0>" + tag);
    o.require(twice(Generator::BMinus, Generator::FPlus).is_zero(), "b-f+|0> != 0" + tag);
    o.require(twice(Generator::FMinus, Generator::BPlus).is_zero(), "f-b+|0> != 0" + tag);
    const auto reports = verify_all(select_relations(relation_catalog(p), {"fock"}), params);
    o.require(all_pass(reports), "catalog vacuum identities failed" + tag + ": " + failed_names(reports));
  }
  return o;
}

Outcome closed_forms() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    for (DerivedOp op : {DerivedOp::Nb, DerivedOp::Nf, DerivedOp::QPlus, DerivedOp::QMinus}) {
      const OperatorMatrix closed = closed_form_matrix(op, params);
      const OperatorMatrix compiled = compile(OperatorExpr(op), params);
      for (const auto& v : enumerate_basis(params.with_m_max(kMMax - 1)))
        o.require(closed.column(v) == compiled.column(v),
                  std::string(to_string(op)) + " differs on " + to_string(v) + " at p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome nilpotency() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    for (DerivedOp op : {DerivedOp::QPlus, DerivedOp::QMinus, DerivedOp::RPlus})
      o.require(compile(power(OperatorExpr(op), 2), params).is_zero(),
                std::string(to_string(op)) + "^2 != 0 at p=" + std::to_string(p));
    const auto reports = verify_all(select_relations(relation_catalog(p), {"nilpotency"}), params, kJobs);
    o.require(all_pass(reports), "p=" + std::to_string(p) + " failed: " + failed_names(reports));
  }
  return o;
}

// Vectors obtained from actions whose raw output carries a psi(m,p) label,
// canonicalized through psi(m,p) = phi(m,p)/p.
std::vector<SparseVector> degenerate_images(const FockParams& params, int& degenerate_labels) {
  const int p = params.p();
  std::vector<SparseVector> out;
  for (const auto& v : enumerate_basis(params.with_m_max(params.m_max() - 1))) {
    for (Generator g : {Generator::BPlus, Generator::FPlus}) {
      const auto raw = raw_generator_action(g, v, p);
      const bool hits = std::any_of(raw.begin(), raw.end(), [&](const RawTerm& t) {
        return t.label.kind == Kind::Beta && t.label.n == p && t.label.m > 0;
      });
      if (!hits) continue;
      ++degenerate_labels;
      SparseVector image = apply_generator(g, v, params);
      if (!image.is_zero()) out.push_back(std::move(image));
    }
    if (v.n == p - 1 && v.m >= 1) {
      SparseVector image = apply_derived_closed_form(DerivedOp::QPlus, v, params);
      if (!image.is_zero()) out.push_back(std::move(image));
    }
  }
  return out;
}

Outcome degenerate_labels() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    int labels = 0;
    const auto vectors = degenerate_images(params, labels);
    o.require(labels > 0 && !vectors.empty(), "no degenerate labels produced at p=" + std::to_string(p));
    for (const auto& id : relation_catalog(p)) {
      if (id.vacuum_only) continue;
      const int limit = kMMax - identity_margin(id, p);
      std::vector<SparseVector> usable;
      for (const auto& v : vectors)
        if (v.max_m() <= limit) usable.push_back(v);
      const VerificationReport r = verify_on_vectors(id, usable, params);
      o.require(r.pass, id.name + " fails on a canonicalized vector at p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome realization() {
  Outcome o;
  const SuperAlgebraSpec spec = gl11_defining_spec();
  for (int p = 1; p <= 3; ++p) {
    const BracketReport r = check_bracket_preservation(spec, FockParams(p, kRealizeMMax), kJobs);
    o.require(r.pass, "p=" + std::to_string(p) + " failed: " + failed_names(r.pairs));
  }
  return o;
}

Outcome diagonal() {
  Outcome o;
  const SuperAlgebraSpec spec = gl11_defining_spec();
  for (int p = 2; p <= 4; ++p) {
    const DiagonalReport r = diagonal_decomposition(FockParams(p, kMMax), spec);
    const std::string tag = " at p=" + std::to_string(p);
    o.require(r.disjoint, "families overlap" + tag);
    o.require(r.covers_window, "families do not cover m+n <= m_max" + tag);
    o.require(r.invariant, "a family is not invariant" + tag);
    o.require(r.dimensions_match, "a family dimension differs from 2s or 2p" + tag);
    for (const auto& fam : r.families) {
      const int want = fam.upper ? (fam.index == 0 ? 1 : 2 * fam.index) : 2 * p;
      o.require(static_cast<int>(fam.basis.size()) == want, "family dimension" + tag);
    }
  }
  return o;
}

bool constant(const InvariantComponent& c, int BasisVector::*field) {
  return std::all_of(c.basis.begin(), c.basis.end(), [&](const auto& v) { return v.*field == c.basis.front().*field; });
}

Outcome presets() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    const std::string tag = " at p=" + std::to_string(p);

    const auto rows = decompose(preset("so3"), params);
    o.require(static_cast<int>(rows.size()) == kMMax + 1, "so3 does not give one component per row" + tag);
    for (const auto& c : rows) o.require(constant(c, &BasisVector::m), "so3 component spans rows" + tag);
    o.require(!rows.empty() && rows.front().basis.front().m == 0 &&
                  static_cast<int>(rows.front().dimension()) == p + 1,
              "so3 m=0 row is not of dimension p+1" + tag);

    const GeneratorSet osp = preset("osp12");
    const auto cols = decompose(osp, params);
    o.require(static_cast<int>(cols.size()) == p + 1, "osp12 does not give p+1 columns" + tag);
    for (const auto& c : cols) o.require(constant(c, &BasisVector::n), "osp12 component spans columns" + tag);
    o.require(cols.size() >= 2 && support_graphs_isomorphic(cols.front(), cols.back(), osp, params),
              "osp12 first and last columns differ" + tag);

    const auto singles = decompose(preset("so2"), params);
    o.require(singles.size() == basis_size(params), "so2 components are not singletons" + tag);

    const FilledEmptyReport split = filled_empty_split(preset("l00l01"), params);
    o.require(split.pass, "l00l01 filled/empty split fails" + tag);
  }
  return o;
}

Outcome csco() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const CscoReport r = csco_check(InnerProductContext(FockParams(p, kMMax)));
    o.require(all_pass(r.commutators), "commutators fail at p=" + std::to_string(p));
    for (const auto& e : r.eigen)
      o.require(e.pass && (e.ns == Scalar::ratio(1, 2) || e.ns == Scalar::ratio(-1, 2)),
                "eigenvalues fail at V(" + std::to_string(e.m) + "," + std::to_string(e.n) + ")");
    o.require(r.pass, "CSCO check fails at p=" + std::to_string(p));
  }
  return o;
}

Outcome grading() {
  Outcome o;
  const SuperAlgebraSpec spec = gl11_defining_spec();
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    const auto basis = enumerate_basis(params);
    for (Generator g : kAllGenerators) {
      const OperatorMatrix mat = compile(OperatorExpr(g), params);
      const GradeZ2Z2 shift = symbol_grade(g);
      for (const auto& v : basis)
        for (const auto& [w, c] : mat.column(v).terms())
          o.require(grade_z2z2(w) == grade_z2z2(v) + shift,
                    std::string(to_string(g)) + " is not homogeneous at " + to_string(v));
    }
    for (const auto& e : spec.elements()) {
      const OperatorMatrix mat = compile(realize(spec, e.name, p), params);
      const int flip = e.parity == Parity::Odd ? 1 : 0;
      for (const auto& v : basis)
        for (const auto& [w, c] : mat.column(v).terms())
          for (Z2Scheme s : kAllZ2Schemes)
            o.require((grade_z2(w, s) ^ grade_z2(v, s)) == flip,
                      e.name + " has the wrong degree in scheme " + to_string(s));
    }
  }
  return o;
}

// Forward and backward reachability from the vacuum over generator supports.
Outcome connectivity() {
  Outcome o;
  for (int p = 1; p <= 4; ++p) {
    const FockParams params(p, kMMax);
    const FockParams inner = params.with_m_max(kMMax - 2);
    const auto nodes = enumerate_basis(inner);
    std::vector<std::vector<std::size_t>> fwd(nodes.size()), bwd(nodes.size());
    for (Generator g : kAllGenerators) {
      const OperatorMatrix mat = compile(OperatorExpr(g), params);
      for (std::size_t j = 0; j < nodes.size(); ++j)
        for (const auto& [w, c] : mat.column(nodes[j]).terms()) {
          if (!in_window(w, inner)) continue;
          const std::size_t k = basis_index(w, p);
          fwd[j].push_back(k);
          bwd[k].push_back(j);
        }
    }
    const auto reach_all = [&](const std::vector<std::vector<std::size_t>>& adj) {
      std::vector<bool> seen(nodes.size(), false);
      std::deque<std::size_t> queue{0};
      seen[0] = true;
      std::size_t count = 1;
      while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t y : adj[x])
          if (!seen[y]) {
            seen[y] = true;
            ++count;
            queue.push_back(y);
          }
      }
      return count == nodes.size();
    };
    o.require(reach_all(fwd) && reach_all(bwd), "support graph not strongly connected at p=" + std::to_string(p));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"defining relations, p=1..4, m_max=12", relation_suite},
      {"vacuum conditions, p=1..6", fock_conditions},
      {"closed forms equal compiled definitions, p=1..4, m_max=12", closed_forms},
      {"nilpotency of Q+, Q-, R+", nilpotency},
      {"relations hold on canonicalized psi(m,p) images", degenerate_labels},
      {"gl(1|1) bracket preservation, p=1..3, m_max=10", realization},
      {"diagonal decomposition, p=2..4", diagonal},
      {"preset decompositions so3, osp12, so2, l00l01", presets},
      {"commuting observables and Ns = +-1/2", csco},
      {"grade homogeneity of generators and realized elements", grading},
      {"strong connectivity on m <= m_max-2", connectivity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.pass ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
