#include "pbf/report.hpp"

#include <sstream>

#include <json.hpp>

#include "pbf/error.hpp"

namespace pbf {

using json = nlohmann::ordered_json;

namespace {

const char* kind_name(Kind k) { return k == Kind::Alpha ? "alpha" : "beta"; }

json basis_json(const BasisVector& v) { return {{"m", v.m}, {"n", v.n}, {"kind", kind_name(v.kind)}}; }

json scalar_json(const Scalar& s) {
  return {{"re", rational_string(s.re())}, {"im", rational_string(s.im())}};
}

json vector_json(const SparseVector& v) {
  json out = json::array();
  for (const auto& [b, c] : v.terms())
    out.push_back({{"basis", basis_json(b)}, {"re", rational_string(c.re())}, {"im", rational_string(c.im())}});
  return out;
}

json basis_list(const std::vector<BasisVector>& basis) {
  json out = json::array();
  for (const auto& v : basis) out.push_back(basis_json(v));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Rational string of a real scalar, full "re/im" pair otherwise.
std::string csv_scalar(const Scalar& s) {
  if (s.is_real()) return rational_string(s.re());
  return rational_string(s.re()) + "+" + rational_string(s.im()) + "i";
}

std::string csv_basis(const BasisVector& v) {
  return std::to_string(v.m) + "," + std::to_string(v.n) + "," + kind_name(v.kind);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json failure_json(const VectorFailure& f) {
  json out;
  const auto& terms = f.input.terms();
  if (terms.size() == 1 && terms.begin()->second == Scalar(1)) out["basis"] = basis_json(terms.begin()->first);
  else out["input"] = vector_json(f.input);
  out["residual"] = vector_json(f.residual);
  return out;
}

json verification_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(failure_json(f));
  return {{"relation", r.relation}, {"text", r.text},   {"p", r.p},
          {"m_max", r.m_max},       {"margin", r.margin}, {"checked", r.checked},
          {"pass", r.pass},         {"failures", failures}};
}

std::string verification_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "relation,p,m_max,margin,checked,pass,failures,text\n";
  for (const auto& r : reports)
    os << r.relation << ',' << r.p << ',' << r.m_max << ',' << r.margin << ',' << r.checked << ','
       << (r.pass ? "true" : "false") << ',' << r.failures.size() << ',' << csv_field(r.text) << '\n';
  return os.str();
}

json components_json(const std::vector<InvariantComponent>& comps) {
  json out = json::array();
  for (std::size_t i = 0; i < comps.size(); ++i)
    out.push_back({{"id", i},
                   {"dimension", comps[i].dimension()},
                   {"complete", comps[i].complete},
                   {"basis", basis_list(comps[i].basis)}});
  return out;
}

std::string components_csv(const std::vector<InvariantComponent>& comps) {
  std::ostringstream os;
  os << "component,dimension,complete,m,n,kind\n";
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& v : comps[i].basis)
      os << i << ',' << comps[i].dimension() << ',' << (comps[i].complete ? "true" : "false") << ','
         << csv_basis(v) << '\n';
  return os.str();
}

// Every complete component is mapped into itself by every generator.
bool components_invariant(const std::vector<InvariantComponent>& comps, const GeneratorSet& gens,
                          const FockParams& params) {
  for (const auto& [label, expr] : gens.exprs) {
    const OperatorMatrix mat = compile(expr, params);
    for (const auto& c : comps) {
      if (!c.complete) continue;
      for (const auto& v : c.basis)
        for (const auto& [w, coeff] : mat.column(v).terms())
          if (!c.contains(w)) return false;
    }
  }
  return true;
}

}  // namespace

Rendered basis_report(const FockParams& params, Format format) {
  const auto basis = enumerate_basis(params);
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "index,m,n,kind,grade_m,grade_n\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const GradeZ2Z2 g = grade_z2z2(basis[i]);
      os << i << ',' << csv_basis(basis[i]) << ',' << g.first << ',' << g.second << '\n';
    }
    return {os.str(), true};
  }
  json list = json::array();
  for (const auto& v : basis) {
    json entry = basis_json(v);
    const GradeZ2Z2 g = grade_z2z2(v);
    entry["grade"] = {g.first, g.second};
    list.push_back(entry);
  }
  return {dump({{"p", params.p()}, {"m_max", params.m_max()}, {"size", basis.size()}, {"basis", list}}), true};
}

Rendered verify_report(const FockParams& params, const std::vector<std::string>& selectors, int jobs,
                       Format format) {
  const auto catalog = relation_catalog(params.p());
  const auto chosen = selectors.empty() ? catalog : select_relations(catalog, selectors);
  const auto reports = verify_all(chosen, params, jobs);
  bool pass = true;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    failed += r.pass ? 0 : 1;
  }
  if (format == Format::Csv) return {verification_csv(reports), pass};
  json list = json::array();
  for (const auto& r : reports) list.push_back(verification_json(r));
  return {dump({{"p", params.p()},
                {"m_max", params.m_max()},
                {"relations_checked", reports.size()},
                {"relations_failed", failed},
                {"pass", pass},
                {"relations", list}}),
          pass};
}

std::string relation_list(int p) {
  json list = json::array();
  for (const auto& id : relation_catalog(p))
    list.push_back({{"name", id.name}, {"text", id.text}, {"vacuum_only", id.vacuum_only}});
  return dump(list);
}

Rendered diagonal_report(const FockParams& params, const SuperAlgebraSpec& spec, Format format) {
  require_valid(spec);
  const DiagonalReport report = diagonal_decomposition(params, spec);
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "family,index,dimension,formula_dimension,invariant,m,n,kind\n";
    for (const auto& fam : report.families)
      for (const auto& v : fam.basis)
        os << (fam.upper ? "upper" : "lower") << ',' << fam.index << ',' << fam.basis.size() << ','
           << fam.formula_dimension << ',' << (fam.invariant ? "true" : "false") << ',' << csv_basis(v) << '\n';
    return {os.str(), report.pass};
  }
  json families = json::array();
  for (const auto& fam : report.families)
    families.push_back({{"family", fam.upper ? "upper" : "lower"},
                        {"index", fam.index},
                        {"dimension", fam.basis.size()},
                        {"formula_dimension", fam.formula_dimension},
                        {"invariant", fam.invariant},
                        {"basis", basis_list(fam.basis)}});
  json elements = json::array();
  for (const auto& e : spec.elements()) elements.push_back(e.name);
  return {dump({{"preset", "diagonal"},
                {"p", report.p},
                {"m_max", report.m_max},
                {"elements", elements},
                {"disjoint", report.disjoint},
                {"covers_window", report.covers_window},
                {"invariant", report.invariant},
                {"dimensions_match", report.dimensions_match},
                {"notes", report.notes},
                {"pass", report.pass},
                {"families", families}}),
          report.pass};
}

Rendered decompose_report(const FockParams& params, const std::string& preset_name,
                          const SuperAlgebraSpec& spec, Format format) {
  if (preset_name == "diagonal") return diagonal_report(params, spec, format);
  const GeneratorSet gens = preset(preset_name);
  const auto comps = decompose(gens, params);
  json checks;
  checks["invariant"] = components_invariant(comps, gens, params);
  bool pass = checks["invariant"].get<bool>();
  if (preset_name == "l00l01" && params.m_max() >= 4) {
    const FilledEmptyReport split = filled_empty_split(gens, params);
    checks["filled_empty"] = {{"two_components", split.two_components},
                              {"parity_consistent", split.parity_consistent},
                              {"filled", split.filled},
                              {"empty", split.empty},
                              {"star_in_empty", split.star_in_empty},
                              {"pass", split.pass}};
    pass = pass && split.pass;
  }
  if (preset_name == "osp12") {
    const InvariantComponent* first = nullptr;
    const InvariantComponent* last = nullptr;
    for (const auto& c : comps) {
      if (c.basis.front().n == 0) first = &c;
      if (c.basis.front().n == params.p()) last = &c;
    }
    const bool iso = first && last && support_graphs_isomorphic(*first, *last, gens, params);
    checks["columns"] = comps.size();
    checks["first_last_isomorphic"] = iso;
    pass = pass && iso;
  }
  if (format == Format::Csv) return {components_csv(comps), pass};
  json gen_names = json::array();
  for (const auto& [label, expr] : gens.exprs) gen_names.push_back(label);
  return {dump({{"preset", preset_name},
                {"p", params.p()},
                {"m_max", params.m_max()},
                {"generators", gen_names},
                {"component_count", comps.size()},
                {"checks", checks},
                {"pass", pass},
                {"components", components_json(comps)}}),
          pass};
}

Rendered realize_report(const FockParams& params, const SuperAlgebraSpec& spec, int jobs, Format format) {
  const ValidationReport validation = validate_spec(spec);
  std::vector<VerificationReport> pairs;
  bool pass = validation.valid;
  if (validation.valid) {
    const BracketReport brackets = check_bracket_preservation(spec, params, jobs);
    pairs = brackets.pairs;
    pass = brackets.pass;
  }
  if (format == Format::Csv) {
    if (!validation.valid) {
      std::ostringstream os;
      os << "violation\n";
      for (const auto& v : validation.violations) os << csv_field(v) << '\n';
      return {os.str(), false};
    }
    return {verification_csv(pairs), pass};
  }
  json elements = json::array();
  for (const auto& e : spec.elements()) {
    const SuperMatrix2 m = spec.rep2(spec.index_of(e.name));
    elements.push_back({{"name", e.name},
                        {"parity", to_string(e.parity)},
                        {"rep2", {{"A", scalar_json(m.a)}, {"B", scalar_json(m.b)},
                                  {"C", scalar_json(m.c)}, {"D", scalar_json(m.d)}}},
                        {"operator", realize(spec, e.name, params.p()).to_string()}});
  }
  json pair_list = json::array();
  for (const auto& r : pairs) pair_list.push_back(verification_json(r));
  return {dump({{"p", params.p()},
                {"m_max", params.m_max()},
                {"valid", validation.valid},
                {"violations", validation.violations},
                {"elements", elements},
                {"pass", pass},
                {"brackets", pair_list}}),
          pass};
}

Rendered gram_report(const InnerProductContext& ctx, int m, int n, Format format) {
  const auto g = gram(ctx, m, n);
  const auto basis = cell_basis(ctx.params(), m, n);
  std::vector<OrthoVector> dirs;
  bool positive = true;
  try {
    dirs = orthonormal_basis(ctx, m, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GramDegenerate) throw;
    positive = false;
  }
  bool orthogonal = true;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      orthogonal = orthogonal && ctx.inner_product(dirs[i].direction, dirs[j].direction).is_zero();
  const bool pass = positive && orthogonal;
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "row,column,re,im\n";
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        os << i << ',' << j << ',' << rational_string(g[i][j].re()) << ',' << rational_string(g[i][j].im()) << '\n';
    return {os.str(), pass};
  }
  json matrix = json::array();
  for (const auto& row : g) {
    json r = json::array();
    for (const auto& x : row) r.push_back(scalar_json(x));
    matrix.push_back(r);
  }
  json directions = json::array();
  for (const auto& d : dirs)
    directions.push_back({{"sign", d.sign > 0 ? "+" : "-"},
                          {"direction", vector_json(d.direction)},
                          {"norm2", scalar_json(d.norm2)}});
  return {dump({{"p", ctx.params().p()},
                {"m", m},
                {"n", n},
                {"basis", basis_list(basis)},
                {"gram", matrix},
                {"positive_definite", positive},
                {"orthogonal", orthogonal},
                {"pass", pass},
                {"directions", directions}}),
          pass};
}

Rendered csco_report(const InnerProductContext& ctx, Format format) {
  const CscoReport report = csco_check(ctx);
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "m,n,sign,nb,nf,ns,pass\n";
    for (const auto& e : report.eigen)
      os << e.m << ',' << e.n << ',' << (e.sign > 0 ? '+' : '-') << ',' << csv_scalar(e.nb) << ','
         << csv_scalar(e.nf) << ',' << csv_scalar(e.ns) << ',' << (e.pass ? "true" : "false") << '\n';
    return {os.str(), report.pass};
  }
  json commutators = json::array();
  for (const auto& r : report.commutators) commutators.push_back(verification_json(r));
  json eigen = json::array();
  for (const auto& e : report.eigen)
    eigen.push_back({{"m", e.m},
                     {"n", e.n},
                     {"sign", e.sign > 0 ? "+" : "-"},
                     {"nb", scalar_json(e.nb)},
                     {"nf", scalar_json(e.nf)},
                     {"ns", scalar_json(e.ns)},
                     {"pass", e.pass}});
  return {dump({{"p", report.p},
                {"m_max", report.m_max},
                {"pass", report.pass},
                {"commutators", commutators},
                {"eigenvalues", eigen}}),
          report.pass};
}

}  // namespace pbf
