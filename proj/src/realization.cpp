#include "pbf/realization.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pbf/error.hpp"

namespace pbf {

using json = nlohmann::ordered_json;

const char* to_string(Parity parity) { return parity == Parity::Even ? "even" : "odd"; }

namespace {

int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }

// (-1)^(|x||y|)
Scalar graded_sign(Parity x, Parity y) {
  return Scalar(parity_bit(x) * parity_bit(y) == 1 ? -1 : 1);
}

bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

void axpy(std::vector<Scalar>& y, const Scalar& a, const std::vector<Scalar>& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

using Mat2 = std::array<Scalar, 4>;

Mat2 as_matrix(const SuperMatrix2& m) { return {m.a, m.b, m.c, m.d}; }

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

std::string describe(const std::vector<Scalar>& coeffs, const SuperAlgebraSpec& spec) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs[k].to_string() + ")" + spec.element(k).name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::size_t SuperAlgebraSpec::add_element(const std::string& name, Parity parity) {
  for (const auto& e : elements_)
    if (e.name == name) fail(ErrorCode::SpecInvalid, "duplicate basis element '" + name + "'");
  elements_.push_back({name, parity});
  for (auto& [key, coeffs] : brackets_) coeffs.emplace_back();
  return elements_.size() - 1;
}

std::size_t SuperAlgebraSpec::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].name == name) return i;
  fail(ErrorCode::UnknownElement, "unknown element '" + name + "'");
}

void SuperAlgebraSpec::set_bracket(const std::string& x, const std::string& y,
                                   const std::vector<std::pair<std::string, Scalar>>& terms) {
  std::vector<Scalar> coeffs(elements_.size());
  for (const auto& [name, c] : terms) coeffs[index_of(name)] += c;
  brackets_[{index_of(x), index_of(y)}] = std::move(coeffs);
}

void SuperAlgebraSpec::set_rep2(const std::string& name, const SuperMatrix2& m) {
  rep2_[index_of(name)] = m;
}

std::vector<Scalar> SuperAlgebraSpec::bracket(std::size_t i, std::size_t j) const {
  if (auto it = brackets_.find({i, j}); it != brackets_.end()) return it->second;
  std::vector<Scalar> out(elements_.size());
  if (auto it = brackets_.find({j, i}); it != brackets_.end())
    axpy(out, -graded_sign(elements_[i].parity, elements_[j].parity), it->second);
  return out;
}

SuperMatrix2 SuperAlgebraSpec::rep2(std::size_t i) const {
  auto it = rep2_.find(i);
  return it == rep2_.end() ? SuperMatrix2{} : it->second;
}

ValidationReport validate_spec(const SuperAlgebraSpec& spec) {
  ValidationReport report;
  auto violation = [&](std::string what) {
    report.valid = false;
    report.violations.push_back(std::move(what));
  };
  const std::size_t n = spec.size();
  const auto name = [&](std::size_t i) { return spec.element(i).name; };
  const auto parity = [&](std::size_t i) { return spec.element(i).parity; };

  for (std::size_t i = 0; i < n; ++i) {
    if (!spec.has_rep2(i)) {
      violation("no 2x2 image for " + name(i));
      continue;
    }
    const SuperMatrix2 m = spec.rep2(i);
    if (parity(i) == Parity::Even && !(m.b.is_zero() && m.c.is_zero()))
      violation("even element " + name(i) + " has off-diagonal 2x2 entries");
    if (parity(i) == Parity::Odd && !(m.a.is_zero() && m.d.is_zero()))
      violation("odd element " + name(i) + " has diagonal 2x2 entries");
  }

  for (const auto& [key, coeffs] : spec.given_brackets()) {
    const auto [i, j] = key;
    const int target = (parity_bit(parity(i)) + parity_bit(parity(j))) & 1;
    for (std::size_t k = 0; k < n; ++k)
      if (!coeffs[k].is_zero() && parity_bit(parity(k)) != target)
        violation("<" + name(i) + "," + name(j) + "> has a component along " + name(k) +
                  " of the wrong parity");
    const Scalar s = graded_sign(parity(i), parity(j));
    if (i == j) {
      if (s == Scalar(1) && !all_zero(coeffs))
        violation("[" + name(i) + "," + name(i) + "] = " + describe(coeffs, spec) + " must vanish");
    } else if (auto other = spec.given_brackets().find({j, i}); other != spec.given_brackets().end()) {
      std::vector<Scalar> sum = coeffs;
      axpy(sum, s, other->second);
      if (!all_zero(sum))
        violation("<" + name(i) + "," + name(j) + "> and <" + name(j) + "," + name(i) +
                  "> break graded antisymmetry");
    }
  }

  // Bracket of x_i with a coefficient vector.
  const auto bracket_with = [&](std::size_t i, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(n);
    for (std::size_t k = 0; k < n; ++k)
      if (!v[k].is_zero()) axpy(out, v[k], spec.bracket(i, k));
    return out;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        std::vector<Scalar> total(n);
        axpy(total, graded_sign(parity(x), parity(z)), bracket_with(x, spec.bracket(y, z)));
        axpy(total, graded_sign(parity(y), parity(x)), bracket_with(y, spec.bracket(z, x)));
        axpy(total, graded_sign(parity(z), parity(y)), bracket_with(z, spec.bracket(x, y)));
        if (!all_zero(total))
          violation("graded Jacobi identity fails on (" + name(x) + ", " + name(y) + ", " + name(z) + ")");
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Mat2 x = as_matrix(spec.rep2(i)), y = as_matrix(spec.rep2(j));
      const Mat2 xy = mul(x, y), yx = mul(y, x);
      const Scalar s = graded_sign(parity(i), parity(j));
      const std::vector<Scalar> coeffs = spec.bracket(i, j);
      bool ok = true;
      for (int e = 0; e < 4; ++e) {
        Scalar expected;
        for (std::size_t k = 0; k < n; ++k)
          if (!coeffs[k].is_zero()) expected += coeffs[k] * as_matrix(spec.rep2(k))[e];
        if (xy[e] - s * yx[e] != expected) ok = false;
      }
      if (!ok)
        violation("2x2 images do not satisfy <" + name(i) + "," + name(j) + "> = " + describe(coeffs, spec));
    }
  }
  return report;
}

void require_valid(const SuperAlgebraSpec& spec) {
  const ValidationReport report = validate_spec(spec);
  if (!report.valid) fail(ErrorCode::SpecInvalid, report.violations.front());
}

namespace {

Scalar parse_component(const json& j, const std::string& where) {
  if (j.is_null()) return Scalar();
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  fail(ErrorCode::SpecInvalid, where + ": expected an integer or a rational string");
}

Scalar parse_scalar(const json& j, const std::string& where) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      if (key != "re" && key != "im") fail(ErrorCode::SpecInvalid, where + ": unexpected key '" + key + "'");
    const Scalar re = parse_component(j.value("re", json()), where);
    const Scalar im = parse_component(j.value("im", json()), where);
    return Scalar(re.re(), im.re());
  }
  return parse_component(j, where);
}

json scalar_json(const Scalar& s) {
  return json{{"re", rational_string(s.re())}, {"im", rational_string(s.im())}};
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorCode::SpecInvalid, where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_string()) fail(ErrorCode::SpecInvalid, where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

SuperAlgebraSpec spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::SpecInvalid, "spec must be a JSON object");

  SuperAlgebraSpec spec;
  if (doc.contains("basis")) {
    const json& basis = doc.at("basis");
    if (!basis.is_array()) fail(ErrorCode::SpecInvalid, "'basis' must be an array");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::string where = "basis[" + std::to_string(i) + "]";
      const std::string name = require_string(basis[i], "name", where);
      const std::string parity = require_string(basis[i], "parity", where);
      if (parity != "even" && parity != "odd")
        fail(ErrorCode::SpecInvalid, where + ": parity must be \"even\" or \"odd\"");
      spec.add_element(name, parity == "even" ? Parity::Even : Parity::Odd);
    }
  }

  if (doc.contains("brackets")) {
    const json& brackets = doc.at("brackets");
    if (!brackets.is_array()) fail(ErrorCode::SpecInvalid, "'brackets' must be an array");
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      const std::string where = "brackets[" + std::to_string(i) + "]";
      const std::string x = require_string(brackets[i], "x", where);
      const std::string y = require_string(brackets[i], "y", where);
      if (!seen.insert({x, y}).second)
        fail(ErrorCode::SpecInvalid, where + ": bracket <" + x + "," + y + "> given twice");
      std::vector<std::pair<std::string, Scalar>> terms;
      if (brackets[i].contains("terms")) {
        const json& list = brackets[i].at("terms");
        if (!list.is_array()) fail(ErrorCode::SpecInvalid, where + ": 'terms' must be an array");
        for (std::size_t t = 0; t < list.size(); ++t) {
          const std::string twhere = where + ".terms[" + std::to_string(t) + "]";
          terms.emplace_back(require_string(list[t], "elem", twhere),
                             parse_scalar(require_field(list[t], "coeff", twhere), twhere));
        }
      }
      spec.set_bracket(x, y, terms);
    }
  }

  if (doc.contains("rep2")) {
    const json& rep = doc.at("rep2");
    if (!rep.is_object()) fail(ErrorCode::SpecInvalid, "'rep2' must be an object");
    for (const auto& [name, entry] : rep.items()) {
      const std::string where = "rep2." + name;
      if (!entry.is_object()) fail(ErrorCode::SpecInvalid, where + " must be an object");
      for (const auto& [key, value] : entry.items())
        if (key != "A" && key != "B" && key != "C" && key != "D")
          fail(ErrorCode::SpecInvalid, where + ": unexpected key '" + key + "'");
      SuperMatrix2 m;
      m.a = parse_scalar(entry.value("A", json()), where + ".A");
      m.b = parse_scalar(entry.value("B", json()), where + ".B");
      m.c = parse_scalar(entry.value("C", json()), where + ".C");
      m.d = parse_scalar(entry.value("D", json()), where + ".D");
      spec.set_rep2(name, m);
    }
  }
  return spec;
}

SuperAlgebraSpec spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return spec_from_json(buf.str());
}

std::string spec_to_json(const SuperAlgebraSpec& spec) {
  json doc;
  doc["basis"] = json::array();
  for (const auto& e : spec.elements())
    doc["basis"].push_back({{"name", e.name}, {"parity", to_string(e.parity)}});
  doc["brackets"] = json::array();
  for (const auto& [key, coeffs] : spec.given_brackets()) {
    json terms = json::array();
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (!coeffs[k].is_zero())
        terms.push_back({{"elem", spec.element(k).name}, {"coeff", scalar_json(coeffs[k])}});
    doc["brackets"].push_back(
        {{"x", spec.element(key.first).name}, {"y", spec.element(key.second).name}, {"terms", terms}});
  }
  doc["rep2"] = json::object();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!spec.has_rep2(i)) continue;
    const SuperMatrix2 m = spec.rep2(i);
    doc["rep2"][spec.element(i).name] = {
        {"A", scalar_json(m.a)}, {"B", scalar_json(m.b)}, {"C", scalar_json(m.c)}, {"D", scalar_json(m.d)}};
  }
  return doc.dump(2);
}

SuperAlgebraSpec gl11_defining_spec() {
  SuperAlgebraSpec spec;
  spec.add_element("E11", Parity::Even);
  spec.add_element("E22", Parity::Even);
  spec.add_element("E12", Parity::Odd);
  spec.add_element("E21", Parity::Odd);
  const Scalar one(1), minus(-1);
  spec.set_bracket("E11", "E12", {{"E12", one}});
  spec.set_bracket("E11", "E21", {{"E21", minus}});
  spec.set_bracket("E22", "E12", {{"E12", minus}});
  spec.set_bracket("E22", "E21", {{"E21", one}});
  spec.set_bracket("E12", "E21", {{"E11", one}, {"E22", one}});
  spec.set_rep2("E11", {one, 0, 0, 0});
  spec.set_rep2("E22", {0, 0, 0, one});
  spec.set_rep2("E12", {0, one, 0, 0});
  spec.set_rep2("E21", {0, 0, one, 0});
  return spec;
}

OperatorExpr realize(const SuperAlgebraSpec& spec, const std::string& name, int p) {
  const std::size_t i = spec.index_of(name);
  const SuperMatrix2 m = spec.rep2(i);
  if (spec.element(i).parity == Parity::Even)
    return m.a * OperatorExpr(DerivedOp::Nb) + m.d * OperatorExpr(DerivedOp::Nf) +
           ((m.a - m.d) * Scalar::ratio(p, 2)) * OperatorExpr::identity();
  return m.b * OperatorExpr(DerivedOp::QMinus) + m.c * OperatorExpr(DerivedOp::QPlus);
}

SparseVector act(const SuperAlgebraSpec& spec, const std::string& name, const SparseVector& v,
                 const FockParams& params) {
  const std::size_t i = spec.index_of(name);
  const SuperMatrix2 m = spec.rep2(i);
  SparseVector out;
  if (spec.element(i).parity == Parity::Even) {
    const Scalar half_p = Scalar::ratio(params.p(), 2);
    for (const auto& [b, c] : v.terms()) {
      if (!in_window(b, params)) fail(ErrorCode::TruncationOverflow, to_string(b) + " lies outside the window");
      out.add(b, c * ((Scalar(b.m) + half_p) * m.a + (Scalar(b.n) - half_p) * m.d));
    }
    return out;
  }
  if (!m.b.is_zero()) out.add(apply_derived_closed_form(DerivedOp::QMinus, v, params), m.b);
  if (!m.c.is_zero()) out.add(apply_derived_closed_form(DerivedOp::QPlus, v, params), m.c);
  return out;
}

Identity bracket_identity(const SuperAlgebraSpec& spec, std::size_t i, std::size_t j, int p) {
  const SpecElement& x = spec.element(i);
  const SpecElement& y = spec.element(j);
  const OperatorExpr jx = realize(spec, x.name, p), jy = realize(spec, y.name, p);
  const bool both_odd = x.parity == Parity::Odd && y.parity == Parity::Odd;
  Identity id;
  id.name = "bracket." + x.name + "." + y.name;
  id.lhs = both_odd ? anticommutator(jx, jy) : commutator(jx, jy);
  const std::vector<Scalar> coeffs = spec.bracket(i, j);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) id.rhs += coeffs[k] * realize(spec, spec.element(k).name, p);
  const std::string open = both_odd ? "{" : "[", close = both_odd ? "}" : "]";
  id.text = open + "J(" + x.name + "),J(" + y.name + ")" + close + " = J(" + describe(coeffs, spec) + ")";
  return id;
}

BracketReport check_bracket_preservation(const SuperAlgebraSpec& spec, const FockParams& params, int jobs) {
  require_valid(spec);
  if (params.m_max() < 4)
    fail(ErrorCode::TruncationTooSmall,
         "bracket preservation needs m_max >= 4, got " + std::to_string(params.m_max()));
  std::vector<Identity> identities;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = i; j < spec.size(); ++j) identities.push_back(bracket_identity(spec, i, j, params.p()));
  BracketReport report;
  report.p = params.p();
  report.m_max = params.m_max();
  report.pairs = verify_all(identities, params, jobs);
  for (const auto& r : report.pairs) report.pass = report.pass && r.pass;
  return report;
}

}  // namespace pbf
