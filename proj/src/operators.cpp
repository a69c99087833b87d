#include "pbf/operators.hpp"

#include <algorithm>
#include <sstream>

#include "pbf/error.hpp"

namespace pbf {

namespace {

constexpr long sign_of(long k) { return (k % 2 == 0) ? 1 : -1; }

struct ShiftVisitor {
  bool want_m;
  int operator()(Generator g) const {
    switch (g) {
      case Generator::BPlus: return want_m ? 1 : 0;
      case Generator::BMinus: return want_m ? -1 : 0;
      case Generator::FPlus: return want_m ? 0 : 1;
      case Generator::FMinus: return want_m ? 0 : -1;
    }
    return 0;
  }
  int operator()(DerivedOp d) const {
    switch (d) {
      case DerivedOp::Nb:
      case DerivedOp::Nf:
      case DerivedOp::Ns: return 0;
      case DerivedOp::QPlus: return want_m ? -1 : 1;
      case DerivedOp::QMinus: return want_m ? 1 : -1;
      case DerivedOp::RPlus: return 1;
      case DerivedOp::RMinus: return -1;
      case DerivedOp::BPlusSq: return want_m ? 2 : 0;
      case DerivedOp::BMinusSq: return want_m ? -2 : 0;
    }
    return 0;
  }
};

}  // namespace

const char* to_string(Generator g) {
  switch (g) {
    case Generator::BPlus: return "b+";
    case Generator::BMinus: return "b-";
    case Generator::FPlus: return "f+";
    case Generator::FMinus: return "f-";
  }
  return "?";
}

const char* to_string(DerivedOp d) {
  switch (d) {
    case DerivedOp::Nb: return "Nb";
    case DerivedOp::Nf: return "Nf";
    case DerivedOp::Ns: return "Ns";
    case DerivedOp::QPlus: return "Q+";
    case DerivedOp::QMinus: return "Q-";
    case DerivedOp::RPlus: return "R+";
    case DerivedOp::RMinus: return "R-";
    case DerivedOp::BPlusSq: return "(b+)^2";
    case DerivedOp::BMinusSq: return "(b-)^2";
  }
  return "?";
}

std::string to_string(const Symbol& s) {
  return std::visit([](auto x) { return std::string(to_string(x)); }, s);
}

int m_shift(const Symbol& s) { return std::visit(ShiftVisitor{true}, s); }
int n_shift(const Symbol& s) { return std::visit(ShiftVisitor{false}, s); }

GradeZ2Z2 symbol_grade(const Symbol& s) { return {m_shift(s) & 1, n_shift(s) & 1}; }

Generator adjoint(Generator g) {
  switch (g) {
    case Generator::BPlus: return Generator::BMinus;
    case Generator::BMinus: return Generator::BPlus;
    case Generator::FPlus: return Generator::FMinus;
    case Generator::FMinus: return Generator::FPlus;
  }
  return g;
}

// ---------------------------------------------------------------------------
// OperatorExpr

OperatorExpr::OperatorExpr(Generator g) { terms_.emplace(Word{g}, Scalar(1)); }
OperatorExpr::OperatorExpr(DerivedOp d) { terms_.emplace(Word{d}, Scalar(1)); }

OperatorExpr OperatorExpr::identity() { return word({}); }

OperatorExpr OperatorExpr::word(Word w, Scalar coeff) {
  OperatorExpr e;
  e.add_term(w, coeff);
  return e;
}

void OperatorExpr::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

OperatorExpr operator*(const Scalar& c, const OperatorExpr& e) {
  OperatorExpr out;
  for (const auto& [w, x] : e.terms_) out.add_term(w, c * x);
  return out;
}

std::string OperatorExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c << ')';
    if (w.empty()) os << "*1";
    for (const auto& s : w) os << '*' << pbf::to_string(s);
  }
  return os.str();
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b + b * a; }

OperatorExpr power(const OperatorExpr& a, int k) {
  OperatorExpr out = OperatorExpr::identity();
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

OperatorExpr definition(DerivedOp op, int p) {
  const Scalar half = Scalar::ratio(1, 2);
  const Scalar half_p = Scalar::ratio(p, 2);
  const OperatorExpr one = OperatorExpr::identity();
  const OperatorExpr bp(Generator::BPlus), bm(Generator::BMinus);
  const OperatorExpr fp(Generator::FPlus), fm(Generator::FMinus);
  switch (op) {
    case DerivedOp::Nb: return half * anticommutator(bp, bm) - half_p * one;
    case DerivedOp::Nf: return half * commutator(fp, fm) + half_p * one;
    case DerivedOp::Ns: {
      const OperatorExpr nf = definition(DerivedOp::Nf, p);
      return Scalar::ratio(1, p) *
             (nf * nf - Scalar(p + 1) * nf + fp * fm + half_p * one);
    }
    case DerivedOp::QPlus: return half * anticommutator(bm, fp);
    case DerivedOp::QMinus: return half * anticommutator(bp, fm);
    case DerivedOp::RPlus: return half * anticommutator(bp, fp);
    case DerivedOp::RMinus: return half * anticommutator(bm, fm);
    case DerivedOp::BPlusSq: return bp * bp;
    case DerivedOp::BMinusSq: return bm * bm;
  }
  return {};
}

OperatorExpr expand(const OperatorExpr& expr, int p) {
  std::map<DerivedOp, OperatorExpr> defs;
  OperatorExpr out;
  for (const auto& [w, c] : expr.terms()) {
    OperatorExpr term = OperatorExpr::word({}, c);
    for (const auto& s : w) {
      if (const auto* g = std::get_if<Generator>(&s)) {
        term = term * OperatorExpr(*g);
      } else {
        const DerivedOp d = std::get<DerivedOp>(s);
        auto it = defs.find(d);
        if (it == defs.end()) it = defs.emplace(d, definition(d, p)).first;
        term = term * it->second;
      }
    }
    out += term;
  }
  return out;
}

std::optional<GradeZ2Z2> grade_of_expr(const OperatorExpr& expr) {
  std::optional<GradeZ2Z2> common;
  for (const auto& [w, c] : expr.terms()) {
    GradeZ2Z2 g;
    for (const auto& s : w) g = g + symbol_grade(s);
    if (common && !(*common == g)) return std::nullopt;
    common = g;
  }
  return common.value_or(GradeZ2Z2{});
}

Scalar theta(GradeZ2Z2 a, GradeZ2Z2 b) {
  return Scalar(((a.first * b.first + a.second * b.second) & 1) ? -1 : 1);
}

// ---------------------------------------------------------------------------
// Ladder formulas

std::vector<RawTerm> raw_generator_action(Generator g, const BasisVector& v, int p) {
  const long m = v.m, n = v.n, s = sign_of(n);
  const bool alpha = v.kind == Kind::Alpha;
  std::vector<RawTerm> out;
  auto emit = [&](long c, int mm, int nn, Kind k) {
    if (c != 0) out.push_back({BasisVector{mm, nn, k}, c});
  };
  switch (g) {
    case Generator::BMinus:
      if (alpha) {
        if (m % 2 == 0) {
          emit(s * m, v.m - 1, v.n, Kind::Alpha);
          emit(-2 * s * n * m, v.m - 1, v.n, Kind::Beta);
        } else {
          emit(-s * (2 * n - m - (p - 1)), v.m - 1, v.n, Kind::Alpha);
          emit(-2 * s * n * (m - 1), v.m - 1, v.n, Kind::Beta);
        }
      } else {
        emit(-s, v.m - 1, v.n, Kind::Alpha);
        if (m % 2 == 0) emit(s * (2 * n - m - p), v.m - 1, v.n, Kind::Beta);
        else emit(-s * (m - 1), v.m - 1, v.n, Kind::Beta);
      }
      break;
    case Generator::BPlus:
      if (alpha) {
        emit(s, v.m + 1, v.n, Kind::Alpha);
        emit(-s * 2 * n, v.m + 1, v.n, Kind::Beta);
      } else {
        emit(-s, v.m + 1, v.n, Kind::Beta);
      }
      break;
    case Generator::FMinus:
      if (alpha) {
        emit(n * (p + 1 - n), v.m, v.n - 1, Kind::Alpha);
      } else {
        emit(1, v.m, v.n - 1, Kind::Alpha);
        emit((n - 1) * (p - n), v.m, v.n - 1, Kind::Beta);
      }
      break;
    case Generator::FPlus:
      if (n <= p - 1) emit(1, v.m, v.n + 1, v.kind);
      break;
  }
  return out;
}

namespace {

void require_in_window(const BasisVector& v, const FockParams& params) {
  if (!is_canonical(v, params.p()))
    fail(ErrorCode::InvalidArgument, to_string(v) + " is not a canonical basis label");
  if (v.m > params.m_max())
    fail(ErrorCode::InvalidArgument,
         to_string(v) + " lies above m_max=" + std::to_string(params.m_max()));
}

SparseVector canonical_sum(const std::vector<RawTerm>& terms, const FockParams& params) {
  SparseVector out;
  for (const auto& t : terms)
    out.add(canonicalize(t.label.m, t.label.n, t.label.kind, params), Scalar(t.coeff));
  return out;
}

template <class Fn>
SparseVector linear_extension(const SparseVector& v, Fn&& on_basis) {
  SparseVector out;
  for (const auto& [b, c] : v.terms()) out.add(on_basis(b), c);
  return out;
}

}  // namespace

SparseVector apply_generator(Generator g, const BasisVector& v, const FockParams& params) {
  require_in_window(v, params);
  if (g == Generator::BPlus && v.m == params.m_max())
    fail(ErrorCode::TruncationOverflow,
         "b+ on " + to_string(v) + " needs m=" + std::to_string(v.m + 1) + " > m_max");
  return canonical_sum(raw_generator_action(g, v, params.p()), params);
}

SparseVector apply_generator(Generator g, const SparseVector& v, const FockParams& params) {
  return linear_extension(v, [&](const BasisVector& b) { return apply_generator(g, b, params); });
}

SparseVector apply_derived_closed_form(DerivedOp op, const BasisVector& v,
                                       const FockParams& params) {
  require_in_window(v, params);
  const long m = v.m, n = v.n, s = sign_of(n);
  const bool alpha = v.kind == Kind::Alpha;
  std::vector<RawTerm> raw;
  auto emit = [&](long c, int mm, int nn, Kind k) {
    if (c != 0) raw.push_back({BasisVector{mm, nn, k}, c});
  };
  switch (op) {
    case DerivedOp::Nb: return SparseVector(v, Scalar(m));
    case DerivedOp::Nf: return SparseVector(v, Scalar(n));
    case DerivedOp::QMinus:
      if (v.m == params.m_max())
        fail(ErrorCode::TruncationOverflow,
             "Q- on " + to_string(v) + " needs m=" + std::to_string(v.m + 1) + " > m_max");
      if (alpha) {
        emit(-s * n, v.m + 1, v.n - 1, Kind::Alpha);
        emit(s * n * (n - 1), v.m + 1, v.n - 1, Kind::Beta);
      } else {
        emit(-s, v.m + 1, v.n - 1, Kind::Alpha);
        emit(s * (n - 1), v.m + 1, v.n - 1, Kind::Beta);
      }
      break;
    case DerivedOp::QPlus:
      // The general expression uses floor((m-2)/2) and holds for m >= 2;
      // m = 0 and m = 1 are the boundary rows.
      if (alpha) {
        if (m == 1) {
          emit(s, 0, v.n + 1, Kind::Alpha);
        } else if (m >= 2) {
          emit((s - s * sign_of(m)) / 2, v.m - 1, v.n + 1, Kind::Alpha);
          emit(2 * s * ((m - 2) / 2 + 1), v.m - 1, v.n + 1, Kind::Beta);
        }
      } else if (m >= 2) {
        emit((-s - s * sign_of(m)) / 2, v.m - 1, v.n + 1, Kind::Beta);
      }
      break;
    default:
      fail(ErrorCode::InvalidArgument,
           std::string("no closed form implemented for ") + to_string(op));
  }
  return canonical_sum(raw, params);
}

SparseVector apply_derived_closed_form(DerivedOp op, const SparseVector& v,
                                       const FockParams& params) {
  return linear_extension(
      v, [&](const BasisVector& b) { return apply_derived_closed_form(op, b, params); });
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(FockParams domain, int codomain_m_max,
                               std::vector<SparseVector> columns)
    : domain_(domain), codomain_m_max_(codomain_m_max), columns_(std::move(columns)) {
  if (columns_.size() != basis_size(domain_))
    fail(ErrorCode::InvalidArgument, "column count does not match the domain basis");
}

const SparseVector& OperatorMatrix::column(const BasisVector& v) const {
  require_in_window(v, domain_);
  return columns_[basis_index(v, domain_.p())];
}

SparseVector OperatorMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, c] : v.terms()) {
    if (!in_window(b, domain_))
      fail(ErrorCode::TruncationOverflow,
           to_string(b) + " is outside the compiled domain m_max=" +
               std::to_string(domain_.m_max()));
    out.add(columns_[basis_index(b, domain_.p())], c);
  }
  return out;
}

bool OperatorMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVector& c) { return c.is_zero(); });
}

namespace {

using IndexedVector = std::map<std::size_t, Scalar>;

// Generator matrices on a fixed wide space, built on demand.
class GeneratorTables {
 public:
  explicit GeneratorTables(const FockParams& space)
      : space_(space), basis_(enumerate_basis(space)) {}

  const std::vector<BasisVector>& basis() const { return basis_; }

  const IndexedVector& column(Generator g, std::size_t idx) {
    auto& table = tables_[static_cast<int>(g)];
    if (table.empty()) build(g, table);
    if (!table[idx]) fail(ErrorCode::TruncationOverflow, "compile workspace exceeded");
    return *table[idx];
  }

 private:
  void build(Generator g, std::vector<std::optional<IndexedVector>>& table) {
    table.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const BasisVector& v = basis_[i];
      if (g == Generator::BPlus && v.m == space_.m_max()) continue;
      IndexedVector col;
      const SparseVector image = apply_generator(g, v, space_);
      for (const auto& [w, c] : image.terms())
        col.emplace(basis_index(w, space_.p()), c);
      table[i] = std::move(col);
    }
  }

  FockParams space_;
  std::vector<BasisVector> basis_;
  std::vector<std::optional<IndexedVector>> tables_[4];
};

void accumulate(IndexedVector& into, const IndexedVector& from, const Scalar& factor) {
  for (const auto& [i, c] : from) {
    auto [it, inserted] = into.try_emplace(i, c * factor);
    if (inserted) continue;
    it->second += c * factor;
    if (it->second.is_zero()) into.erase(it);
  }
}

// Columns of a word's matrix, memoized by suffix so words sharing a tail
// share the work.
class WordEvaluator {
 public:
  WordEvaluator(GeneratorTables& tables, std::size_t domain_size)
      : tables_(tables), domain_size_(domain_size) {}

  const std::vector<IndexedVector>& columns(const std::vector<Generator>& word,
                                            std::size_t start) {
    std::vector<Generator> key(word.begin() + static_cast<std::ptrdiff_t>(start), word.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<IndexedVector> cols(domain_size_);
    if (start == word.size()) {
      for (std::size_t j = 0; j < domain_size_; ++j) cols[j].emplace(j, Scalar(1));
    } else {
      const auto& tail = columns(word, start + 1);
      const Generator g = word[start];
      for (std::size_t j = 0; j < domain_size_; ++j)
        for (const auto& [i, c] : tail[j]) accumulate(cols[j], tables_.column(g, i), c);
    }
    return memo_.emplace(std::move(key), std::move(cols)).first->second;
  }

 private:
  GeneratorTables& tables_;
  std::size_t domain_size_;
  std::map<std::vector<Generator>, std::vector<IndexedVector>> memo_;
};

}  // namespace

OperatorMatrix compile(const OperatorExpr& expr, const FockParams& params) {
  const OperatorExpr flat = expand(expr, params.p());

  int peak = 0;
  int net_max = 0;
  std::vector<std::pair<std::vector<Generator>, Scalar>> words;
  for (const auto& [w, c] : flat.terms()) {
    std::vector<Generator> gens;
    int level = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      level += m_shift(*it);
      peak = std::max(peak, level);
    }
    net_max = std::max(net_max, level);
    for (const auto& s : w) gens.push_back(std::get<Generator>(s));
    words.emplace_back(std::move(gens), c);
  }

  const FockParams workspace = params.with_m_max(params.m_max() + peak);
  GeneratorTables tables(workspace);
  const std::size_t domain_size = basis_size(params);
  WordEvaluator evaluator(tables, domain_size);

  std::vector<IndexedVector> acc(domain_size);
  for (const auto& [word, coeff] : words) {
    const auto& cols = evaluator.columns(word, 0);
    for (std::size_t j = 0; j < domain_size; ++j) accumulate(acc[j], cols[j], coeff);
  }

  std::vector<SparseVector> columns(domain_size);
  for (std::size_t j = 0; j < domain_size; ++j)
    for (const auto& [i, c] : acc[j]) columns[j].add(tables.basis()[i], c);
  return OperatorMatrix(params, params.m_max() + net_max, std::move(columns));
}

OperatorMatrix compile_within(const OperatorExpr& expr, const FockParams& params) {
  OperatorMatrix full = compile(expr, params);
  for (const auto& col : full.columns()) {
    if (col.max_m() > params.m_max())
      fail(ErrorCode::TruncationOverflow,
           "expression maps the window m<=" + std::to_string(params.m_max()) + " outside itself");
  }
  return OperatorMatrix(params, params.m_max(), full.columns());
}

OperatorMatrix closed_form_matrix(DerivedOp op, const FockParams& params) {
  const int raise = op == DerivedOp::QMinus ? 1 : 0;
  const FockParams wide = params.with_m_max(params.m_max() + raise);
  std::vector<SparseVector> columns;
  for (const auto& v : enumerate_basis(params))
    columns.push_back(apply_derived_closed_form(op, v, wide));
  return OperatorMatrix(params, params.m_max() + raise, std::move(columns));
}

}  // namespace pbf
