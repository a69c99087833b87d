#include "pbf/relations.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include "pbf/error.hpp"

namespace pbf {

namespace {

// An expression together with its printed form.
struct Term {
  OperatorExpr expr;
  std::string text;
  std::optional<Scalar> constant = std::nullopt;  // set for multiples of the identity
};

Term sym(Generator g) { return {OperatorExpr(g), to_string(g)}; }
Term sym(DerivedOp d) { return {OperatorExpr(d), to_string(d)}; }
Term zero() { return {OperatorExpr(), "0"}; }
Term one() { return {OperatorExpr::identity(), "1", Scalar(1)}; }

Term comm(const Term& a, const Term& b) {
  return {commutator(a.expr, b.expr), "[" + a.text + "," + b.text + "]"};
}
Term acomm(const Term& a, const Term& b) {
  return {anticommutator(a.expr, b.expr), "{" + a.text + "," + b.text + "}"};
}
Term operator*(const Term& a, const Term& b) { return {a.expr * b.expr, a.text + " " + b.text}; }
Term operator*(const Scalar& c, const Term& a) {
  if (c.is_zero()) return zero();
  if (a.constant) {
    const Scalar k = c * *a.constant;
    return {k * OperatorExpr::identity(), k.to_string(), k};
  }
  std::string prefix;
  if (c == Scalar(-1)) prefix = "-";
  else if (c != Scalar(1)) prefix = c.to_string() + " ";
  return {c * a.expr, prefix + a.text};
}
Term operator*(long c, const Term& a) { return Scalar(c) * a; }
Term operator+(const Term& a, const Term& b) {
  if (a.expr.is_zero() && a.text == "0") return b;
  if (b.expr.is_zero() && b.text == "0") return a;
  if (!b.text.empty() && b.text.front() == '-') return {a.expr + b.expr, a.text + " - " + b.text.substr(1)};
  return {a.expr + b.expr, a.text + " + " + b.text};
}
Term operator-(const Term& a, const Term& b) { return a + (-1) * b; }

class CatalogBuilder {
 public:
  void add(std::string name, const Term& lhs, const Term& rhs, bool vacuum_only = false) {
    std::string text = lhs.text + " = " + rhs.text;
    if (vacuum_only) text += " on |0>";
    out_.push_back({std::move(name), std::move(text), lhs.expr, rhs.expr, vacuum_only});
  }
  std::vector<Identity> take() { return std::move(out_); }

 private:
  std::vector<Identity> out_;
};

std::string two_digits(int k) { return (k < 10 ? "0" : "") + std::to_string(k); }

}  // namespace

int identity_margin(const Identity& identity, int p) {
  int margin = 0;
  for (const OperatorExpr* side : {&identity.lhs, &identity.rhs}) {
    const OperatorExpr flat = expand(*side, p);
    for (const auto& [w, c] : flat.terms()) {
      const auto raising = std::count_if(w.begin(), w.end(), [](const Symbol& s) {
        return std::holds_alternative<Generator>(s) && std::get<Generator>(s) == Generator::BPlus;
      });
      margin = std::max(margin, static_cast<int>(raising));
    }
  }
  return margin;
}

std::vector<Identity> relation_catalog(int p) {
  const Term bp = sym(Generator::BPlus), bm = sym(Generator::BMinus);
  const Term fp = sym(Generator::FPlus), fm = sym(Generator::FMinus);
  const Term nb = sym(DerivedOp::Nb), nf = sym(DerivedOp::Nf), ns = sym(DerivedOp::Ns);
  const Term qp = sym(DerivedOp::QPlus), qm = sym(DerivedOp::QMinus);
  const Term rp = sym(DerivedOp::RPlus), rm = sym(DerivedOp::RMinus);
  const Term bp2 = sym(DerivedOp::BPlusSq), bm2 = sym(DerivedOp::BMinusSq);
  const Term pid = Scalar(p) * one();

  CatalogBuilder cat;

  // Trilinear relations mixing b and f.
  const std::vector<std::pair<Term, Term>> mixed = {
      {comm(acomm(bp, bp), fm), zero()},         {comm(comm(fp, fm), bm), zero()},
      {comm(acomm(bm, bm), fm), zero()},         {comm(acomm(bp, bm), fm), zero()},
      {comm(acomm(fm, bp), bm), -2 * fm},        {acomm(acomm(bm, fp), fm), 2 * bm},
      {comm(acomm(bm, fm), bp), 2 * fm},         {acomm(acomm(fm, bm), fp), 2 * bm},
      {comm(acomm(bm, bp), fp), zero()},         {comm(comm(fm, fp), bp), zero()},
      {comm(acomm(fp, bm), bp), 2 * fp},         {acomm(acomm(bp, fm), fp), 2 * bp},
      {comm(acomm(bp, fp), bm), -2 * fp},        {acomm(acomm(fp, bp), fm), 2 * bp},
      {comm(acomm(fm, bm), bm), zero()},         {comm(acomm(fm, bp), bp), zero()},
      {comm(acomm(bp, bp), fp), zero()},         {comm(acomm(bm, bm), fp), zero()},
      {comm(acomm(fp, bp), bp), zero()},         {comm(acomm(fp, bm), bm), zero()},
      {acomm(acomm(bm, fm), fm), zero()},        {acomm(acomm(bm, fp), fp), zero()},
      {acomm(acomm(bp, fp), fp), zero()},        {acomm(acomm(bp, fm), fm), zero()},
  };
  for (std::size_t i = 0; i < mixed.size(); ++i)
    cat.add("mixed." + two_digits(static_cast<int>(i) + 1), mixed[i].first, mixed[i].second);

  // Trilinear relations within one family.
  const std::vector<std::pair<Term, Term>> pure = {
      {comm(bm, acomm(bp, bm)), 2 * bm},  {comm(bp, acomm(bp, bp)), zero()},
      {comm(bm, acomm(bm, bm)), zero()},  {comm(bm, acomm(bp, bp)), 4 * bp},
      {comm(bp, acomm(bm, bm)), -4 * bm}, {comm(fm, comm(fp, fm)), 2 * fm},
      {comm(bp, acomm(bm, bp)), -2 * bp}, {comm(fp, comm(fm, fp)), 2 * fp},
  };
  for (std::size_t i = 0; i < pure.size(); ++i)
    cat.add("pure." + two_digits(static_cast<int>(i) + 1), pure[i].first, pure[i].second);

  // The same relations written through Q-, Q+ and the number operators.
  cat.add("rewrite.01", comm(bm, qm), fm);
  cat.add("rewrite.02", comm(bm, qp), zero());
  cat.add("rewrite.03", acomm(fm, qp), bm);
  cat.add("rewrite.04", acomm(fm, qm), zero());
  cat.add("rewrite.05", comm(bp, qp), -1 * fp);
  cat.add("rewrite.06", comm(bp, qm), zero());
  cat.add("rewrite.07", acomm(fp, qm), bp);
  cat.add("rewrite.08", acomm(fp, qp), zero());
  cat.add("rewrite.09", comm(nb, fp), zero());
  cat.add("rewrite.10", comm(nf, bp), zero());

  // Brackets of the Lie superalgebra spanned by {b,b}, [f,f] and {f,b},
  // single mode, every choice of the four signs.
  const auto b = [&](int s) { return s > 0 ? bp : bm; };
  const auto f = [&](int s) { return s > 0 ? fp : fm; };
  const auto sq = [](int a, int c) { return Scalar::ratio((a - c) * (a - c), 2); };
  for (int mask = 0; mask < 16; ++mask) {
    const int xi = (mask & 8) ? -1 : 1, eta = (mask & 4) ? -1 : 1;
    const int eps = (mask & 2) ? -1 : 1, ph = (mask & 1) ? -1 : 1;
    std::string signs;
    for (int s : {xi, eta, eps, ph}) signs += s > 0 ? '+' : '-';
    const std::string tag = "." + signs;

    cat.add("lsa.1" + tag, comm(acomm(b(xi), b(eta)), acomm(b(eps), b(ph))),
            (eps - eta) * acomm(b(xi), b(ph)) + (eps - xi) * acomm(b(eta), b(ph)) +
                (ph - eta) * acomm(b(xi), b(eps)) + (ph - xi) * acomm(b(eta), b(eps)));
    cat.add("lsa.2" + tag, comm(acomm(b(xi), b(eta)), comm(f(eps), f(ph))), zero());
    cat.add("lsa.3" + tag, comm(acomm(b(xi), b(eta)), acomm(f(eps), b(ph))),
            (ph - eta) * acomm(f(eps), b(xi)) + (ph - xi) * acomm(f(eps), b(eta)));
    cat.add("lsa.4" + tag, comm(comm(f(xi), f(eta)), comm(f(eps), f(ph))),
            sq(ph, eta) * comm(f(eps), f(xi)) + sq(ph, xi) * comm(f(eta), f(eps)) +
                sq(eps, eta) * comm(f(xi), f(ph)) + sq(eps, xi) * comm(f(ph), f(eta)));
    cat.add("lsa.5" + tag, comm(comm(f(xi), f(eta)), acomm(f(eps), b(ph))),
            sq(eps, eta) * acomm(f(xi), b(ph)) - sq(eps, xi) * acomm(f(eta), b(ph)));
    cat.add("lsa.6" + tag, acomm(acomm(f(xi), b(eta)), acomm(f(eps), b(ph))),
            (ph - eta) * comm(f(xi), f(eps)) + sq(eps, xi) * acomm(b(eta), b(ph)));
  }

  // gl(1/1) inside that superalgebra.
  const Term e_b = acomm(bp, bm), e_f = comm(fp, fm);
  const Term up = acomm(fp, bm), down = acomm(fm, bp);
  cat.add("glmn.1", comm(e_b, e_b), 2 * e_b - 2 * e_b);
  cat.add("glmn.2", comm(e_b, e_f), zero());
  cat.add("glmn.3", comm(e_f, e_f), 2 * e_f - 2 * e_f);
  cat.add("glmn.4a", acomm(up, up), zero());
  cat.add("glmn.4b", acomm(down, down), zero());
  cat.add("glmn.5", acomm(up, down), 2 * comm(fp, fm) + 2 * acomm(bp, bm));
  cat.add("glmn.6", comm(e_b, up), -2 * up);
  cat.add("glmn.7", comm(e_b, down), 2 * down);
  cat.add("glmn.8", comm(e_f, up), 2 * up);
  cat.add("glmn.9", comm(e_f, down), -2 * down);

  // Number operators against powers of the creators.
  for (int k = 1; k <= 3; ++k) {
    Term bpk = bp, fpk = fp;
    for (int i = 1; i < k; ++i) {
      bpk = bpk * bp;
      fpk = fpk * fp;
    }
    cat.add("derived.nb-bplus-power-" + std::to_string(k), comm(nb, bpk), k * bpk);
    cat.add("derived.nf-fplus-power-" + std::to_string(k), comm(nf, fpk), k * fpk);
  }
  cat.add("derived.nb-rplus", comm(nb, rp), rp);
  cat.add("derived.nf-rplus", comm(nf, rp), rp);
  cat.add("derived.qminus-rplus", acomm(qm, rp), bp2);
  cat.add("derived.qplus-rplus", acomm(qp, rp), zero());

  // Brackets of the subalgebras used by the decomposition presets.
  cat.add("gl11.nb-qplus", comm(nb, qp), -1 * qp);
  cat.add("gl11.nb-qminus", comm(nb, qm), qm);
  cat.add("gl11.nf-qplus", comm(nf, qp), qp);
  cat.add("gl11.nf-qminus", comm(nf, qm), -1 * qm);
  cat.add("gl11.qplus-qminus", acomm(qp, qm), nb + nf);
  cat.add("gl11.nb-nf", comm(nb, nf), zero());

  cat.add("l00l01.nb-bplus-sq", comm(nb, bp2), 2 * bp2);
  cat.add("l00l01.nb-bminus-sq", comm(nb, bm2), -2 * bm2);
  cat.add("l00l01.nf-bplus-sq", comm(nf, bp2), zero());
  cat.add("l00l01.nf-bminus-sq", comm(nf, bm2), zero());
  cat.add("l00l01.bplus-sq-bminus-sq", comm(bp2, bm2), -4 * nb - 2 * pid);
  cat.add("l00l01.bplus-sq-qplus", comm(bp2, qp), -2 * rp);
  cat.add("l00l01.bplus-sq-qminus", comm(bp2, qm), zero());
  cat.add("l00l01.bplus-sq-rplus", comm(bp2, rp), zero());
  cat.add("l00l01.bplus-sq-rminus", comm(bp2, rm), -2 * qm);
  cat.add("l00l01.bminus-sq-qplus", comm(bm2, qp), zero());
  cat.add("l00l01.bminus-sq-qminus", comm(bm2, qm), 2 * rm);
  cat.add("l00l01.bminus-sq-rplus", comm(bm2, rp), 2 * qp);
  cat.add("l00l01.bminus-sq-rminus", comm(bm2, rm), zero());
  cat.add("l00l01.nb-rplus", comm(nb, rp), rp);
  cat.add("l00l01.nb-rminus", comm(nb, rm), -1 * rm);
  cat.add("l00l01.nf-rplus", comm(nf, rp), rp);
  cat.add("l00l01.nf-rminus", comm(nf, rm), -1 * rm);
  cat.add("l00l01.qplus-rminus", acomm(qp, rm), bm2);
  cat.add("l00l01.qminus-rplus", acomm(qm, rp), bp2);
  cat.add("l00l01.qplus-rplus", acomm(qp, rp), zero());
  cat.add("l00l01.qminus-rminus", acomm(qm, rm), zero());
  cat.add("l00l01.rplus-rminus", acomm(rp, rm), nb - nf + pid);

  cat.add("osp12.bplus-bminus", acomm(bp, bm), 2 * nb + pid);
  cat.add("osp12.nb-bplus", comm(nb, bp), bp);
  cat.add("osp12.nb-bminus", comm(nb, bm), -1 * bm);
  cat.add("osp12.bplus-sq-bminus", comm(bp2, bm), -2 * bp);
  cat.add("osp12.bminus-sq-bplus", comm(bm2, bp), 2 * bm);

  cat.add("sp2.nb-bplus-sq", comm(nb, bp2), 2 * bp2);
  cat.add("sp2.nb-bminus-sq", comm(nb, bm2), -2 * bm2);
  cat.add("sp2.bplus-sq-bminus-sq", comm(bp2, bm2), -4 * nb - 2 * pid);

  cat.add("so3.nf-fplus", comm(nf, fp), fp);
  cat.add("so3.nf-fminus", comm(nf, fm), -1 * fm);
  cat.add("so3.fplus-fminus", comm(fp, fm), 2 * nf - pid);

  cat.add("nilpotency.qplus", qp * qp, zero());
  cat.add("nilpotency.qminus", qm * qm, zero());
  cat.add("nilpotency.rplus", rp * rp, zero());
  cat.add("nilpotency.rminus", rm * rm, zero());

  cat.add("csco.nb-nf", comm(nb, nf), zero());
  cat.add("csco.nb-ns", comm(nb, ns), zero());
  cat.add("csco.nf-ns", comm(nf, ns), zero());

  cat.add("fock.b-minus-vacuum", bm, zero(), true);
  cat.add("fock.f-minus-vacuum", fm, zero(), true);
  cat.add("fock.b-minus-b-plus", bm * bp, pid, true);
  cat.add("fock.f-minus-f-plus", fm * fp, pid, true);
  cat.add("fock.b-minus-f-plus", bm * fp, zero(), true);
  cat.add("fock.f-minus-b-plus", fm * bp, zero(), true);

  return cat.take();
}

std::vector<Identity> select_relations(const std::vector<Identity>& catalog,
                                       const std::vector<std::string>& selectors) {
  std::vector<bool> chosen(catalog.size(), false);
  for (const auto& sel : selectors) {
    bool matched = false;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      const std::string& name = catalog[i].name;
      if (name == sel || name.starts_with(sel + ".")) {
        chosen[i] = true;
        matched = true;
      }
    }
    if (!matched) fail(ErrorCode::UnknownRelation, "no relation matches '" + sel + "'");
  }
  std::vector<Identity> out;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (chosen[i]) out.push_back(catalog[i]);
  return out;
}

namespace {

VerificationReport start_report(const Identity& identity, const FockParams& params) {
  VerificationReport report;
  report.relation = identity.name;
  report.text = identity.text;
  report.p = params.p();
  report.m_max = params.m_max();
  report.margin = identity_margin(identity, params.p());
  if (params.m_max() < report.margin)
    fail(ErrorCode::TruncationTooSmall,
         identity.name + " needs m_max >= " + std::to_string(report.margin) + ", got " +
             std::to_string(params.m_max()));
  return report;
}

}  // namespace

VerificationReport verify_relation(const Identity& identity, const FockParams& params) {
  VerificationReport report = start_report(identity, params);
  const FockParams interior = params.with_m_max(identity.vacuum_only ? 0 : params.m_max() - report.margin);
  const OperatorMatrix difference = compile(identity.lhs - identity.rhs, interior);
  const auto basis = enumerate_basis(interior);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (identity.vacuum_only && basis[i] != phi(0, 0)) continue;
    ++report.checked;
    const SparseVector& residual = difference.columns()[i];
    if (!residual.is_zero()) {
      report.pass = false;
      report.failures.push_back({SparseVector(basis[i]), residual});
    }
  }
  return report;
}

VerificationReport verify_on_vectors(const Identity& identity, const std::vector<SparseVector>& vectors,
                                     const FockParams& params) {
  VerificationReport report = start_report(identity, params);
  const FockParams interior = params.with_m_max(params.m_max() - report.margin);
  const OperatorMatrix difference = compile(identity.lhs - identity.rhs, interior);
  for (const auto& v : vectors) {
    ++report.checked;
    const SparseVector residual = difference.apply(v);
    if (!residual.is_zero()) {
      report.pass = false;
      report.failures.push_back({v, residual});
    }
  }
  return report;
}

std::vector<VerificationReport> verify_all(const std::vector<Identity>& identities,
                                           const FockParams& params, int jobs) {
  std::vector<VerificationReport> reports(identities.size());
  std::vector<std::exception_ptr> errors(identities.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < identities.size(); i = next++) {
      try {
        reports[i] = verify_relation(identities[i], params);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, identities.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

}  // namespace pbf
