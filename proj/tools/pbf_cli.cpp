// Command-line front end over the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbf/pbf.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Options {
  int p = 2;
  int m_max = 8;
  std::string format = "json";
  std::string out;
  int jobs = 1;
  std::string relations;
  std::string preset;
  std::string spec;
  int m = 0;
  int n = 0;
  bool list = false;
};

struct Failure {
  std::string status;
  std::string message;
  nlohmann::json details = nullptr;
};

using Context = std::unique_ptr<pbf_context, decltype(&pbf_context_destroy)>;
using Spec = std::unique_ptr<pbf_spec, decltype(&pbf_spec_destroy)>;
using Text = std::unique_ptr<char, decltype(&pbf_string_free)>;

int report_error(const Failure& f) {
  nlohmann::ordered_json doc{{"error", f.status}, {"message", f.message}};
  if (!f.details.is_null()) doc["violations"] = f.details;
  std::cerr << doc.dump() << "\n";
  return kExitError;
}

void check(pbf_status status) {
  if (status != PBF_OK) throw Failure{pbf_status_name(status), pbf_last_error()};
}

Context make_context(const Options& o) {
  pbf_context* ctx = nullptr;
  check(pbf_context_create(o.p, o.m_max, &ctx));
  return {ctx, pbf_context_destroy};
}

// A built-in name or a path to a JSON file. Invalid specs are configuration
// errors, not verification failures.
Spec load_spec(const std::string& source) {
  pbf_spec* raw = nullptr;
  if (source == "gl11") check(pbf_spec_builtin("gl11", &raw));
  else check(pbf_spec_from_file(source.c_str(), &raw));
  Spec spec(raw, pbf_spec_destroy);
  int valid = 0;
  char* violations = nullptr;
  check(pbf_spec_validate(spec.get(), &valid, &violations));
  Text text(violations, pbf_string_free);
  if (!valid)
    throw Failure{pbf_status_name(PBF_ERR_SPEC_INVALID), source + " is not a valid superalgebra spec",
                  nlohmann::json::parse(text.get())};
  return spec;
}

pbf_format format_of(const Options& o) { return o.format == "csv" ? PBF_FORMAT_CSV : PBF_FORMAT_JSON; }

// Writes next to the target and renames, so readers never see a partial file.
void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Failure{"Io", "cannot open " + tmp.string() + " for writing"};
    os << text;
    if (!os.flush()) throw Failure{"Io", "write to " + tmp.string() + " failed"};
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{"Io", "cannot move output into " + path};
  }
}

int finish(char* raw, int passed, const Options& o) {
  Text text(raw, pbf_string_free);
  write_output(text.get(), o.out);
  return passed ? kExitPass : kExitFail;
}

int run_basis(const Options& o) {
  Context ctx = make_context(o);
  char* out = nullptr;
  check(pbf_basis_report(ctx.get(), format_of(o), &out));
  return finish(out, 1, o);
}

int run_verify(const Options& o) {
  char* out = nullptr;
  if (o.list) {
    check(pbf_list_relations(o.p, &out));
    return finish(out, 1, o);
  }
  Context ctx = make_context(o);
  int passed = 0;
  check(pbf_verify_report(ctx.get(), o.relations.c_str(), o.jobs, format_of(o), &out, &passed));
  return finish(out, passed, o);
}

int run_decompose(const Options& o) {
  Context ctx = make_context(o);
  char* out = nullptr;
  int passed = 0;
  if (!o.spec.empty()) {
    Spec spec = load_spec(o.spec);
    check(pbf_decompose_report(ctx.get(), "diagonal", spec.get(), format_of(o), &out, &passed));
  } else {
    check(pbf_decompose_report(ctx.get(), o.preset.c_str(), nullptr, format_of(o), &out, &passed));
  }
  return finish(out, passed, o);
}

int run_realize(const Options& o) {
  Context ctx = make_context(o);
  Spec spec = load_spec(o.spec.empty() ? o.preset : o.spec);
  char* out = nullptr;
  int passed = 0;
  check(pbf_realize_report(ctx.get(), spec.get(), o.jobs, format_of(o), &out, &passed));
  return finish(out, passed, o);
}

int run_gram(const Options& o) {
  Context ctx = make_context(o);
  char* out = nullptr;
  int passed = 0;
  check(pbf_gram_report(ctx.get(), o.m, o.n, format_of(o), &out, &passed));
  return finish(out, passed, o);
}

int run_csco(const Options& o) {
  Context ctx = make_context(o);
  char* out = nullptr;
  int passed = 0;
  check(pbf_csco_report(ctx.get(), format_of(o), &out, &passed));
  return finish(out, passed, o);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "order of the representation (p >= 1)");
  sub->add_option("--mmax", o.m_max, "largest bosonic level in the window");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "output file (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fock-space representations of the parabose-parafermi superalgebra"};
  app.require_subcommand(1);
  Options o;

  auto* basis = app.add_subcommand("basis", "list the basis of the window");
  add_common(basis, o);

  auto* verify = app.add_subcommand("verify", "check the relation catalog");
  add_common(verify, o);
  verify->add_option("--relations", o.relations, "comma-separated names or family prefixes (default: all)");
  verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--list", o.list, "print the catalog instead of checking it");

  auto* decompose = app.add_subcommand("decompose", "split the window into invariant subspaces");
  add_common(decompose, o);
  auto* d_preset = decompose->add_option("--preset", o.preset, "generator set")
                       ->check(CLI::IsMember({"gl11", "l00l01", "osp12", "sp2", "so3", "so2", "diagonal"}));
  auto* d_spec = decompose->add_option("--spec", o.spec, "spec file or 'gl11' for the diagonal families");
  d_preset->excludes(d_spec);
  d_spec->excludes(d_preset);

  auto* realize = app.add_subcommand("realize", "realize a superalgebra and check its brackets");
  add_common(realize, o);
  realize->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  auto* r_preset = realize->add_option("--preset", o.preset, "built-in spec")->check(CLI::IsMember({"gl11"}));
  auto* r_spec = realize->add_option("--spec", o.spec, "spec JSON file");
  r_preset->excludes(r_spec);
  r_spec->excludes(r_preset);

  auto* gram = app.add_subcommand("gram", "Gram matrix and orthogonal basis of one cell");
  add_common(gram, o);
  gram->add_option("--m", o.m, "bosonic level")->required();
  gram->add_option("--n", o.n, "fermionic level")->required();

  auto* csco = app.add_subcommand("csco", "check the complete set of commuting operators");
  add_common(csco, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error({"usage", e.what()});
  }

  try {
    if (*basis) return run_basis(o);
    if (*verify) return run_verify(o);
    if (*decompose) {
      if (o.preset.empty() && o.spec.empty()) return report_error({"usage", "decompose needs --preset or --spec"});
      return run_decompose(o);
    }
    if (*realize) {
      if (o.preset.empty() && o.spec.empty()) return report_error({"usage", "realize needs --preset or --spec"});
      return run_realize(o);
    }
    if (*gram) return run_gram(o);
    if (*csco) return run_csco(o);
  } catch (const Failure& f) {
    return report_error(f);
  } catch (const std::exception& e) {
    return report_error({"internal", e.what()});
  }
  return kExitError;
}
