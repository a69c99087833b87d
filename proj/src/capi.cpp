#include "pbf/pbf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include <json.hpp>

#include "pbf/error.hpp"
#include "pbf/report.hpp"

struct pbf_context {
  pbf::FockParams params;
  pbf::InnerProductContext inner;

  explicit pbf_context(pbf::FockParams p) : params(p), inner(p) {}
};

struct pbf_spec {
  pbf::SuperAlgebraSpec spec;
};

namespace {

thread_local std::string last_error;

pbf_status set_error(pbf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
pbf_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PBF_OK;
  } catch (const pbf::Error& e) {
    return set_error(static_cast<pbf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PBF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PBF_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

pbf::Format to_format(pbf_format fmt) {
  switch (fmt) {
    case PBF_FORMAT_JSON: return pbf::Format::Json;
    case PBF_FORMAT_CSV: return pbf::Format::Csv;
  }
  pbf::fail(pbf::ErrorCode::InvalidArgument, "unknown output format");
}

void emit(const pbf::Rendered& r, char** out, int* passed) {
  *out = copy_string(r.text);
  if (passed) *passed = r.pass ? 1 : 0;
}

void require(const void* ptr, const char* what) {
  if (!ptr) pbf::fail(pbf::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

std::vector<std::string> split_list(const char* csv) {
  std::vector<std::string> out;
  if (!csv) return out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

extern "C" {

const char* pbf_status_name(pbf_status status) {
  if (status == PBF_OK) return "ok";
  if (status == PBF_ERR_INTERNAL) return "internal";
  if (status >= PBF_ERR_INVALID_ARGUMENT && status <= PBF_ERR_GRAM_DEGENERATE)
    return pbf::error_code_name(static_cast<pbf::ErrorCode>(status));
  return "unknown";
}

const char* pbf_last_error(void) { return last_error.c_str(); }

void pbf_string_free(char* s) { std::free(s); }

pbf_status pbf_context_create(int p, int m_max, pbf_context** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pbf_context(pbf::FockParams(p, m_max));
  });
}

void pbf_context_destroy(pbf_context* ctx) { delete ctx; }

pbf_status pbf_basis_report(const pbf_context* ctx, pbf_format fmt, char** out) {
  return guarded([&] {
    require(ctx, "context");
    require(out, "out");
    emit(pbf::basis_report(ctx->params, to_format(fmt)), out, nullptr);
  });
}

pbf_status pbf_verify_report(const pbf_context* ctx, const char* relations, int jobs, pbf_format fmt, char** out,
                             int* passed) {
  return guarded([&] {
    require(ctx, "context");
    require(out, "out");
    emit(pbf::verify_report(ctx->params, split_list(relations), jobs, to_format(fmt)), out, passed);
  });
}

pbf_status pbf_list_relations(int p, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_string(pbf::relation_list(pbf::FockParams(p, 0).p()));
  });
}

pbf_status pbf_decompose_report(const pbf_context* ctx, const char* preset, const pbf_spec* spec, pbf_format fmt,
                                char** out, int* passed) {
  return guarded([&] {
    require(ctx, "context");
    require(preset, "preset");
    require(out, "out");
    const pbf::SuperAlgebraSpec s = spec ? spec->spec : pbf::gl11_defining_spec();
    emit(pbf::decompose_report(ctx->params, preset, s, to_format(fmt)), out, passed);
  });
}

pbf_status pbf_spec_from_json(const char* text, pbf_spec** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new pbf_spec{pbf::spec_from_json(text)};
  });
}

pbf_status pbf_spec_from_file(const char* path, pbf_spec** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new pbf_spec{pbf::spec_from_file(path)};
  });
}

pbf_status pbf_spec_builtin(const char* name, pbf_spec** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    if (std::string(name) != "gl11")
      pbf::fail(pbf::ErrorCode::UnknownPreset, "no built-in spec named '" + std::string(name) + "'");
    *out = new pbf_spec{pbf::gl11_defining_spec()};
  });
}

void pbf_spec_destroy(pbf_spec* spec) { delete spec; }

pbf_status pbf_spec_validate(const pbf_spec* spec, int* valid, char** violations) {
  return guarded([&] {
    require(spec, "spec");
    require(valid, "valid");
    const pbf::ValidationReport report = pbf::validate_spec(spec->spec);
    *valid = report.valid ? 1 : 0;
    if (violations) *violations = copy_string(nlohmann::json(report.violations).dump());
  });
}

pbf_status pbf_realize_report(const pbf_context* ctx, const pbf_spec* spec, int jobs, pbf_format fmt, char** out,
                              int* passed) {
  return guarded([&] {
    require(ctx, "context");
    require(spec, "spec");
    require(out, "out");
    emit(pbf::realize_report(ctx->params, spec->spec, jobs, to_format(fmt)), out, passed);
  });
}

pbf_status pbf_gram_report(const pbf_context* ctx, int m, int n, pbf_format fmt, char** out, int* passed) {
  return guarded([&] {
    require(ctx, "context");
    require(out, "out");
    emit(pbf::gram_report(ctx->inner, m, n, to_format(fmt)), out, passed);
  });
}

pbf_status pbf_csco_report(const pbf_context* ctx, pbf_format fmt, char** out, int* passed) {
  return guarded([&] {
    require(ctx, "context");
    require(out, "out");
    emit(pbf::csco_report(ctx->inner, to_format(fmt)), out, passed);
  });
}

}  // extern "C"
