#pragma once

#include <string>
#include <vector>

#include "pbf/decomposition.hpp"
#include "pbf/orthobasis.hpp"

namespace pbf {

enum class Format { Json, Csv };

/// Rendered report plus whether every check in it passed.
struct Rendered {
  std::string text;
  bool pass = true;
};

Rendered basis_report(const FockParams& params, Format format);

/// `selectors` empty means the whole catalog.
Rendered verify_report(const FockParams& params, const std::vector<std::string>& selectors, int jobs,
                       Format format);

/// JSON array of {"name", "text"} for the catalog of order p.
std::string relation_list(int p);

/// Any preset from preset_names(), or "diagonal" for the diagonal families
/// under `spec`.
Rendered decompose_report(const FockParams& params, const std::string& preset_name,
                          const SuperAlgebraSpec& spec, Format format);

/// Diagonal families under the realized action of `spec`.
Rendered diagonal_report(const FockParams& params, const SuperAlgebraSpec& spec, Format format);

/// Validation, realized operators and bracket preservation. An invalid spec
/// yields a failing report rather than an exception.
Rendered realize_report(const FockParams& params, const SuperAlgebraSpec& spec, int jobs, Format format);

Rendered gram_report(const InnerProductContext& ctx, int m, int n, Format format);

Rendered csco_report(const InnerProductContext& ctx, Format format);

}  // namespace pbf
