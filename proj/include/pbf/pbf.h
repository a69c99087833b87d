#ifndef PBF_PBF_H
#define PBF_PBF_H

/* C interface to the exact Fock-space engine. Every function returns a
 * pbf_status; on failure pbf_last_error() holds a message for the calling
 * thread. Strings handed out through `out` parameters are owned by the
 * caller and released with pbf_string_free. */

#if defined(__GNUC__)
#define PBF_API __attribute__((visibility("default")))
#else
#define PBF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pbf_status {
  PBF_OK = 0,
  PBF_ERR_INVALID_ARGUMENT = 1,
  PBF_ERR_TRUNCATION_OVERFLOW = 2,
  PBF_ERR_TRUNCATION_TOO_SMALL = 3,
  PBF_ERR_SPEC_INVALID = 4,
  PBF_ERR_UNKNOWN_ELEMENT = 5,
  PBF_ERR_UNKNOWN_RELATION = 6,
  PBF_ERR_UNKNOWN_PRESET = 7,
  PBF_ERR_IO = 8,
  PBF_ERR_PARSE = 9,
  PBF_ERR_DIMENSION_ZERO = 10,
  PBF_ERR_GRAM_DEGENERATE = 11,
  PBF_ERR_INTERNAL = 99
} pbf_status;

typedef enum pbf_format { PBF_FORMAT_JSON = 0, PBF_FORMAT_CSV = 1 } pbf_format;

typedef struct pbf_context pbf_context;
typedef struct pbf_spec pbf_spec;

PBF_API const char* pbf_status_name(pbf_status status);
PBF_API const char* pbf_last_error(void);
PBF_API void pbf_string_free(char* s);

/* Window 0 <= m <= m_max over the representation of order p >= 1. */
PBF_API pbf_status pbf_context_create(int p, int m_max, pbf_context** out);
PBF_API void pbf_context_destroy(pbf_context* ctx);

PBF_API pbf_status pbf_basis_report(const pbf_context* ctx, pbf_format fmt, char** out);

/* `relations` is a comma-separated list of names or family prefixes; NULL or
 * "" selects the whole catalog. `passed` receives 1 when every check held. */
PBF_API pbf_status pbf_verify_report(const pbf_context* ctx, const char* relations, int jobs, pbf_format fmt, char** out,
                             int* passed);
PBF_API pbf_status pbf_list_relations(int p, char** out);

/* `preset` is one of gl11, l00l01, osp12, sp2, so3, so2, or "diagonal" for
 * the diagonal families under `spec` (the built-in gl(1|1) when NULL). */
PBF_API pbf_status pbf_decompose_report(const pbf_context* ctx, const char* preset, const pbf_spec* spec, pbf_format fmt,
                                char** out, int* passed);

PBF_API pbf_status pbf_spec_from_json(const char* text, pbf_spec** out);
PBF_API pbf_status pbf_spec_from_file(const char* path, pbf_spec** out);
/* Only "gl11" is built in. */
PBF_API pbf_status pbf_spec_builtin(const char* name, pbf_spec** out);
PBF_API void pbf_spec_destroy(pbf_spec* spec);
/* `valid` receives 1 or 0; `violations` (may be NULL) receives a JSON array of
 * messages. */
PBF_API pbf_status pbf_spec_validate(const pbf_spec* spec, int* valid, char** violations);

/* An invalid spec is reported with passed = 0 and PBF_OK. */
PBF_API pbf_status pbf_realize_report(const pbf_context* ctx, const pbf_spec* spec, int jobs, pbf_format fmt, char** out,
                              int* passed);
PBF_API pbf_status pbf_gram_report(const pbf_context* ctx, int m, int n, pbf_format fmt, char** out, int* passed);
PBF_API pbf_status pbf_csco_report(const pbf_context* ctx, pbf_format fmt, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif
