#ifndef CUSPFORGE_H
#define CUSPFORGE_H

/* C interface to the cuspforge shared library.
 *
 * Every function returns a cf_status. On failure a message is available
 * from cf_last_error() on the calling thread until the next call. Strings
 * returned through char** belong to the caller and are released with
 * cf_string_free. Integers cross the boundary as decimal strings. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CF_API __declspec(dllexport)
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_PARSE,
  CF_ERR_INVALID_SEQUENCE,
  CF_ERR_NOT_REDUCIBLE,
  CF_ERR_DEGENERATE_REMAINDER,
  CF_ERR_NOT_REALIZABLE,
  CF_ERR_NOT_STANDARD,
  CF_ERR_INCONSISTENT,
  CF_ERR_INVALID_ARGUMENT,
  CF_ERR_ENTRY_BELOW_TWO,
  CF_ERR_NOT_CONTRACTIBLE,
  CF_ERR_NOT_A_FIBER,
  CF_ERR_NOT_COPRIME,
  CF_ERR_PARAM_OUT_OF_DOMAIN,
  CF_ERR_TOO_LARGE,
  CF_ERR_NULL_ARGUMENT,
  CF_ERR_OUT_OF_MEMORY,
  CF_ERR_INTERNAL
} cf_status;

/* Cusp notations understood by cf_cusp_parse and cf_cusp_format. */
typedef enum cf_repr {
  CF_REPR_HN = 0,     /* "6/4,2/3" (raw input is standardized) */
  CF_REPR_MULT,       /* "4,2,2,2" or "(4,(2)_3)"              */
  CF_REPR_CHAR,       /* "4;6,9"                               */
  CF_REPR_PUISEUX,    /* "(3,2),(9,2)"                         */
  CF_REPR_ZARISKI,    /* "(2,3),(2,3)"                         */
  CF_REPR_SEMIGROUP   /* output only: "<4,6,15>"               */
} cf_repr;

typedef enum cf_format { CF_FORMAT_TEXT = 0, CF_FORMAT_JSON, CF_FORMAT_DOT } cf_format;

typedef enum cf_ledger_mode { CF_LEDGER_GENERIC = 0, CF_LEDGER_CSTST } cf_ledger_mode;

typedef struct cf_cusp cf_cusp;
typedef struct cf_curve cf_curve;
typedef struct cf_curve_list cf_curve_list;

CF_API const char* cf_version(void);
CF_API const char* cf_status_name(cf_status status);
CF_API const char* cf_last_error(void);
CF_API void cf_string_free(char* s);

/* ---- single cusps ---- */

CF_API cf_status cf_cusp_parse(cf_repr repr, const char* text, cf_cusp** out);
CF_API void cf_cusp_free(cf_cusp* cusp);
CF_API cf_status cf_cusp_format(const cf_cusp* cusp, cf_repr repr, char** out);
/* Full invariant record; text or JSON. */
CF_API cf_status cf_cusp_invariants(const cf_cusp* cusp, cf_format format, char** out);
/* Minimal log resolution graph; text, JSON or DOT. */
CF_API cf_status cf_cusp_resolution(const cf_cusp* cusp, cf_format format, char** out);

/* ---- curves ---- */

/* "A(2,2,1)", "G(3)", ... */
CF_API cf_status cf_curve_from_family(const char* spec, cf_curve** out);
CF_API cf_status cf_curve_from_json(const char* json, cf_curve** out);
/* Hand-entered curve: degree, gamma = -E^2 and n raw HN strings. */
CF_API cf_status cf_curve_new(const char* degree, const char* gamma, const char* const* hn, size_t n, cf_curve** out);
CF_API void cf_curve_free(cf_curve* curve);
CF_API cf_status cf_curve_format(const cf_curve* curve, cf_format format, char** out);
/* Full arithmetic audit; *all_pass is set to 1 or 0. */
CF_API cf_status cf_curve_audit(const cf_curve* curve, cf_format format, int* all_pass, char** out);
/* K.(K+D) as a decimal string. */
CF_API cf_status cf_curve_kkd(const cf_curve* curve, char** out);

/* ---- enumeration ---- */

/* threads = 0 means one worker. */
CF_API cf_status cf_enumerate(uint64_t max_degree, unsigned threads, cf_curve_list** out);
CF_API size_t cf_curve_list_size(const cf_curve_list* list);
/* Borrowed pointer, valid while the list lives; NULL when out of range. */
CF_API const cf_curve* cf_curve_list_get(const cf_curve_list* list, size_t index);
CF_API cf_status cf_curve_list_format(const cf_curve_list* list, cf_format format, char** out);
/* Number of pairs of records with the same standardized cusp multiset, and
 * a text listing of them. */
CF_API cf_status cf_curve_list_distinctness(const cf_curve_list* list, size_t* collisions, char** out);
CF_API void cf_curve_list_free(cf_curve_list* list);

/* ---- fibration ledgers ---- */

/* chis may be NULL (n_chi ignored). */
CF_API cf_status cf_ledger_audit(long h, long nu, const long* sigmas, size_t n_sigma, const long* chis, size_t n_chi,
                                 cf_ledger_mode mode, cf_format format, int* all_pass, char** out);

#ifdef __cplusplus
}
#endif

#endif
