/* C interface to the reactive contract calculator.
 *
 * Every handle is opaque and owned by the caller; free it with the matching
 * rdc_*_free. Functions returning int report an rdc_status. On failure the
 * calling thread's last error message (and source position, for syntax
 * errors) is available until the next failing call on that thread.
 * Strings returned by accessors live as long as the handle they came from. */
#ifndef RDC_H
#define RDC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RDC_API __declspec(dllexport)
#else
#define RDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdc_status {
  RDC_OK = 0,
  RDC_NOT_A_PREFIX = 1,
  RDC_ALPHABET_MISMATCH = 2,
  RDC_EMPTY_FAMILY = 3,
  RDC_NOT_MONOTONE = 4,
  RDC_NOT_RR_HEALTHY = 5,
  RDC_NOT_RC = 6,
  RDC_NOT_SRD_HEALTHY = 7,
  RDC_NOT_H_HEALTHY = 8,
  RDC_NOT_N_HEALTHY = 9,
  RDC_PERI_MENTIONS_FINAL_STATE = 10,
  RDC_POST_CONSTRAINS_REFUSAL = 11,
  RDC_NOT_PRODUCTIVE = 12,
  RDC_MERGE_NOT_SYMMETRIC = 13,
  RDC_SYNTAX_ERROR = 14,
  RDC_UNDECLARED = 15,
  RDC_ALPHABET_TOO_LARGE = 16,
  RDC_UNKNOWN_SUITE = 17,
  RDC_INVALID_ARGUMENT = 18,
  RDC_IO_ERROR = 100,
  RDC_INTERNAL_ERROR = 101
} rdc_status;

typedef struct rdc_model rdc_model;
typedef struct rdc_contract rdc_contract;
typedef struct rdc_refinement rdc_refinement;
typedef struct rdc_laws rdc_laws;

/* Contract parts for rdc_contract_rows. */
enum { RDC_PRE = 0, RDC_PERI = 1, RDC_POST = 2 };

RDC_API const char* rdc_status_name(int status);
RDC_API const char* rdc_last_error(void);
/* Position of the last syntax error, 0 when the last error had none. */
RDC_API int rdc_last_error_line(void);
RDC_API int rdc_last_error_col(void);

/* bound_override > 0 replaces the trace bound declared in the source. */
RDC_API int rdc_model_load_text(const char* text, int bound_override, rdc_model** out);
RDC_API int rdc_model_load_file(const char* path, int bound_override, rdc_model** out);
RDC_API void rdc_model_free(rdc_model* m);
/* 1 when a process or contract of that name exists, 0 otherwise. */
RDC_API int rdc_model_has(const rdc_model* m, const char* name);
RDC_API int rdc_model_bound(const rdc_model* m);
RDC_API int rdc_model_events(const rdc_model* m);

/* Names may carry constant arguments: "Pay(0,1,1)". */
RDC_API int rdc_calc(rdc_model* m, const char* name, rdc_contract** out);
/* Same contract obtained through the full-binding composition of every operator. */
RDC_API int rdc_calc_full(rdc_model* m, const char* name, rdc_contract** out);
RDC_API void rdc_contract_free(rdc_contract* c);
RDC_API const char* rdc_contract_text(rdc_contract* c);
RDC_API const char* rdc_contract_dump(rdc_contract* c);
RDC_API size_t rdc_contract_rows(const rdc_contract* c, int part);
/* 1 when both contracts have identical row sets. */
RDC_API int rdc_contract_equal(const rdc_contract* a, const rdc_contract* b);

RDC_API int rdc_refine(rdc_model* m, const char* spec, const char* impl, size_t max_counterexamples,
                       rdc_refinement** out);
RDC_API void rdc_refinement_free(rdc_refinement* r);
RDC_API int rdc_refinement_holds(const rdc_refinement* r);
/* Obligations 0..2: pre, peri, post. */
RDC_API const char* rdc_refinement_name(const rdc_refinement* r, int obligation);
RDC_API int rdc_refinement_obligation_holds(const rdc_refinement* r, int obligation);
RDC_API size_t rdc_refinement_witness_count(const rdc_refinement* r, int obligation);
RDC_API const char* rdc_refinement_witness(const rdc_refinement* r, int obligation, size_t k);
RDC_API const char* rdc_refinement_text(rdc_refinement* r);

RDC_API int rdc_equiv(rdc_model* m, const char* a, const char* b, int* result);
/* Healthiness of the full-binding expansion; health names as in "SRD", "NSRD", "RC". */
RDC_API int rdc_healthy(rdc_model* m, const char* name, const char* health, int* result);

/* suite: one suite name or "all"; samples 0 keeps each suite's default. */
RDC_API int rdc_laws_run(const char* suite, uint64_t seed, int samples, rdc_laws** out);
RDC_API void rdc_laws_free(rdc_laws* l);
RDC_API int rdc_laws_holds(const rdc_laws* l);
RDC_API size_t rdc_laws_count(const rdc_laws* l);
RDC_API const char* rdc_laws_name(const rdc_laws* l, size_t i);
RDC_API const char* rdc_laws_suite(const rdc_laws* l, size_t i);
RDC_API int rdc_laws_law_holds(const rdc_laws* l, size_t i);
RDC_API const char* rdc_laws_witness(const rdc_laws* l, size_t i);
RDC_API const char* rdc_laws_text(rdc_laws* l);

RDC_API uint64_t rdc_truncations(void);
RDC_API void rdc_reset_truncations(void);

/* Source of the card-system model; release with rdc_string_free. */
RDC_API int rdc_mondex_source(int cards, int max_balance, const int* amounts, size_t n_amounts, int initial,
                              int bound, char** out);
RDC_API void rdc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
