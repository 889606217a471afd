/* Copyright hardylab contributors */
/* SPDX-License-Identifier: Apache-2.0 */

#ifndef HARDYLAB_H
#define HARDYLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HL_API __declspec(dllexport)
#else
#define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
  HL_OK = 0,
  HL_ERR_INVALID_ARGUMENT = 1,
  HL_ERR_PARSE = 2,
  HL_ERR_UNDECIDABLE = 3,
  HL_ERR_ILL_CONDITIONED = 4,
  HL_ERR_INCOMPATIBLE_SPACES = 5,
  HL_ERR_IO = 6,
  HL_ERR_UNKNOWN_SUITE = 7,
  HL_ERR_INTERNAL = 99
} hl_status;

typedef struct hl_config hl_config;
typedef struct hl_report hl_report;
typedef struct hl_classification hl_classification;

HL_API const char* hl_version(void);
HL_API const char* hl_status_name(hl_status s);
/* Message of the last failed call on this thread; empty after a success. */
HL_API const char* hl_last_error(void);
/* Releases strings returned through char** out parameters. */
HL_API void hl_string_free(char* s);

/* Suite configuration; defaults N = 64, seed 0, tol scale 1, suite-default instance counts. */
HL_API hl_status hl_config_create(hl_config** out);
HL_API void hl_config_free(hl_config* c);
HL_API hl_status hl_config_set_n(hl_config* c, int n);
HL_API hl_status hl_config_set_seed(hl_config* c, uint64_t seed);
HL_API hl_status hl_config_set_tol_scale(hl_config* c, double scale);
HL_API hl_status hl_config_set_instances(hl_config* c, int instances);
HL_API hl_status hl_config_set_timings(hl_config* c, int enabled);
HL_API hl_status hl_config_set_threads(hl_config* c, int threads);

HL_API size_t hl_suite_count(void);
HL_API const char* hl_suite_name(size_t i);

HL_API hl_status hl_run_suite(const char* suite, const hl_config* c, hl_report** out);
HL_API hl_status hl_report_from_json(const char* json, hl_report** out);
HL_API void hl_report_free(hl_report* r);
HL_API hl_status hl_report_summary(const hl_report* r, int* total, int* passed, int* failed, int* undecidable);
/* 0 all pass, 1 any failure, 3 undecidable cases only. */
HL_API int hl_report_exit_status(const hl_report* r);
/* format is "json" or "csv". */
HL_API hl_status hl_report_emit(const hl_report* r, const char* format, char** out);
HL_API hl_status hl_report_write(const hl_report* r, const char* path, const char* format);

/* command: "product" ({"f","g"}), "hankel" ({"f","g"}) or "selfcommutator"
   ({"phi"} plus optional case-2 data "u", "v", "c"). Symbols use the symbol
   JSON format; Blaschke leaves are truncated to a tail of at most tail
   (tail <= 0 selects 1e-12). tol <= 0 selects the tolerance schedule times
   tol_scale. */
HL_API hl_status hl_classify(const char* command, const char* symbols_json, int n, double tol, double tol_scale,
                             double tail, hl_classification** out);
HL_API void hl_classification_free(hl_classification* c);
HL_API const char* hl_classification_tag(const hl_classification* c);
HL_API hl_status hl_classification_json(const hl_classification* c, char** out);

/* Generated instance as JSON. family and perturb_param may be NULL or empty. */
HL_API hl_status hl_witness_json(const char* theorem, uint64_t seed, uint64_t index, const char* family,
                                 const char* perturb_param, double factor, char** out);

#ifdef __cplusplus
}
#endif

#endif
