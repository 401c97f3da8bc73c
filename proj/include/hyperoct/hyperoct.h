#ifndef HYPEROCT_HYPEROCT_H
#define HYPEROCT_HYPEROCT_H

#include <stddef.h>
#include <stdint.h>

#if defined(HYPEROCT_BUILDING)
#define HYPEROCT_API __attribute__((visibility("default")))
#else
#define HYPEROCT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hyperoct_status {
  HYPEROCT_OK = 0,
  HYPEROCT_INVALID_ARGUMENT = 1, /* null handle, bad option value */
  HYPEROCT_SCHEMA = 2,           /* malformed algebra or inconsistent job */
  HYPEROCT_IO = 3,               /* file or cache access */
  HYPEROCT_CAP_EXCEEDED = 4,     /* run finished with a partial report */
  HYPEROCT_INTERNAL = 5
} hyperoct_status;

typedef struct hyperoct_job hyperoct_job;
typedef struct hyperoct_report hyperoct_report;

HYPEROCT_API const char* hyperoct_version(void);

/* Message of the last failing call on this thread; never null. */
HYPEROCT_API const char* hyperoct_last_error(void);

HYPEROCT_API hyperoct_job* hyperoct_job_new(void);
HYPEROCT_API void hyperoct_job_free(hyperoct_job* job);

/* Builtins: ground, C<n>, klein4 (V4), S3. */
HYPEROCT_API hyperoct_status hyperoct_job_set_algebra_builtin(hyperoct_job* job, const char* name);
HYPEROCT_API hyperoct_status hyperoct_job_set_algebra_json(hyperoct_job* job, const char* json_text);
HYPEROCT_API hyperoct_status hyperoct_job_set_algebra_file(hyperoct_job* job, const char* path);
/* "q", "z", "f<p>" */
HYPEROCT_API hyperoct_status hyperoct_job_set_ring(hyperoct_job* job, const char* ring);
/* Comma-separated: full, nerve, reduced, epi, slominska, extended. */
HYPEROCT_API hyperoct_status hyperoct_job_set_pipelines(hyperoct_job* job, const char* pipelines);
HYPEROCT_API hyperoct_status hyperoct_job_set_object_range(hyperoct_job* job, int min_object, int max_object);
HYPEROCT_API hyperoct_status hyperoct_job_set_max_degree(hyperoct_job* job, int max_degree);
/* "z/2", "z+z/3", ...; null clears. Needs ring z. */
HYPEROCT_API hyperoct_status hyperoct_job_set_coefficients(hyperoct_job* job, const char* module);
HYPEROCT_API hyperoct_status hyperoct_job_set_verify(hyperoct_job* job, int verify);
/* null or "" disables the cache. */
HYPEROCT_API hyperoct_status hyperoct_job_set_cache_dir(hyperoct_job* job, const char* path);
HYPEROCT_API hyperoct_status hyperoct_job_set_max_generators(hyperoct_job* job, uint64_t cap);

/* On HYPEROCT_OK or HYPEROCT_CAP_EXCEEDED *out receives a report. */
HYPEROCT_API hyperoct_status hyperoct_job_run(const hyperoct_job* job, hyperoct_report** out);

HYPEROCT_API void hyperoct_report_free(hyperoct_report* report);
/* Caller frees with hyperoct_string_free. */
HYPEROCT_API char* hyperoct_report_json(const hyperoct_report* report, int with_timing);
HYPEROCT_API int hyperoct_report_verifications_passed(const hyperoct_report* report);
HYPEROCT_API int hyperoct_report_complete(const hyperoct_report* report);

/* Exhaustive category checks on objects up to depth; *out_json is freed
   with hyperoct_string_free, *all_passed is 0 or 1. */
HYPEROCT_API hyperoct_status hyperoct_verify_category(int depth, char** out_json, int* all_passed);

HYPEROCT_API void hyperoct_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
