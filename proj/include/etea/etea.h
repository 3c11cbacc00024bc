/*
 * C interface to the eye-tracking evolutionary engine.
 *
 * All strings crossing this boundary are UTF-8 JSON. Strings returned through
 * `char** out` parameters are heap allocated by the library and must be
 * released with etea_free(). On failure the out pointer is left NULL and
 * etea_last_error() describes the problem for the calling thread.
 */
#ifndef ETEA_H
#define ETEA_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(ETEA_BUILDING)
#    define ETEA_API __declspec(dllexport)
#  else
#    define ETEA_API __declspec(dllimport)
#  endif
#else
#  define ETEA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum etea_status {
  ETEA_OK = 0,
  ETEA_ERR_INVALID_ARGUMENT = 1,
  ETEA_ERR_CONFIG = 2,
  ETEA_ERR_PARSE = 3,
  ETEA_ERR_PROTOCOL = 4,
  ETEA_ERR_INTEGRITY = 5,
  ETEA_ERR_IO = 6,
  ETEA_ERR_UNDEFINED = 7, /* e.g. correlation of a constant series */
  ETEA_ERR_INTERNAL = 8
} etea_status;

typedef struct etea_session etea_session;

ETEA_API const char* etea_version(void);
ETEA_API const char* etea_status_string(etea_status status);
/* Detail for the last failing call on this thread; never NULL. */
ETEA_API const char* etea_last_error(void);
ETEA_API void etea_free(void* p);

/* config_json may be NULL for defaults. If log_path is non-NULL the session
 * appends its JSONL log there (the file is truncated first). */
ETEA_API etea_status etea_session_create(const char* config_json, uint64_t seed,
                                         const char* log_path,
                                         etea_session** out);
ETEA_API void etea_session_destroy(etea_session* session);

/* Feeds one inbound message. *out_json receives a JSON array with the
 * outbound messages. Protocol and parse problems are reported in-band as
 * {"type":"error",...} entries and still return ETEA_OK. */
ETEA_API etea_status etea_session_handle(etea_session* session,
                                         const char* message_json,
                                         char** out_json);

/* Current "present" message. */
ETEA_API etea_status etea_session_presentation(const etea_session* session,
                                               char** out_json);
/* "Presenting", "Collecting", "Evolved" or "Ended"; static storage. */
ETEA_API const char* etea_session_phase(const etea_session* session);
ETEA_API int etea_session_generation(const etea_session* session);
/* Per-generation summary of everything evaluated so far. */
ETEA_API etea_status etea_session_report(const etea_session* session,
                                         char** out_json);

/* FdcReport as JSON. metric is "m1", "m2" or "ms". */
ETEA_API etea_status etea_fdc(const char* metric, uint64_t samples,
                              uint64_t seed, char** out_json);

/* Headless run with the simulated user described by config_json["user"].
 * log_path may be NULL. */
ETEA_API etea_status etea_simulate(const char* config_json, int generations,
                                   uint64_t seed, const char* log_path,
                                   char** out_report_json);

ETEA_API etea_status etea_replay(const char* log_path, char** out_report_json);

/* Replays the log and writes the per-generation M1 table to csv_path. */
ETEA_API etea_status etea_report_csv(const char* log_path, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* ETEA_H */
