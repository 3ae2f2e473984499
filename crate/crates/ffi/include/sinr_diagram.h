#ifndef SINR_DIAGRAM_H
#define SINR_DIAGRAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SinrStatus {
  SINR_STATUS_OK = 0,
  SINR_STATUS_NULL_POINTER = 1,
  SINR_STATUS_INVALID_ARGUMENT = 2,
  SINR_STATUS_PARSE = 3,
  SINR_STATUS_AT_STATION = 4,
  SINR_STATUS_UNSUPPORTED = 5,
  SINR_STATUS_IO = 6,
  SINR_STATUS_FORMAT = 7,
  SINR_STATUS_PANIC = 8,
} SinrStatus;

/**
 * Cell tags as returned by `sinr_qds_query`.
 */
typedef enum SinrTag {
  SINR_TAG_MINUS = 0,
  SINR_TAG_PLUS = 1,
  SINR_TAG_QUESTION = 2,
} SinrTag;

/**
 * Opaque network handle.
 */
typedef struct SinrNetwork SinrNetwork;

/**
 * Opaque point-location structure handle.
 */
typedef struct SinrQds SinrQds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sinr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sinr_version(void);

/**
 * Parses a network from NUL-terminated JSON.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum SinrStatus sinr_network_from_json(const char *json, struct SinrNetwork **out);

/**
 * # Safety
 * `net` must come from `sinr_network_from_json` and not be freed twice.
 */
void sinr_network_free(struct SinrNetwork *net);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SinrStatus sinr_network_station_count(const struct SinrNetwork *net, size_t *out);

/**
 * SINR of station `station` at the `dim`-dimensional point.
 *
 * # Safety
 * `point` must hold `dim` doubles; other pointers must be valid.
 */
enum SinrStatus sinr_eval(const struct SinrNetwork *net,
                          size_t station,
                          const double *point_ptr,
                          size_t dim,
                          double *out);

/**
 * # Safety
 * As for `sinr_eval`.
 */
enum SinrStatus sinr_is_heard(const struct SinrNetwork *net,
                              size_t station,
                              const double *point_ptr,
                              size_t dim,
                              bool *out);

/**
 * Index of the station heard at the point, or -1 when none is.
 *
 * # Safety
 * As for `sinr_eval`.
 */
enum SinrStatus sinr_heard_station(const struct SinrNetwork *net,
                                   const double *point_ptr,
                                   size_t dim,
                                   int64_t *out);

/**
 * Builds a QDS for `station`. `scheme` is 0 = A, 1 = B, 2 = C,
 * 3 = colinear. `extent` <= 0 means derive it from the noise.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SinrStatus sinr_qds_build(const struct SinrNetwork *net,
                               size_t station,
                               uint8_t scheme,
                               double epsilon,
                               double extent,
                               struct SinrQds **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SinrStatus sinr_qds_query(const struct SinrQds *qds, double x, double y, enum SinrTag *out);

/**
 * Serialises to a new buffer released with `sinr_buffer_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SinrStatus sinr_qds_serialize(const struct SinrQds *qds, uint8_t **buf, size_t *len);

/**
 * # Safety
 * `buf` and `len` must come from one `sinr_qds_serialize` call.
 */
void sinr_buffer_free(uint8_t *buf, size_t len);

/**
 * # Safety
 * `buf` must hold `len` bytes; `out` must be valid.
 */
enum SinrStatus sinr_qds_deserialize(const uint8_t *buf, size_t len, struct SinrQds **out);

/**
 * # Safety
 * `qds` must come from this library and not be freed twice.
 */
void sinr_qds_free(struct SinrQds *qds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINR_DIAGRAM_H */
