#ifndef THERMOWAVE_H
#define THERMOWAVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum TwStatus {
  TW_STATUS_OK = 0,
  TW_STATUS_NULL_POINTER = 1,
  TW_STATUS_INVALID_STRING = 2,
  TW_STATUS_FORMAT = 3,
  TW_STATUS_TRUNCATION = 4,
  TW_STATUS_DATA = 5,
  TW_STATUS_IO = 6,
  TW_STATUS_BOUNDS = 7,
  TW_STATUS_CONFIG = 8,
  TW_STATUS_CATALOG = 9,
  TW_STATUS_LEVEL = 10,
  TW_STATUS_DEGENERATE = 11,
  TW_STATUS_SELECTION = 12,
  TW_STATUS_SHAPE = 13,
  TW_STATUS_PANIC = 14,
} TwStatus;

// Thermal image sequence.
typedef struct TwCube TwCube;

// Single 2D map of doubles, row-major.
typedef struct TwMap TwMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next call on the same thread.
const char *tw_last_error_message(void);

// Reads a TIC1 file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a writable pointer.
enum TwStatus tw_cube_read(const char *path, struct TwCube **out);

// Writes a TIC1 file.
//
// # Safety
// `cube` must come from this library and `path` be NUL-terminated.
enum TwStatus tw_cube_write(const struct TwCube *cube, const char *path);

// Builds a cube from `nx*ny*nt` frame-major floats.
//
// # Safety
// `data` must point to `nx*ny*nt` readable floats; `out` must be writable.
enum TwStatus tw_cube_from_data(size_t nx,
                                size_t ny,
                                size_t nt,
                                double te_s,
                                const float *data,
                                struct TwCube **out);

// # Safety
// `cube` must come from this library or be NULL; it is invalid afterwards.
void tw_cube_free(struct TwCube *cube);

// # Safety
// `cube` must come from this library; the out pointers must be writable.
enum TwStatus tw_cube_dims(const struct TwCube *cube, size_t *nx, size_t *ny, size_t *nt);

// Standard synthetic panel with the given pulse length, seed and noise.
//
// # Safety
// `out` must be writable.
enum TwStatus tw_phantom(double te_s, uint64_t seed, double noise_sigma, struct TwCube **out);

// Detection map from detail levels `band_lo..=band_hi` of a `levels`-deep
// decomposition.
//
// # Safety
// `cube` must come from this library, `basis` be NUL-terminated and `out`
// writable.
enum TwStatus tw_detect(const struct TwCube *cube,
                        const char *basis,
                        size_t levels,
                        size_t band_lo,
                        size_t band_hi,
                        struct TwMap **out);

// # Safety
// `map` must come from this library; the out pointers must be writable.
enum TwStatus tw_map_dims(const struct TwMap *map, size_t *rows, size_t *cols);

// Row-major values, valid while `map` lives; NULL for a NULL map.
//
// # Safety
// `map` must come from this library or be NULL.
const double *tw_map_data(const struct TwMap *map);

// # Safety
// `map` must come from this library or be NULL; it is invalid afterwards.
void tw_map_free(struct TwMap *map);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THERMOWAVE_H */
