#ifndef STPLUS_H
#define STPLUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum StbStatus {
  STB_STATUS_OK = 0,
  STB_STATUS_NULL_POINTER = 1,
  STB_STATUS_INVALID_ARGUMENT = 2,
  STB_STATUS_INVALID_FIELD = 3,
  STB_STATUS_DEGENERATE = 4,
  STB_STATUS_ORDER_EXCEEDS_CAP = 5,
  STB_STATUS_UNSUPPORTED = 6,
  STB_STATUS_INTERNAL = 7,
  STB_STATUS_IO = 8,
  STB_STATUS_PANIC = 9,
} StbStatus;

/*
 Form type of the quadratic space.
 */
typedef enum StbFormType {
  STB_FORM_TYPE_ODD = 0,
  STB_FORM_TYPE_PLUS = 1,
  STB_FORM_TYPE_MINUS = 2,
} StbFormType;

/*
 Which group of the space to enumerate.
 */
typedef enum StbGroupKind {
  STB_GROUP_KIND_O = 0,
  STB_GROUP_KIND_SO = 1,
  STB_GROUP_KIND_OMEGA = 2,
  STB_GROUP_KIND_SP = 3,
} StbGroupKind;

/*
 Opaque finite field handle.
 */
typedef struct StbField StbField;

/*
 Opaque enumerated group handle.
 */
typedef struct StbGroup StbGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *stb_last_error(void);

/*
 Creates GF(p^k).

 # Safety
 `out` must be a valid pointer to writable storage for a handle.
 */
enum StbStatus stb_field_new(uint32_t p, uint32_t k, struct StbField **out);

/*
 Number of elements of the field, 0 for a null handle.

 # Safety
 `field` must be null or a handle from `stb_field_new`.
 */
uint32_t stb_field_order(const struct StbField *field);

/*
 # Safety
 `field` must be null or a handle from `stb_field_new` not yet freed.
 */
void stb_field_free(struct StbField *field);

/*
 Enumerates the group of the given kind on the standard space of
 dimension `dim` and type `ty` (ignored for `Sp`). `max_order` of 0
 keeps the library default cap.

 # Safety
 `field` must be a live field handle and `out` valid for writing.
 */
enum StbStatus stb_group_build(const struct StbField *field,
                               uint32_t dim,
                               enum StbFormType ty,
                               enum StbGroupKind kind,
                               uint64_t max_order,
                               struct StbGroup **out);

/*
 Order of the group, 0 for a null handle.

 # Safety
 `group` must be null or a live group handle.
 */
uint64_t stb_group_order(const struct StbGroup *group);

/*
 Number of conjugacy classes, computed on first use.

 # Safety
 `group` must be a live group handle and `out` valid for writing.
 */
enum StbStatus stb_group_class_count(const struct StbGroup *group, uintptr_t *out);

/*
 # Safety
 `group` must be null or a handle from `stb_group_build` not yet freed.
 */
void stb_group_free(struct StbGroup *group);

/*
 The series census of an SO (odd q) or Omega (even q) group as a JSON
 string, to be released with `stb_string_free`.

 # Safety
 `group` must be a live group handle and `out` valid for writing.
 */
enum StbStatus stb_census_json(const struct StbGroup *group, char **out);

/*
 # Safety
 `s` must be null or a string returned by this library not yet freed.
 */
void stb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STPLUS_H */
