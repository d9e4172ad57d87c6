/* geodiam: intrinsic distances and geodesic diameters of closed convex
 * triangulated surfaces, exposed as a C API over opaque handles.
 *
 * Conventions:
 *   - every function returns a gd_status; GD_OK is 0
 *   - output handles/strings are only valid when GD_OK is returned
 *   - strings returned through char** are heap-allocated; release them with
 *     gd_string_free
 *   - gd_last_error() returns a thread-local message for the last failure
 *   - options_json parameters take a JSON object; unknown keys are rejected
 */
#ifndef GEODIAM_H
#define GEODIAM_H

#include <stdint.h>

#if defined(_WIN32)
#define GEODIAM_API __declspec(dllexport)
#else
#define GEODIAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gd_surface gd_surface;
typedef struct gd_involution gd_involution;
typedef struct gd_path gd_path;

typedef enum gd_status {
  GD_OK = 0,
  GD_E_INVALID_ARGUMENT = 1,
  GD_E_DEGENERATE_INPUT = 2,
  GD_E_OFF_SURFACE = 3,
  GD_E_NOT_SYMMETRIC = 4,
  GD_E_SYMMETRY_VIOLATION = 5,
  GD_E_BUDGET_EXCEEDED = 6,
  GD_E_INVOLUTION_CHECK_FAILED = 7,
  GD_E_SIMPLICITY_VIOLATION = 8,
  GD_E_REGION_COUNT_VIOLATION = 9,
  GD_E_SWAP_VIOLATION = 10,
  GD_E_INVALID_SPACE = 11,
  GD_E_PARSE = 12,
  GD_E_IO = 13,
  GD_E_INTERNAL = 14
} gd_status;

GEODIAM_API const char* gd_status_name(gd_status status);
GEODIAM_API const char* gd_last_error(void);
GEODIAM_API void gd_string_free(char* s);
GEODIAM_API const char* gd_version(void);

/* ---- surfaces ---- */

GEODIAM_API gd_status gd_surface_box(double a, double b, double c,
                                     gd_surface** out);
GEODIAM_API gd_status gd_surface_symmetric_hull(int n, const double axes[3],
                                                uint64_t seed, gd_surface** out);
/* xyz: count*3 doubles. symmetrize != 0 adds the negated point set. */
GEODIAM_API gd_status gd_surface_hull_of_points(const double* xyz, int count,
                                                int symmetrize, gd_surface** out);
GEODIAM_API gd_status gd_surface_load_obj(const char* path, gd_surface** out);
GEODIAM_API gd_status gd_surface_parse_obj(const char* text, gd_surface** out);
GEODIAM_API gd_status gd_surface_write_obj(const gd_surface* s, const char* path);
GEODIAM_API void gd_surface_free(gd_surface* s);

GEODIAM_API int gd_surface_vertex_count(const gd_surface* s);
GEODIAM_API int gd_surface_edge_count(const gd_surface* s);
GEODIAM_API int gd_surface_face_count(const gd_surface* s);
GEODIAM_API double gd_surface_bbox_diag(const gd_surface* s);
GEODIAM_API gd_status gd_surface_is_symmetric(const gd_surface* s, int* symmetric);

/* report_json receives a ValidationReport; passed is 1 when it passed. */
GEODIAM_API gd_status gd_surface_validate(const gd_surface* s, int* passed,
                                          char** report_json);
/* Snaps a 3D point to the surface (within eps); writes the snapped point. */
GEODIAM_API gd_status gd_surface_locate(const gd_surface* s, const double point[3],
                                        double eps, double snapped[3]);

/* ---- involutions ---- */

GEODIAM_API gd_status gd_involution_central(const gd_surface* s,
                                            gd_involution** out);
GEODIAM_API gd_status gd_involution_from_json(const gd_surface* s,
                                              const char* json_text,
                                              gd_involution** out);
GEODIAM_API void gd_involution_free(gd_involution* inv);
GEODIAM_API gd_status gd_involution_apply(const gd_involution* inv,
                                          const double point[3], double eps,
                                          double image[3]);
GEODIAM_API gd_status gd_involution_check(const gd_involution* inv, int nsamples,
                                          uint64_t seed, int* fixed_point_free,
                                          char** report_json);

/* ---- geodesics ---- */

GEODIAM_API gd_status gd_exact_distance(const gd_surface* s, const double from[3],
                                        const double to[3], double snap_eps,
                                        uint64_t node_budget, gd_path** out);
GEODIAM_API gd_status gd_graph_distance(const gd_surface* s, const double from[3],
                                        const double to[3], double snap_eps,
                                        int level, double* out);
GEODIAM_API double gd_path_length(const gd_path* path);
GEODIAM_API gd_status gd_path_json(const gd_path* path, char** out);
GEODIAM_API gd_status gd_path_polyline_obj(const gd_path* path, char** out);
GEODIAM_API void gd_path_free(gd_path* path);

/* ---- searches & pipelines (options as JSON) ----
 *
 * Diameter options: {"samples":500,"sampler":"face-uniform","seed":42,
 *                    "refine":true,"refine_steps":60,"budget":1000000}
 * mode: "brute" | "antipodal" | "both".
 */
GEODIAM_API gd_status gd_diameter(const gd_surface* s, const char* mode,
                                  const char* options_json, char** report_json);
GEODIAM_API gd_status gd_farthest(const gd_surface* s, const double from[3],
                                  const char* options_json, char** report_json);
/* CSV distance field over a barycentric lattice:
 * options {"resolution":8,"budget":...}. */
GEODIAM_API gd_status gd_field_csv(const gd_surface* s, const double from[3],
                                   const char* options_json, char** csv);
/* Theorem pipeline over fresh random hulls:
 * options {"trials":20,"seed":1,"hull_points":50,"axes":[1,1,1],
 *          "samples":500,"swap_samples":200,"resolution":4096,
 *          "refine":true,"budget":1000000}. */
GEODIAM_API gd_status gd_verify_theorem(const char* options_json, int* passed,
                                        char** report_json);
/* Exact discrete check on {"n":..,"edges":[[i,j,w]..],"involution":[..]}. */
GEODIAM_API gd_status gd_discrete_check(const char* space_json, int* equal,
                                        char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* GEODIAM_H */
