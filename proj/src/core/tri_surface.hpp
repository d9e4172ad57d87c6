#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tolerances.hpp"
#include "vec.hpp"

namespace geodiam {

// A point on a surface: carrying face index plus barycentric coordinates.
// Canonical form stores points on shared edges/vertices with the smallest
// incident face index, so canonical points compare bitwise after snapping.
struct SurfacePoint {
  int face = -1;
  std::array<double, 3> bary{0, 0, 0};
};

// Deterministic ordering for tie-breaks (assumes canonical form).
bool point_less(const SurfacePoint& a, const SurfacePoint& b);

struct ValidationReport {
  bool passed = false;
  int euler_characteristic = 0;
  std::vector<int> non_manifold_edges;   // edge ids (or -1 entries for unpaired stubs)
  std::vector<int> degenerate_faces;
  std::vector<int> convexity_violations; // edge ids with reflex dihedral
  std::string to_json() const;
};

// Closed oriented triangulated surface with its length metric. Immutable
// after construction; all queries are const and safe to share across threads.
class TriSurface {
 public:
  struct Edge {
    int v0 = -1, v1 = -1;  // v0 < v1
    int f0 = -1, f1 = -1;  // incident faces (f1 = -1 on boundary)
    double length = 0;
  };

  // Axis-aligned box with edge lengths a,b,c centered at the origin. Each quad
  // is split along the diagonal from its lexicographically smallest corner.
  static TriSurface box(double a, double b, double c);

  static TriSurface from_data(std::vector<Vec3> vertices,
                              std::vector<std::array<int, 3>> faces,
                              std::optional<Vec3> center = std::nullopt,
                              bool convex = false,
                              const Tolerances& tol = Tolerances{});

  static TriSurface load_obj(const std::string& path);
  static TriSurface parse_obj(const std::string& text);
  std::string to_obj() const;
  void save_obj(const std::string& path) const;

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Vec3& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& face(int f) const { return faces_[f]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }

  // Edge k of face f joins corners k and (k+1)%3.
  int face_edge(int f, int k) const { return face_edges_[f][k]; }
  // Neighbor across edge k of face f (-1 on boundary).
  int face_neighbor(int f, int k) const;
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  int find_edge(int va, int vb) const;  // -1 if absent
  // Face whose vertex set is exactly {a,b,c}; -1 if absent.
  int find_face(int a, int b, int c) const;

  Vec3 face_normal(int f) const;
  double face_area(int f) const;
  Vec3 face_centroid(int f) const;

  std::optional<Vec3> center() const { return center_; }
  bool convex_flag() const { return convex_; }

  double bbox_diag() const { return bbox_diag_; }
  double total_area() const { return total_area_; }
  double mean_edge_length() const { return mean_edge_length_; }

  const Tolerances& tolerances() const { return tol_; }
  double eps_point() const { return tol_.point_rel * bbox_diag_; }
  double eps_degenerate() const { return tol_.degenerate_rel * bbox_diag_ * bbox_diag_; }
  double eps_isometry() const { return tol_.isometry_rel * bbox_diag_; }
  double eps_match() const { return tol_.match_rel * bbox_diag_; }
  double eps_chain() const { return tol_.chain_rel * bbox_diag_; }

  Vec3 embed(const SurfacePoint& p) const;
  SurfacePoint canonical(SurfacePoint p) const;
  bool same_point(const SurfacePoint& a, const SurfacePoint& b) const;

  // Faces incident to p (1 for interior, 2 for edge, fan for vertex points).
  std::vector<int> incident_faces(const SurfacePoint& p) const;
  // Vertex index if p is (canonically) a mesh vertex, else -1.
  int as_vertex(const SurfacePoint& p) const;
  // Edge index and parameter along edge(v0->v1) if p lies on an edge interior.
  std::optional<std::pair<int, double>> as_edge_point(const SurfacePoint& p) const;

  // Barycentric coordinates of a 3D point with respect to face f (no snapping).
  std::array<double, 3> bary_in_face(int f, const Vec3& p) const;

  // Nearest surface point; raises OffSurface if farther than eps.
  SurfacePoint locate(const Vec3& p, double eps) const;
  // Nearest surface point and its distance, never raises.
  std::pair<SurfacePoint, double> project(const Vec3& p) const;

  ValidationReport validate() const;

  // True when the vertex set is closed under p -> 2c - p within eps_point().
  bool is_symmetric_about(const Vec3& c) const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<std::vector<int>> vertex_faces_;
  std::optional<Vec3> center_;
  bool convex_ = false;
  Tolerances tol_;
  double bbox_diag_ = 0;
  double total_area_ = 0;
  double mean_edge_length_ = 0;

  // Structural anomalies found while building (consumed by validate()).
  std::vector<int> unmatched_edge_stubs_;
  std::vector<int> overmatched_edges_;

  void build_topology();
  void compute_metrics();
};

// Midpoint (1-to-4) subdivision; optionally re-projects vertices to the unit
// sphere. Preserves the center/convex flags of the input when meaningful.
TriSurface subdivide_midpoint(const TriSurface& s, bool project_unit_sphere);

// Regular octahedron / icosahedron inscribed in the unit sphere.
TriSurface octahedron_surface();
TriSurface icosahedron_surface();

}  // namespace geodiam
