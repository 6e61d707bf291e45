#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wgnc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(Point p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Subdomain { Fluid, Solid };

enum class FaceTag { InteriorFluid, InteriorSolid, FluidSolidInterface, OuterBoundary };

/// Side of the outer rectangle a boundary face lies on.
enum class Wall { None, Left, Right, Bottom, Top };

const char* to_string(Wall wall);

struct FaceNeighbor {
  int element = -1;
  int local_face = -1;
};

/// Conforming triangulation of a rectangle with fluid/solid element tags.
///
/// Triangles are stored counter-clockwise. Local face i of a triangle is the
/// edge opposite its local vertex i. Each face stores its vertices (a, b) so
/// that the first adjacent element (the lower element index) traverses a -> b
/// counter-clockwise; the face normal is the outward normal of that element.
/// Immutable after construction.
class Mesh {
 public:
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
       std::vector<Subdomain> subdomains, Rect domain);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(triangles_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int e) const { return triangles_[e]; }
  const std::array<int, 2>& face(int f) const { return faces_[f]; }
  const std::array<int, 3>& element_faces(int e) const { return element_faces_[e]; }

  /// One neighbor for boundary faces, two for interior faces (lower index first).
  int num_face_neighbors(int f) const { return face_neighbors_[f][1].element < 0 ? 1 : 2; }
  const FaceNeighbor& face_neighbor(int f, int i) const { return face_neighbors_[f][i]; }

  Subdomain subdomain(int e) const { return subdomains_[e]; }
  bool is_fluid(int e) const { return subdomains_[e] == Subdomain::Fluid; }
  FaceTag face_tag(int f) const { return face_tags_[f]; }
  Wall face_wall(int f) const { return face_walls_[f]; }
  /// True when at least one neighbor is a fluid element.
  bool face_touches_fluid(int f) const;
  /// True for faces on the boundary of the fluid region (outer or interface).
  bool face_on_fluid_boundary(int f) const;

  double element_diameter(int e) const { return diameters_[e]; }
  double element_area(int e) const { return areas_[e]; }
  double face_length(int f) const { return face_lengths_[f]; }
  Point face_normal(int f) const { return face_normals_[f]; }
  Point face_midpoint(int f) const;
  Point centroid(int e) const;
  std::array<Point, 3> element_vertices(int e) const;

  const Rect& domain() const { return domain_; }
  int num_fluid_elements() const;

  /// Plain-text listing of vertices, elements and faces, one record per line.
  void dump(std::ostream& out) const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Subdomain> subdomains_;
  Rect domain_;

  std::vector<std::array<int, 2>> faces_;
  std::vector<std::array<FaceNeighbor, 2>> face_neighbors_;
  std::vector<std::array<int, 3>> element_faces_;
  std::vector<FaceTag> face_tags_;
  std::vector<Wall> face_walls_;
  std::vector<double> diameters_;
  std::vector<double> areas_;
  std::vector<double> face_lengths_;
  std::vector<Point> face_normals_;
};

/// Cell split direction for structured meshes.
enum class Diagonal { Forward, Backward };

/// Uniform nx-by-ny grid on `domain`. Forward splits each cell along its
/// lower-left -> upper-right diagonal, Backward along lower-right -> upper-left.
/// Elements whose centroid lies in `fluid_region` are tagged Fluid.
Mesh build_structured_mesh(int nx, int ny, const Rect& domain, const Rect& fluid_region,
                           Diagonal diagonal = Diagonal::Backward);

/// Largest element diameter.
double mesh_size(const Mesh& mesh);

}  // namespace wgnc
