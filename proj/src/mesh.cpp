#include "wgnc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wgnc {

const char* to_string(Wall wall) {
  switch (wall) {
    case Wall::Left: return "left";
    case Wall::Right: return "right";
    case Wall::Bottom: return "bottom";
    case Wall::Top: return "top";
    case Wall::None: break;
  }
  return "none";
}

namespace {

double signed_area(Point a, Point b, Point c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

Wall classify_wall(Point a, Point b, const Rect& d, double tol) {
  auto near = [tol](double u, double v) { return std::abs(u - v) <= tol; };
  if (near(a.x, d.x0) && near(b.x, d.x0)) return Wall::Left;
  if (near(a.x, d.x1) && near(b.x, d.x1)) return Wall::Right;
  if (near(a.y, d.y0) && near(b.y, d.y0)) return Wall::Bottom;
  if (near(a.y, d.y1) && near(b.y, d.y1)) return Wall::Top;
  return Wall::None;
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
           std::vector<Subdomain> subdomains, Rect domain)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      subdomains_(std::move(subdomains)),
      domain_(domain) {
  if (subdomains_.size() != triangles_.size()) {
    throw std::invalid_argument("Mesh: one subdomain tag per triangle required");
  }
  const int ne = num_elements();
  diameters_.resize(ne);
  areas_.resize(ne);
  element_faces_.resize(ne);

  std::map<std::pair<int, int>, int> edge_index;
  for (int e = 0; e < ne; ++e) {
    const auto& t = triangles_[e];
    for (int v : t) {
      if (v < 0 || v >= num_vertices()) {
        throw std::invalid_argument("Mesh: triangle " + std::to_string(e) + " references vertex " +
                                    std::to_string(v) + " out of range");
      }
    }
    const Point p0 = vertices_[t[0]], p1 = vertices_[t[1]], p2 = vertices_[t[2]];
    const double area = signed_area(p0, p1, p2);
    if (!(area > 0.0)) {
      throw std::invalid_argument("Mesh: triangle " + std::to_string(e) +
                                  " is not counter-clockwise or is degenerate");
    }
    areas_[e] = area;
    diameters_[e] = std::max({distance(p0, p1), distance(p1, p2), distance(p2, p0)});

    for (int i = 0; i < 3; ++i) {
      const int a = t[(i + 1) % 3];
      const int b = t[(i + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        const int f = num_faces();
        edge_index.emplace(key, f);
        faces_.push_back({a, b});
        face_neighbors_.push_back({FaceNeighbor{e, i}, FaceNeighbor{}});
        element_faces_[e][i] = f;
      } else {
        const int f = it->second;
        if (face_neighbors_[f][1].element >= 0) {
          throw std::invalid_argument("Mesh: edge shared by more than two triangles");
        }
        face_neighbors_[f][1] = FaceNeighbor{e, i};
        element_faces_[e][i] = f;
      }
    }
  }

  const int nf = num_faces();
  face_tags_.resize(nf);
  face_walls_.resize(nf, Wall::None);
  face_lengths_.resize(nf);
  face_normals_.resize(nf);
  const double tol = 1e-12 * std::max(domain_.width(), domain_.height());
  for (int f = 0; f < nf; ++f) {
    const Point a = vertices_[faces_[f][0]];
    const Point b = vertices_[faces_[f][1]];
    const double len = distance(a, b);
    face_lengths_[f] = len;
    face_normals_[f] = {(b.y - a.y) / len, -(b.x - a.x) / len};
    if (num_face_neighbors(f) == 1) {
      face_tags_[f] = FaceTag::OuterBoundary;
      face_walls_[f] = classify_wall(a, b, domain_, tol);
    } else {
      const bool f0 = is_fluid(face_neighbors_[f][0].element);
      const bool f1 = is_fluid(face_neighbors_[f][1].element);
      face_tags_[f] = (f0 && f1)     ? FaceTag::InteriorFluid
                      : (!f0 && !f1) ? FaceTag::InteriorSolid
                                     : FaceTag::FluidSolidInterface;
    }
  }
}

bool Mesh::face_touches_fluid(int f) const {
  for (int i = 0; i < num_face_neighbors(f); ++i) {
    if (is_fluid(face_neighbors_[f][i].element)) return true;
  }
  return false;
}

bool Mesh::face_on_fluid_boundary(int f) const {
  if (face_tags_[f] == FaceTag::FluidSolidInterface) return true;
  return face_tags_[f] == FaceTag::OuterBoundary && is_fluid(face_neighbors_[f][0].element);
}

Point Mesh::face_midpoint(int f) const {
  return 0.5 * (vertices_[faces_[f][0]] + vertices_[faces_[f][1]]);
}

Point Mesh::centroid(int e) const {
  const auto& t = triangles_[e];
  return (1.0 / 3.0) * (vertices_[t[0]] + vertices_[t[1]] + vertices_[t[2]]);
}

std::array<Point, 3> Mesh::element_vertices(int e) const {
  const auto& t = triangles_[e];
  return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

int Mesh::num_fluid_elements() const {
  return static_cast<int>(std::count(subdomains_.begin(), subdomains_.end(), Subdomain::Fluid));
}

void Mesh::dump(std::ostream& out) const {
  out << "# vertices " << num_vertices() << "\n";
  for (int v = 0; v < num_vertices(); ++v) {
    out << "v " << v << ' ' << vertices_[v].x << ' ' << vertices_[v].y << "\n";
  }
  out << "# elements " << num_elements() << "\n";
  for (int e = 0; e < num_elements(); ++e) {
    const auto& t = triangles_[e];
    out << "e " << e << ' ' << t[0] << ' ' << t[1] << ' ' << t[2] << ' '
        << (is_fluid(e) ? "fluid" : "solid") << "\n";
  }
  static constexpr const char* tag_names[] = {"interior_fluid", "interior_solid",
                                              "fluid_solid_interface", "outer_boundary"};
  out << "# faces " << num_faces() << "\n";
  for (int f = 0; f < num_faces(); ++f) {
    out << "f " << f << ' ' << faces_[f][0] << ' ' << faces_[f][1] << ' '
        << face_neighbors_[f][0].element << ' ' << face_neighbors_[f][1].element << ' '
        << tag_names[static_cast<int>(face_tags_[f])] << ' ' << to_string(face_walls_[f]) << "\n";
  }
}

Mesh build_structured_mesh(int nx, int ny, const Rect& domain, const Rect& fluid_region,
                           Diagonal diagonal) {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("build_structured_mesh: nx, ny must be positive");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw std::invalid_argument("build_structured_mesh: empty domain rectangle");
  }
  if (!(fluid_region.width() > 0.0) || !(fluid_region.height() > 0.0)) {
    throw std::invalid_argument("build_structured_mesh: empty fluid rectangle");
  }
  const double dx = domain.width() / nx;
  const double dy = domain.height() / ny;
  auto check_aligned = [](const char* name, double value, double origin, double step, int n) {
    const double idx = (value - origin) / step;
    const double rounded = std::round(idx);
    if (std::abs(idx - rounded) > 1e-9 || rounded < 0 || rounded > n) {
      std::ostringstream msg;
      msg << "build_structured_mesh: fluid_region " << name << " = " << value
          << " is not on a grid line of the " << n << "-cell direction";
      throw std::invalid_argument(msg.str());
    }
  };
  check_aligned("x0", fluid_region.x0, domain.x0, dx, nx);
  check_aligned("x1", fluid_region.x1, domain.x0, dx, nx);
  check_aligned("y0", fluid_region.y0, domain.y0, dy, ny);
  check_aligned("y1", fluid_region.y1, domain.y0, dy, ny);

  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      // Pin the last row/column to the exact rectangle bounds.
      const double x = (i == nx) ? domain.x1 : domain.x0 + i * dx;
      const double y = (j == ny) ? domain.y1 : domain.y0 + j * dy;
      vertices.push_back({x, y});
    }
  }
  std::vector<std::array<int, 3>> triangles;
  std::vector<Subdomain> tags;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  tags.reserve(triangles.capacity());
  const auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point center{domain.x0 + (i + 0.5) * dx, domain.y0 + (j + 0.5) * dy};
      const Subdomain tag = fluid_region.contains(center) ? Subdomain::Fluid : Subdomain::Solid;
      if (diagonal == Diagonal::Forward) {
        triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
      } else {
        triangles.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
        triangles.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
      }
      tags.push_back(tag);
      tags.push_back(tag);
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(tags), domain);
}

double mesh_size(const Mesh& mesh) {
  double h = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) h = std::max(h, mesh.element_diameter(e));
  return h;
}

}  // namespace wgnc
