#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

namespace ldg {

// An edge of the triangulation. The normal is the unit vector pointing out
// of the left element; for interior edges it points into the right element.
struct Edge {
  std::array<int, 2> v{-1, -1};
  int left = -1;
  int right = -1;  // -1 on boundary edges
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
  double length = 0.0;

  bool is_boundary() const { return right < 0; }
};

// Conforming triangulation of a polygonal domain. Elements are stored as
// counterclockwise vertex triples; edge topology is derived from them.
struct Mesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> elements;
  std::vector<Edge> edges;
  std::vector<double> element_diameters;  // h_i = longest edge of element i
  double mesh_size = 0.0;                 // h = max_i h_i

  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_boundary_edges() const;

  double element_area(int e) const;
  double total_area() const;
  Eigen::Vector2d centroid(int e) const;
};

// n x n grid of square cells on the unit square, each split along the
// (i/n,j/n)-((i+1)/n,(j+1)/n) diagonal into two right triangles.
Mesh build_uniform_triangulation(int n);

// Plain-text format: "vertices <V> elements <E>" header, V lines "x y",
// E lines "i j k" (0-based, counterclockwise). '#' starts a comment.
Mesh import_mesh(const std::string& path);

void export_mesh(const Mesh& mesh, const std::string& path);

// Four-way similar split of every triangle; h halves on structured meshes.
Mesh refine_uniform(const Mesh& mesh);

// Rebuilds edge topology and diameters from vertices/elements and checks
// the mesh invariants. Throws std::runtime_error with context on failure.
void finalize_mesh(Mesh& mesh);

}  // namespace ldg
