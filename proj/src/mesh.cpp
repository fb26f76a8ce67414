#include "ldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ldg {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (b.y() - a.y()) * (c.x() - a.x()));
}

}  // namespace

int Mesh::num_boundary_edges() const {
  int n = 0;
  for (const auto& e : edges)
    if (e.is_boundary()) ++n;
  return n;
}

double Mesh::element_area(int e) const {
  const auto& t = elements[e];
  return signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int e = 0; e < num_elements(); ++e) a += element_area(e);
  return a;
}

Eigen::Vector2d Mesh::centroid(int e) const {
  const auto& t = elements[e];
  return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
}

void finalize_mesh(Mesh& mesh) {
  mesh.edges.clear();
  mesh.element_diameters.assign(mesh.elements.size(), 0.0);
  mesh.mesh_size = 0.0;

  const int nv = static_cast<int>(mesh.vertices.size());
  std::map<std::pair<int, int>, int> edge_of;  // sorted vertex pair -> edge id

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& t = mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv)
        throw std::runtime_error("mesh: element " + std::to_string(e) +
                                 " references invalid vertex " +
                                 std::to_string(t[k]));
    }
    const double area = mesh.element_area(e);
    if (area <= 1e-14)
      throw std::runtime_error("mesh: inverted or degenerate element " +
                               std::to_string(e) + " (area " +
                               std::to_string(area) + ")");

    double diam = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      const Eigen::Vector2d pa = mesh.vertices[a], pb = mesh.vertices[b];
      const double len = (pb - pa).norm();
      diam = std::max(diam, len);

      auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        Edge edge;
        edge.v = {a, b};  // traversal order of the left element
        edge.left = e;
        edge.length = len;
        // CCW traversal: outward normal is the tangent rotated by -90 deg
        const Eigen::Vector2d tang = (pb - pa) / len;
        edge.normal = Eigen::Vector2d(tang.y(), -tang.x());
        edge_of.emplace(key, mesh.num_edges());
        mesh.edges.push_back(edge);
      } else {
        Edge& edge = mesh.edges[it->second];
        if (edge.right >= 0)
          throw std::runtime_error("mesh: non-manifold edge (" +
                                   std::to_string(key.first) + "," +
                                   std::to_string(key.second) +
                                   ") shared by more than two elements");
        edge.right = e;
      }
    }
    mesh.element_diameters[e] = diam;
    mesh.mesh_size = std::max(mesh.mesh_size, diam);
  }
}

Mesh build_uniform_triangulation(int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_triangulation: n must be >= 1");

  Mesh mesh;
  const double dx = 1.0 / n;
  mesh.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.emplace_back(i * dx, j * dx);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.elements.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // diagonal from (i,j) to (i+1,j+1)
      mesh.elements.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      mesh.elements.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  finalize_mesh(mesh);
  return mesh;
}

Mesh import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_mesh: cannot open " + path);

  // strip comments, gather tokens line by line
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }

  size_t pos = 0;
  auto next = [&](const char* what) -> std::string {
    if (pos >= tokens.size())
      throw std::runtime_error(std::string("import_mesh: unexpected end of file, expected ") + what);
    return tokens[pos++];
  };
  auto next_int = [&](const char* what) {
    const std::string t = next(what);
    try {
      size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("import_mesh: bad integer '") + t + "' for " + what);
    }
  };
  auto next_real = [&](const char* what) {
    const std::string t = next(what);
    try {
      size_t used = 0;
      double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("import_mesh: bad number '") + t + "' for " + what);
    }
  };

  if (next("'vertices' keyword") != "vertices")
    throw std::runtime_error("import_mesh: header must start with 'vertices'");
  const int nv = next_int("vertex count");
  if (next("'elements' keyword") != "elements")
    throw std::runtime_error("import_mesh: header must contain 'elements'");
  const int ne = next_int("element count");
  if (nv < 3 || ne < 1)
    throw std::runtime_error("import_mesh: need at least 3 vertices and 1 element");

  Mesh mesh;
  mesh.vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    const double x = next_real("vertex x");
    const double y = next_real("vertex y");
    mesh.vertices.emplace_back(x, y);
  }
  mesh.elements.reserve(ne);
  for (int e = 0; e < ne; ++e) {
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) t[k] = next_int("element vertex index");
    mesh.elements.push_back(t);
  }
  if (pos != tokens.size())
    throw std::runtime_error("import_mesh: trailing data after last element");

  finalize_mesh(mesh);
  return mesh;
}

void export_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_mesh: cannot open " + path);
  out << "vertices " << mesh.vertices.size() << " elements "
      << mesh.elements.size() << "\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << "\n";
  for (const auto& t : mesh.elements)
    out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh fine;
  fine.vertices = mesh.vertices;

  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    midpoint.emplace(key, id);
    return id;
  };

  fine.elements.reserve(4 * mesh.elements.size());
  for (const auto& t : mesh.elements) {
    const int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
    fine.elements.push_back({t[0], m01, m20});
    fine.elements.push_back({m01, t[1], m12});
    fine.elements.push_back({m20, m12, t[2]});
    fine.elements.push_back({m01, m12, m20});
  }
  finalize_mesh(fine);
  return fine;
}

}  // namespace ldg
