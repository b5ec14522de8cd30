#include "ring/lift.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ring/errors.hpp"
#include "ring/field_io.hpp"
#include "ring/hopf.hpp"
#include "ring/winding.hpp"

namespace ring {

namespace {

// The measured quadratic-differential constant must be clean enough that the
// lift geometry is meaningful; reject fields whose deviation swamps it.
double checked_hopf_constant(const Field& u, const AnnulusGrid& grid, bool want_negative) {
  HopfReport rep = hopf_constant_check(u, grid);
  const double c = rep.c_estimate;
  if (want_negative && c >= 0.0)
    throw DomainError("lift_catenoid_type: field constant is not negative");
  if (!want_negative && c <= 0.0)
    throw DomainError("lift_helicoid_type: field constant is not positive");
  const double dev = rep.max_real_deviation + rep.max_imag_part;
  if (dev > 0.25 * std::abs(c) + 1e-9)
    throw NumericalError("lift: field constant deviation too large for a graph lift");
  return c;
}

int outer_winding(const Field& u, const AnnulusGrid& grid) {
  return winding_degree(u, 1.0, std::max(grid.n_theta, 64));
}

} // namespace

SurfaceMesh SurfaceMesh::from_grid(int rows, int cols,
                                   const std::function<V3(int, int)>& position) {
  if (rows < 2 || cols < 2)
    throw DomainError("SurfaceMesh: grid needs at least 2x2 vertices");
  SurfaceMesh mesh;
  mesh.n_rows = rows;
  mesh.n_cols = cols;
  mesh.vertices.reserve(static_cast<size_t>(rows) * cols);
  mesh.boundary.assign(static_cast<size_t>(rows) * cols, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      mesh.vertices.push_back(position(i, j));
      if (i == 0 || i == rows - 1)
        mesh.boundary[static_cast<size_t>(mesh.index(i, j))] = 1;
    }
  mesh.quads.reserve(static_cast<size_t>(rows - 1) * (cols - 1));
  for (int i = 0; i + 1 < rows; ++i)
    for (int j = 0; j + 1 < cols; ++j)
      mesh.quads.push_back({mesh.index(i, j), mesh.index(i + 1, j),
                            mesh.index(i + 1, j + 1), mesh.index(i, j + 1)});
  return mesh;
}

double mesh_resolution(const SurfaceMesh& mesh) {
  auto dist = [&](int a, int b) {
    const auto& p = mesh.vertices[static_cast<size_t>(a)];
    const auto& q = mesh.vertices[static_cast<size_t>(b)];
    return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z);
  };
  double longest = 0.0;
  for (const auto& f : mesh.quads)
    for (int e = 0; e < 4; ++e)
      longest = std::max(longest, dist(f[static_cast<size_t>(e)], f[static_cast<size_t>((e + 1) % 4)]));
  return longest;
}

SurfaceMesh lift_catenoid_type(const Field& u, const AnnulusGrid& grid) {
  const double c = checked_hopf_constant(u, grid, /*want_negative=*/true);
  const double a = 2.0 * std::sqrt(-c);
  // Duplicate the seam column so the boundary circles close.
  SurfaceMesh mesh = SurfaceMesh::from_grid(
      grid.n_r, grid.n_theta + 1, [&](int i, int j) {
        const double r = grid.r(i);
        const double theta = grid.theta(j % grid.n_theta);
        const FieldSample s = u.at(r, theta);
        return SurfaceMesh::V3{s.u.real(), s.u.imag(), a * std::log(r)};
      });
  mesh.metadata = {{"c", c},
                   {"p", outer_winding(u, grid)},
                   {"rho", grid.rho},
                   {"kind", "catenoid"}};
  return mesh;
}

SurfaceMesh lift_helicoid_type(const Field& u, const AnnulusGrid& grid) {
  const double c = checked_hopf_constant(u, grid, /*want_negative=*/false);
  const double a = 2.0 * std::sqrt(c);
  SurfaceMesh mesh = SurfaceMesh::from_grid(
      grid.n_r, grid.n_theta + 1, [&](int i, int j) {
        const double r = grid.r(i);
        const FieldSample s = u.at(r, grid.theta(j % grid.n_theta));
        return SurfaceMesh::V3{s.u.real(), s.u.imag(), -a * j * grid.dtheta()};
      });
  // The sheet is not periodic in height, so the angular edges are genuine
  // boundary too.
  for (int i = 0; i < mesh.n_rows; ++i) {
    mesh.boundary[static_cast<size_t>(mesh.index(i, 0))] = 1;
    mesh.boundary[static_cast<size_t>(mesh.index(i, mesh.n_cols - 1))] = 1;
  }
  mesh.metadata = {{"c", c},
                   {"p", outer_winding(u, grid)},
                   {"rho", grid.rho},
                   {"kind", "helicoid"}};
  return mesh;
}

double conformality_residual(const Field& u, const Field& h, const AnnulusGrid& grid) {
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.n_r; ++i) {
    const double r = grid.r(i);
    for (int j = 0; j < grid.n_theta; ++j) {
      const double theta = grid.theta(j);
      const cplx phase = std::polar(0.5, -theta);
      const FieldSample su = u.at(r, theta);
      const FieldSample sh = h.at(r, theta);
      const cplx du = phase * (su.ur - cplx(0, 1) * su.ut / r);
      const cplx dubar = phase * (std::conj(su.ur) - cplx(0, 1) * std::conj(su.ut) / r);
      const cplx dh = phase * (sh.ur - cplx(0, 1) * sh.ut / r);
      worst = std::max(worst, std::abs(du * dubar + dh * dh));
    }
  }
  return worst;
}

double plane_symmetry_check(const SurfaceMesh& mesh, double z0) {
  if (mesh.vertices.empty())
    throw DomainError("plane_symmetry_check: empty mesh");
  double worst = 0.0;
  for (const auto& v : mesh.vertices) {
    const double rz = 2.0 * z0 - v.z;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : mesh.vertices) {
      const double d = std::hypot(v.x - w.x, v.y - w.y, rz - w.z);
      best = std::min(best, d);
      if (best == 0.0)
        break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

void check_faces(const SurfaceMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& f : mesh.quads)
    for (int idx : f)
      if (idx < 0 || idx >= nv)
        throw DomainError("export_mesh: face references a missing vertex");
}

void write_sidecar(const SurfaceMesh& mesh, const std::string& path) {
  if (mesh.metadata.is_null())
    return;
  std::ofstream out(path + ".json");
  if (!out)
    throw IoError("cannot open " + path + ".json for writing");
  out << mesh.metadata.dump(2) << '\n';
}

std::string vertex_line(const SurfaceMesh::V3& v, const char* prefix) {
  std::string line(prefix);
  line += format_double(v.x);
  line += ' ';
  line += format_double(v.y);
  line += ' ';
  line += format_double(v.z);
  return line;
}

} // namespace

void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path) {
  check_faces(mesh);
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open " + path + " for writing");
  if (format == MeshFormat::obj) {
    for (const auto& v : mesh.vertices)
      out << vertex_line(v, "v ") << '\n';
    for (const auto& f : mesh.quads)
      out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
  } else {
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << '\n';
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.quads.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices)
      out << vertex_line(v, "") << '\n';
    for (const auto& f : mesh.quads)
      out << "4 " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << '\n';
  }
  if (!out)
    throw IoError("failed while writing " + path);
  out.close();
  write_sidecar(mesh, path);
}

namespace {

SurfaceMesh import_obj(std::istream& in, const std::string& path) {
  SurfaceMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag))
      continue;
    if (tag == "v") {
      SurfaceMesh::V3 v{};
      if (!(row >> v.x >> v.y >> v.z))
        throw IoError("malformed vertex line in " + path);
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 4> f{};
      if (!(row >> f[0] >> f[1] >> f[2] >> f[3]))
        throw IoError("malformed face line in " + path);
      for (auto& idx : f)
        idx -= 1;
      mesh.quads.push_back(f);
    }
  }
  return mesh;
}

SurfaceMesh import_ply(std::istream& in, const std::string& path) {
  std::string line;
  size_t n_vertices = 0, n_faces = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    if (tag == "element") {
      std::string what;
      size_t count = 0;
      row >> what >> count;
      if (what == "vertex")
        n_vertices = count;
      else if (what == "face")
        n_faces = count;
    } else if (tag == "end_header") {
      header_done = true;
      break;
    }
  }
  if (!header_done)
    throw IoError("missing end_header in " + path);
  SurfaceMesh mesh;
  for (size_t i = 0; i < n_vertices; ++i) {
    SurfaceMesh::V3 v{};
    if (!(in >> v.x >> v.y >> v.z))
      throw IoError("truncated vertex list in " + path);
    mesh.vertices.push_back(v);
  }
  for (size_t i = 0; i < n_faces; ++i) {
    int count = 0;
    std::array<int, 4> f{};
    if (!(in >> count) || count != 4 || !(in >> f[0] >> f[1] >> f[2] >> f[3]))
      throw IoError("truncated or non-quad face list in " + path);
    mesh.quads.push_back(f);
  }
  return mesh;
}

} // namespace

SurfaceMesh import_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path + " for reading");
  SurfaceMesh mesh =
      format == MeshFormat::obj ? import_obj(in, path) : import_ply(in, path);
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& f : mesh.quads)
    for (int idx : f)
      if (idx < 0 || idx >= nv)
        throw IoError("face references a missing vertex in " + path);
  return mesh;
}

} // namespace ring
