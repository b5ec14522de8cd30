#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ring/field.hpp"
#include "ring/grid.hpp"

namespace ring {

// Quad mesh over a rectangular parameter grid, vertices stored row-major.
// boundary marks vertices on the parameter-domain boundary.
struct SurfaceMesh {
  struct V3 {
    double x, y, z;
  };

  std::vector<V3> vertices;
  std::vector<std::array<int, 4>> quads;
  int n_rows = 0, n_cols = 0;
  std::vector<std::uint8_t> boundary;
  nlohmann::json metadata;

  int index(int row, int col) const { return row * n_cols + col; }

  static SurfaceMesh from_grid(int rows, int cols,
                               const std::function<V3(int, int)>& position);
};

// Longest edge over all faces; the scale against which geometric checks on
// the mesh make sense.
double mesh_resolution(const SurfaceMesh& mesh);

// Graph of (u, 2*sqrt(|c|) ln r) with c the measured Hopf-type constant of u,
// which must be negative. The additive constant places the outer boundary
// circle at z = 0; the angular seam column is duplicated so the tube closes
// visually. A degree-p map covers each boundary circle p times.
SurfaceMesh lift_catenoid_type(const Field& u, const AnnulusGrid& grid);

// Graph of (u, -2*sqrt(c) theta) for c > 0: a non-closed sheet over
// theta in [0, 2*pi], deliberately left with a seam at theta = 0 because the
// height is genuinely multivalued in angle.
SurfaceMesh lift_helicoid_type(const Field& u, const AnnulusGrid& grid);

// sup over interior nodes of |H_u + (dh/dz)^2| where H_u is the quadratic
// differential of u; zero exactly when (u, h) is a conformal pair.
double conformality_residual(const Field& u, const Field& h, const AnnulusGrid& grid);

// One-sided Hausdorff-type distance between the mesh and its reflection
// across the plane {z = z0}: max over reflected vertices of the distance to
// the nearest original vertex.
double plane_symmetry_check(const SurfaceMesh& mesh, double z0);

enum class MeshFormat { obj, ply };

// ASCII export, deterministic vertex order. A non-null metadata object is
// written to <path>.json alongside the mesh.
void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path);
SurfaceMesh import_mesh(const std::string& path, MeshFormat format);

// a * ln r, the height profile of catenoid-type lifts
class LogHeight : public Field {
public:
  explicit LogHeight(double a) : a_(a) {}
  FieldSample at(double r, double theta) const override {
    (void)theta;
    return {a_ * std::log(r), a_ / r, 0.0};
  }

private:
  double a_;
};

// a * theta, the height profile of helicoid-type lifts
class AzimuthHeight : public Field {
public:
  explicit AzimuthHeight(double a) : a_(a) {}
  FieldSample at(double r, double theta) const override {
    (void)r;
    return {a_ * theta, 0.0, a_};
  }

private:
  double a_;
};

} // namespace ring
