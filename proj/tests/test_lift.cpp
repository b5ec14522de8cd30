#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ring/errors.hpp"
#include "ring/field.hpp"
#include "ring/grid.hpp"
#include "ring/holo.hpp"
#include "ring/lift.hpp"
#include "ring/radial.hpp"
#include "ring/winding.hpp"

using ring::AnnulusGrid;
using ring::cplx;
using ring::pi;
using ring::SurfaceMesh;

namespace {

double axis_distance(const SurfaceMesh::V3& v) { return std::hypot(v.x, v.y); }

SurfaceMesh::V3 cross(const SurfaceMesh::V3& a, const SurfaceMesh::V3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

SurfaceMesh::V3 quad_normal(const SurfaceMesh& m, const std::array<int, 4>& f) {
  const auto& p0 = m.vertices[static_cast<size_t>(f[0])];
  const auto& p1 = m.vertices[static_cast<size_t>(f[1])];
  const auto& p3 = m.vertices[static_cast<size_t>(f[3])];
  const SurfaceMesh::V3 e1{p1.x - p0.x, p1.y - p0.y, p1.z - p0.z};
  const SurfaceMesh::V3 e2{p3.x - p0.x, p3.y - p0.y, p3.z - p0.z};
  return cross(e1, e2);
}

} // namespace

TEST_CASE("from_grid builds a row-major quad grid with tagged rims") {
  const auto mesh = SurfaceMesh::from_grid(8, 8, [](int i, int j) {
    return SurfaceMesh::V3{double(j), double(i), 0.0};
  });
  CHECK(mesh.vertices.size() == 64);
  CHECK(mesh.quads.size() == 49);
  CHECK(mesh.index(2, 3) == 19);
  CHECK(mesh.vertices[19].x == 3.0);
  CHECK(mesh.vertices[19].y == 2.0);
  int tagged = 0;
  for (auto b : mesh.boundary)
    tagged += b;
  CHECK(tagged == 16);
  for (const auto& f : mesh.quads)
    for (int idx : f) {
      CHECK(idx >= 0);
      CHECK(idx < 64);
    }
  CHECK(ring::mesh_resolution(mesh) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SurfaceMesh::from_grid(1, 5, [](int, int) {
                    return SurfaceMesh::V3{0, 0, 0};
                  }),
                  ring::DomainError);
}

TEST_CASE("degree-1 catenoid lift matches the cosh profile exactly") {
  const double rho = 0.5;
  const ring::RadialSolution u(1, rho, ring::RadialKind::catenoidal);
  const AnnulusGrid grid(rho, 41, 64);
  const auto mesh = ring::lift_catenoid_type(u, grid);

  CHECK(mesh.n_rows == 41);
  CHECK(mesh.n_cols == 65);
  const double c = mesh.metadata.at("c").get<double>();
  CHECK(c == doctest::Approx(-rho / ((1 + rho) * (1 + rho))).epsilon(1e-12));
  CHECK(mesh.metadata.at("p").get<int>() == 1);
  CHECK(mesh.metadata.at("kind").get<std::string>() == "catenoid");

  const double neck = 2.0 * std::sqrt(-c);
  const double z_mid = std::sqrt(-c) * std::log(rho);
  for (const auto& v : mesh.vertices) {
    CHECK(axis_distance(v) ==
          doctest::Approx(neck * std::cosh((v.z - z_mid) / neck)).epsilon(1e-12));
  }
  // outer rim sits in the z = 0 plane, both rims on the unit cylinder
  for (int j = 0; j < mesh.n_cols; ++j) {
    CHECK(std::abs(mesh.vertices[static_cast<size_t>(mesh.index(mesh.n_rows - 1, j))].z) < 1e-15);
    CHECK(axis_distance(mesh.vertices[static_cast<size_t>(mesh.index(0, j))]) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(axis_distance(mesh.vertices[static_cast<size_t>(mesh.index(mesh.n_rows - 1, j))]) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
  // seam column repeats the first column
  for (int i = 0; i < mesh.n_rows; ++i) {
    const auto& a = mesh.vertices[static_cast<size_t>(mesh.index(i, 0))];
    const auto& b = mesh.vertices[static_cast<size_t>(mesh.index(i, mesh.n_cols - 1))];
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
  }
}

TEST_CASE("degree-2 catenoid lift has identical meridians and a 2-covered rim") {
  const double rho = 0.4;
  const ring::RadialSolution u(2, rho, ring::RadialKind::catenoidal);
  const AnnulusGrid grid(rho, 31, 48);
  const auto mesh = ring::lift_catenoid_type(u, grid);
  CHECK(mesh.metadata.at("p").get<int>() == 2);

  for (int i = 0; i < mesh.n_rows; ++i) {
    const auto& first = mesh.vertices[static_cast<size_t>(mesh.index(i, 0))];
    for (int j = 1; j < mesh.n_cols; ++j) {
      const auto& v = mesh.vertices[static_cast<size_t>(mesh.index(i, j))];
      CHECK(v.z == first.z);
      CHECK(axis_distance(v) == doctest::Approx(axis_distance(first)).epsilon(1e-14));
    }
  }

  std::vector<cplx> rim;
  for (int j = 0; j < mesh.n_cols - 1; ++j) {
    const auto& v = mesh.vertices[static_cast<size_t>(mesh.index(0, j))];
    rim.emplace_back(v.x, v.y);
  }
  CHECK(ring::winding_degree(ring::BoundaryTrace{rim, rho}) == 2);
}

TEST_CASE("catenoid lift refuses flat and helicoidal inputs") {
  const AnnulusGrid grid(0.5, 21, 32);
  const ring::SampledField flat([](double, double) { return cplx(1.0, 0.0); }, 1e-4);
  CHECK_THROWS_AS(ring::lift_catenoid_type(flat, grid), ring::DomainError);
  const ring::RadialSolution tw(1, 0.5, ring::RadialKind::helicoidal);
  CHECK_THROWS_AS(ring::lift_catenoid_type(tw, grid), ring::DomainError);
  CHECK_THROWS_AS(ring::lift_helicoid_type(flat, grid), ring::DomainError);
}

TEST_CASE("helicoid lift spans the full pitch and stays linear in angle") {
  const double rho = 0.5;
  const ring::RadialSolution u(2, rho, ring::RadialKind::helicoidal);
  const AnnulusGrid grid(rho, 21, 64);
  const auto mesh = ring::lift_helicoid_type(u, grid);

  const double c = mesh.metadata.at("c").get<double>();
  CHECK(c == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  double z_min = 0.0, z_max = 0.0;
  for (const auto& v : mesh.vertices) {
    z_min = std::min(z_min, v.z);
    z_max = std::max(z_max, v.z);
  }
  CHECK(z_max - z_min == doctest::Approx(2.0 * std::sqrt(c) * 2.0 * pi).epsilon(1e-12));

  // height depends on the angle column alone, linearly
  const double step = -2.0 * std::sqrt(c) * grid.dtheta();
  for (int j = 0; j < mesh.n_cols; ++j) {
    const double expected = step * j;
    for (int i = 0; i < mesh.n_rows; ++i)
      CHECK(mesh.vertices[static_cast<size_t>(mesh.index(i, j))].z ==
            doctest::Approx(expected).epsilon(1e-13));
  }

  // the sheet is bounded by both rims and both seam edges
  for (int i = 0; i < mesh.n_rows; ++i) {
    CHECK(mesh.boundary[static_cast<size_t>(mesh.index(i, 0))] == 1);
    CHECK(mesh.boundary[static_cast<size_t>(mesh.index(i, mesh.n_cols - 1))] == 1);
  }
  CHECK(mesh.boundary[static_cast<size_t>(mesh.index(0, 5))] == 1);
  CHECK(mesh.boundary[static_cast<size_t>(mesh.index(mesh.n_rows / 2, 5))] == 0);
}

TEST_CASE("conformality residual vanishes for matched pairs") {
  const double rho = 0.5;
  const AnnulusGrid grid(rho, 41, 48);
  const ring::RadialSolution u1(1, rho, ring::RadialKind::catenoidal);
  const double c1 = ring::radial_hopf_constant(1, rho, ring::RadialKind::catenoidal);

  const ring::LogHeight matched(2.0 * std::sqrt(-c1));
  CHECK(ring::conformality_residual(u1, matched, grid) < 1e-13);

  // a flat height leaves the full quadratic differential behind
  const ring::LogHeight zero(0.0);
  const double res = ring::conformality_residual(u1, zero, grid);
  CHECK(res >= 0.99 * std::abs(c1));
  CHECK(res <= 1.01 * std::abs(c1) / (rho * rho));

  const ring::RadialSolution tw(1, rho, ring::RadialKind::helicoidal);
  const double c2 = ring::radial_hopf_constant(1, rho, ring::RadialKind::helicoidal);
  const ring::AzimuthHeight screw(-2.0 * std::sqrt(c2));
  CHECK(ring::conformality_residual(tw, screw, grid) < 1e-13);

  const auto holo = ring::build_solution(ring::make_zero_set(1, -1, rho, {}), 1e-12);
  CHECK(ring::conformality_residual(holo, zero, grid) < 1e-13);
}

TEST_CASE("conformality residual tracks the accuracy of the sampled field") {
  const double rho = 0.5;
  const double c = ring::radial_hopf_constant(1, rho, ring::RadialKind::catenoidal);
  const ring::LogHeight matched(2.0 * std::sqrt(-c));
  const AnnulusGrid grid(rho, 21, 16);
  auto value = [&](double r, double theta) {
    const double s = (r + rho / r) / (1.0 + rho);
    return std::polar(s, theta);
  };
  const ring::SampledField coarse_u(value, 1e-2, 2);
  const ring::SampledField fine_u(value, 1e-3, 2);
  const double coarse = ring::conformality_residual(coarse_u, matched, grid);
  const double fine = ring::conformality_residual(fine_u, matched, grid);
  CHECK(coarse > 1e-8);
  CHECK(fine < 0.1 * coarse);
}

TEST_CASE("plane symmetry holds at the neck height and fails off it") {
  const double rho = 0.5;
  const ring::RadialSolution u(1, rho, ring::RadialKind::catenoidal);
  const AnnulusGrid grid(rho, 41, 64);
  const auto mesh = ring::lift_catenoid_type(u, grid);
  const double c = mesh.metadata.at("c").get<double>();
  const double z_mid = std::sqrt(-c) * std::log(rho);

  const double h = ring::mesh_resolution(mesh);
  CHECK(ring::plane_symmetry_check(mesh, z_mid) < h);
  CHECK(ring::plane_symmetry_check(mesh, z_mid + 0.1) > 0.15);
  CHECK_THROWS_AS(ring::plane_symmetry_check(SurfaceMesh{}, 0.0), ring::DomainError);
}

TEST_CASE("mesh export round-trips through obj and ply") {
  const double rho = 0.4;
  const ring::RadialSolution u(2, rho, ring::RadialKind::catenoidal);
  const auto mesh = ring::lift_catenoid_type(u, AnnulusGrid(rho, 9, 12));

  const auto dir = std::filesystem::temp_directory_path() / "ring_test_mesh";
  std::filesystem::create_directories(dir);

  for (auto format : {ring::MeshFormat::obj, ring::MeshFormat::ply}) {
    const auto path =
        (dir / (format == ring::MeshFormat::obj ? "m.obj" : "m.ply")).string();
    ring::export_mesh(mesh, format, path);
    const auto back = ring::import_mesh(path, format);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    REQUIRE(back.quads.size() == mesh.quads.size());
    for (size_t k = 0; k < mesh.vertices.size(); ++k) {
      CHECK(back.vertices[k].x == mesh.vertices[k].x);
      CHECK(back.vertices[k].y == mesh.vertices[k].y);
      CHECK(back.vertices[k].z == mesh.vertices[k].z);
    }
    for (size_t k = 0; k < mesh.quads.size(); ++k)
      CHECK(back.quads[k] == mesh.quads[k]);

    std::ifstream side(path + ".json");
    REQUIRE(side.good());
    const auto meta = nlohmann::json::parse(side);
    CHECK(meta.at("p").get<int>() == 2);
    CHECK(meta.at("rho").get<double>() == rho);
  }

  // neighbouring faces agree on orientation
  for (int j = 0; j + 1 < mesh.n_cols - 1; ++j) {
    const auto na = quad_normal(mesh, mesh.quads[static_cast<size_t>(j)]);
    const auto nb = quad_normal(mesh, mesh.quads[static_cast<size_t>(j + 1)]);
    CHECK(na.x * nb.x + na.y * nb.y + na.z * nb.z > 0.0);
  }

  SurfaceMesh broken = mesh;
  broken.quads[0][2] = 9999;
  const auto bad = (dir / "bad.obj").string();
  CHECK_THROWS_AS(ring::export_mesh(broken, ring::MeshFormat::obj, bad), ring::DomainError);
  CHECK_THROWS_AS(ring::import_mesh((dir / "missing.obj").string(), ring::MeshFormat::obj),
                  ring::IoError);
  std::ofstream(bad) << "v 0 0\n";
  CHECK_THROWS_AS(ring::import_mesh(bad, ring::MeshFormat::obj), ring::IoError);
  std::filesystem::remove_all(dir);
}
