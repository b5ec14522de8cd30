#include "ring/bifurcate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ring/errors.hpp"
#include "ring/linalg.hpp"
#include "ring/spectrum.hpp"
#include "ring/winding.hpp"

namespace ring {

namespace {

constexpr double kPi = 3.14159265358979323846;

using V3 = std::array<double, 3>;

V3 operator+(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 operator-(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 operator*(double s, const V3& a) { return {s * a[0], s * a[1], s * a[2]}; }

double dotv(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

V3 crossv(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

int fold_i(int i) { return i < 0 ? -i : i; }

int fold_j(int j, int n_theta) {
  if (j < 0)
    return -1 - j;
  if (j >= n_theta)
    return 2 * n_theta - 1 - j;
  return j;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double c : v)
    m = std::max(m, std::abs(c));
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v)
    s += c * c;
  return std::sqrt(s);
}

// Mean curvature of the perturbed surface by central differences. Positions
// and normals of the background family are cached on the grid extended one
// step past each symmetry line and evaluated at the true (signed or
// overshooting) coordinates, so folding only ever applies to u.
class CurvatureStencil {
public:
  CurvatureStencil(int p, double t, int n_r, int n_theta)
      : n_r_(n_r), n_theta_(n_theta), hr_(1.0 / (n_r - 1)), ht_(kPi / n_theta) {
    const CatenoidFamily family(p, t);
    const int cells = (n_r_ + 1) * (n_theta_ + 2);
    X_.resize(cells);
    N_.resize(cells);
    Y_.resize(cells);
    for (int i = -1; i < n_r_; ++i)
      for (int j = -1; j <= n_theta_; ++j) {
        const double r = i * hr_;
        const double th = (j + 0.5) * ht_;
        X_[ext(i, j)] = family.position(r, th);
        N_[ext(i, j)] = family.normal(r, th);
      }
    const std::vector<double> zero(static_cast<size_t>(n_r_) * n_theta_, 0.0);
    bias_ = raw(zero);
  }

  std::vector<double> raw(const std::vector<double>& u) const {
    for (int i = -1; i < n_r_; ++i)
      for (int j = -1; j <= n_theta_; ++j) {
        const int e = ext(i, j);
        const double uv = u[static_cast<size_t>(fold_i(i)) * n_theta_ + fold_j(j, n_theta_)];
        Y_[e] = X_[e] + uv * N_[e];
      }
    std::vector<double> H(static_cast<size_t>(n_r_) * n_theta_, 0.0);
    const double inv2hr = 1.0 / (2.0 * hr_);
    const double inv2ht = 1.0 / (2.0 * ht_);
    const double invhr2 = 1.0 / (hr_ * hr_);
    const double invht2 = 1.0 / (ht_ * ht_);
    const double inv4 = inv2hr * inv2ht;
    for (int i = 0; i <= n_r_ - 2; ++i)
      for (int j = 0; j < n_theta_; ++j) {
        const V3& c = Y_[ext(i, j)];
        const V3& rp = Y_[ext(i + 1, j)];
        const V3& rm = Y_[ext(i - 1, j)];
        const V3& tp = Y_[ext(i, j + 1)];
        const V3& tm = Y_[ext(i, j - 1)];
        const V3 Yr = inv2hr * (rp - rm);
        const V3 Yt = inv2ht * (tp - tm);
        const V3 Yrr = invhr2 * ((rp - c) - (c - rm));
        const V3 Ytt = invht2 * ((tp - c) - (c - tm));
        const V3 Yrt =
            inv4 * ((Y_[ext(i + 1, j + 1)] - Y_[ext(i + 1, j - 1)]) -
                    (Y_[ext(i - 1, j + 1)] - Y_[ext(i - 1, j - 1)]));
        const double E = dotv(Yr, Yr);
        const double F = dotv(Yr, Yt);
        const double G = dotv(Yt, Yt);
        const double W = E * G - F * F;
        const V3 cr = crossv(Yr, Yt);
        const double nc = std::sqrt(dotv(cr, cr));
        if (!(W > 0.0) || !(nc > 0.0) || !std::isfinite(W))
          throw NumericalError("mean curvature: perturbed surface is not immersed at a node");
        const V3 n = (1.0 / nc) * cr;
        const double e = dotv(Yrr, n);
        const double f = dotv(Yrt, n);
        const double g = dotv(Ytt, n);
        H[static_cast<size_t>(i) * n_theta_ + j] = (e * G - 2.0 * f * F + g * E) / (2.0 * W);
      }
    return H;
  }

  std::vector<double> residual(const std::vector<double>& u) const {
    std::vector<double> H = raw(u);
    for (size_t k = 0; k < H.size(); ++k)
      H[k] -= bias_[k];
    return H;
  }

  const std::vector<double>& bias() const { return bias_; }

private:
  int n_r_, n_theta_;
  double hr_, ht_;
  std::vector<V3> X_, N_;
  mutable std::vector<V3> Y_;
  std::vector<double> bias_;

  int ext(int i, int j) const { return (i + 1) * (n_theta_ + 2) + (j + 1); }
};

// Radial block of half the stability operator for one angular cosine wave,
// symmetrized. The reflection at r = 0 doubles the first superdiagonal; the
// similarity diag(1, sqrt(2), ..., sqrt(2)) restores symmetry, and folding
// in the row scaling by E_i = t^2 p^2 cosh^2(tpr_i) turns the generalized
// problem into a standard symmetric tridiagonal one with weight
// W_i = (i == 0 ? 1 : 2) E_i.
struct WaveWeights {
  std::vector<double> einv;  // 1 / E_i on the interior rows
  std::vector<double> wsqrt; // sqrt(W_i)
  std::vector<double> winv;  // 1 / sqrt(W_i)
};

WaveWeights wave_weights(int p, double t, int n_r) {
  const int m = n_r - 1;
  const double hr = 1.0 / (n_r - 1);
  WaveWeights w;
  w.einv.resize(m);
  w.wsqrt.resize(m);
  w.winv.resize(m);
  for (int i = 0; i < m; ++i) {
    const double ch = std::cosh(t * p * i * hr);
    const double E = t * t * p * p * ch * ch;
    const double W = (i == 0 ? 1.0 : 2.0) * E;
    w.einv[i] = 1.0 / E;
    w.wsqrt[i] = std::sqrt(W);
    w.winv[i] = 1.0 / w.wsqrt[i];
  }
  return w;
}

Tridiagonal wave_block(int p, double t, int n_r, double lam_theta, const WaveWeights& w) {
  const int m = n_r - 1;
  const double hr = 1.0 / (n_r - 1);
  const double invhr2 = 1.0 / (hr * hr);
  Tridiagonal S;
  S.diag.resize(m);
  S.off.resize(m - 1);
  for (int i = 0; i < m; ++i) {
    const double ch = std::cosh(t * p * i * hr);
    const double sech2 = 1.0 / (ch * ch);
    const double cii = -2.0 * invhr2 + t * t * lam_theta + 2.0 * t * t * p * p * sech2;
    S.diag[i] = 0.5 * cii * w.einv[i];
  }
  for (int i = 0; i + 1 < m; ++i)
    S.off[i] = 0.5 * (2.0 * invhr2) * w.winv[i] * w.winv[i + 1];
  return S;
}

// Exact eigensolver-based inverse of half the discrete stability operator,
// cosine mode by cosine mode.
class WaveSolver {
public:
  WaveSolver(int p, double t, int n_r, int n_theta)
      : n_r_(n_r), n_theta_(n_theta), m_(n_r - 1), ht_(kPi / n_theta) {
    weights_ = wave_weights(p, t, n_r);
    cost_.resize(static_cast<size_t>(n_theta_) * n_theta_);
    for (int n = 0; n < n_theta_; ++n)
      for (int j = 0; j < n_theta_; ++j)
        cost_[static_cast<size_t>(n) * n_theta_ + j] = std::cos(n * (j + 0.5) * ht_);
    eigs_.resize(n_theta_);
    vecs_.resize(n_theta_);
    double lam_max = 0.0;
    for (int n = 0; n < n_theta_; ++n) {
      const double lam_theta = (2.0 * std::cos(n * ht_) - 2.0) / (ht_ * ht_);
      const Tridiagonal S = wave_block(p, t, n_r, lam_theta, weights_);
      eigs_[n] = lowest_eigenvalues(S, m_);
      vecs_[n].reserve(m_);
      for (int k = 0; k < m_; ++k) {
        vecs_[n].push_back(inverse_iteration(S, eigs_[n][k]));
        lam_max = std::max(lam_max, std::abs(eigs_[n][k]));
      }
    }
    clamp_ = 1e-8 * lam_max;
  }

  // In-place solve of (1/2) J v_out = v_in on the full grid layout, the rim
  // row passed through as zero.
  void solve(std::vector<double>& v) const {
    std::vector<double> modes(static_cast<size_t>(n_theta_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* row = v.data() + static_cast<size_t>(i) * n_theta_;
      for (int n = 0; n < n_theta_; ++n) {
        const double* cs = cost_.data() + static_cast<size_t>(n) * n_theta_;
        double s = 0.0;
        for (int j = 0; j < n_theta_; ++j)
          s += row[j] * cs[j];
        modes[static_cast<size_t>(n) * m_ + i] = s * (n == 0 ? 1.0 : 2.0) / n_theta_;
      }
    }
    std::vector<double> rhs_hat(m_), sol(m_);
    for (int n = 0; n < n_theta_; ++n) {
      double* b = modes.data() + static_cast<size_t>(n) * m_;
      for (int i = 0; i < m_; ++i) {
        rhs_hat[i] = weights_.wsqrt[i] * b[i];
        sol[i] = 0.0;
      }
      for (int k = 0; k < m_; ++k) {
        const std::vector<double>& phi = vecs_[n][k];
        double proj = 0.0;
        for (int i = 0; i < m_; ++i)
          proj += phi[i] * rhs_hat[i];
        double lam = eigs_[n][k];
        const double mag = std::max(std::abs(lam), clamp_);
        lam = lam < 0.0 ? -mag : mag;
        proj /= lam;
        for (int i = 0; i < m_; ++i)
          sol[i] += proj * phi[i];
      }
      for (int i = 0; i < m_; ++i)
        b[i] = weights_.winv[i] * sol[i];
    }
    for (int i = 0; i < m_; ++i) {
      double* row = v.data() + static_cast<size_t>(i) * n_theta_;
      for (int j = 0; j < n_theta_; ++j) {
        double s = 0.0;
        for (int n = 0; n < n_theta_; ++n)
          s += modes[static_cast<size_t>(n) * m_ + i] * cost_[static_cast<size_t>(n) * n_theta_ + j];
        row[j] = s;
      }
    }
    for (int j = 0; j < n_theta_; ++j)
      v[static_cast<size_t>(n_r_ - 1) * n_theta_ + j] = 0.0;
  }

private:
  int n_r_, n_theta_, m_;
  double ht_;
  WaveWeights weights_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> eigs_;
  std::vector<std::vector<std::vector<double>>> vecs_;
  double clamp_ = 0.0;
};

struct NewtonOutcome {
  double residual_sup = 0.0;
  int iterations = 0;
};

// Newton iteration on the curvature residual, either at fixed t (cvec null)
// or bordered with the affine constraint <u, cvec> + ct * t = target, which
// then frees t. GMRES runs on finite-difference directional derivatives,
// right-preconditioned by the spectral solve.
NewtonOutcome bordered_newton(PerturbationGrid& pg, const std::vector<double>* cvec, double ct,
                              double target, double tol, int max_iter) {
  pg.validate();
  const bool t_free = cvec != nullptr;
  const size_t N = pg.u.size();
  const size_t total = t_free ? N + 1 : N;
  const double ctol = 1e-11 * (1.0 + std::abs(target));

  double built_t = std::numeric_limits<double>::quiet_NaN();
  std::unique_ptr<CurvatureStencil> stencil;
  std::unique_ptr<WaveSolver> solver;

  double prev_rn = std::numeric_limits<double>::infinity();
  int growth = 0;
  NewtonOutcome out;

  for (int iter = 0; iter <= max_iter; ++iter) {
    if (!(built_t == pg.t)) {
      stencil = std::make_unique<CurvatureStencil>(pg.p, pg.t, pg.n_r, pg.n_theta);
      solver = std::make_unique<WaveSolver>(pg.p, pg.t, pg.n_r, pg.n_theta);
      built_t = pg.t;
    }
    std::vector<double> R = stencil->residual(pg.u);
    const double rn = sup_norm(R);
    const double cval =
        t_free ? inner_product(pg, pg.u, *cvec) + ct * pg.t - target : 0.0;
    out.residual_sup = rn;
    out.iterations = iter;
    if (rn < tol && std::abs(cval) <= ctol)
      return out;
    if (iter == max_iter)
      break;
    if (rn > prev_rn) {
      if (++growth >= 3)
        throw NumericalError("Newton diverged: the residual grew three times in a row");
    } else {
      growth = 0;
    }
    prev_rn = rn;

    std::vector<double> Rt;
    if (t_free) {
      const double et = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(pg.t));
      const CurvatureStencil plus(pg.p, pg.t + et, pg.n_r, pg.n_theta);
      const CurvatureStencil minus(pg.p, pg.t - et, pg.n_r, pg.n_theta);
      Rt = plus.residual(pg.u);
      const std::vector<double> Rm = minus.residual(pg.u);
      for (size_t k = 0; k < N; ++k)
        Rt[k] = (Rt[k] - Rm[k]) / (2.0 * et);
    }

    const double unorm = norm2(pg.u);
    std::vector<double> up(N), um(N);
    const LinearOp op = [&](const std::vector<double>& y, std::vector<double>& z) {
      std::vector<double> du(y.begin(), y.begin() + N);
      solver->solve(du);
      const double dn = norm2(du);
      if (dn > 0.0) {
        const double eps = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + unorm) / dn;
        for (size_t k = 0; k < N; ++k) {
          up[k] = pg.u[k] + eps * du[k];
          um[k] = pg.u[k] - eps * du[k];
        }
        const std::vector<double> Rp = stencil->residual(up);
        const std::vector<double> Rm = stencil->residual(um);
        for (size_t k = 0; k < N; ++k)
          z[k] = (Rp[k] - Rm[k]) / (2.0 * eps);
      } else {
        std::fill(z.begin(), z.begin() + N, 0.0);
      }
      if (t_free) {
        const double yt = y[N];
        for (size_t k = 0; k < N; ++k)
          z[k] += yt * Rt[k];
        z[N] = inner_product(pg, du, *cvec) + ct * yt;
      }
    };

    std::vector<double> rhs(total, 0.0);
    for (size_t k = 0; k < N; ++k)
      rhs[k] = -R[k];
    if (t_free)
      rhs[N] = -cval;

    const int gmax = static_cast<int>(std::min<size_t>(total, 300));
    const GmresResult lin = gmres(op, rhs, 1e-6, gmax);

    std::vector<double> du(lin.x.begin(), lin.x.begin() + N);
    solver->solve(du);
    for (size_t k = 0; k < N; ++k)
      pg.u[k] += du[k];
    if (t_free)
      pg.t += lin.x[N];
    if (sup_norm(pg.u) >= 1.0)
      throw NumericalError("Newton left the graph neighborhood: sup|u| reached 1");
    if (!(pg.t > 0.0) || !std::isfinite(pg.t))
      throw NumericalError("Newton drove the family parameter out of range");
  }
  throw NumericalError("Newton did not reach the tolerance within max_iter iterations");
}

double variance(const std::vector<double>& d) {
  double mean = 0.0;
  for (double c : d)
    mean += c;
  mean /= static_cast<double>(d.size());
  double var = 0.0;
  for (double c : d)
    var += (c - mean) * (c - mean);
  return var / static_cast<double>(d.size());
}

} // namespace

PerturbationGrid::PerturbationGrid(int p_in, double t_in, int n_r_in, int n_theta_in)
    : p(p_in), t(t_in), n_r(n_r_in), n_theta(n_theta_in),
      u(n_r_in > 0 && n_theta_in > 0 ? static_cast<size_t>(n_r_in) * n_theta_in : 0, 0.0) {
  validate();
}

double PerturbationGrid::htheta() const { return kPi / n_theta; }

double PerturbationGrid::value_folded(int i, int j) const {
  const int fi = fold_i(i);
  const int fj = fold_j(j, n_theta);
  if (fi >= n_r || fj < 0 || fj >= n_theta)
    throw DomainError("value_folded: index out of range even after one reflection");
  return u[static_cast<size_t>(fi) * n_theta + fj];
}

void PerturbationGrid::validate() const {
  if (p < 1)
    throw DomainError("perturbation grid: wrap count p must be at least 1");
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError("perturbation grid: family parameter t must be positive");
  if (n_r < 3 || n_theta < 2)
    throw DomainError("perturbation grid: need at least 3 radial rows and 2 angular columns");
  if (u.size() != static_cast<size_t>(n_r) * n_theta)
    throw DomainError("perturbation grid: value array does not match the declared shape");
  for (int j = 0; j < n_theta; ++j)
    if (u[static_cast<size_t>(n_r - 1) * n_theta + j] != 0.0)
      throw DomainError("perturbation grid: the rim row must vanish identically");
  for (double c : u)
    if (!(std::abs(c) < 1.0))
      throw DomainError("perturbation grid: the graph bound sup|u| < 1 is violated");
}

double inner_product(const PerturbationGrid& shape, const std::vector<double>& a,
                     const std::vector<double>& b) {
  const size_t N = static_cast<size_t>(shape.n_r) * shape.n_theta;
  if (a.size() != N || b.size() != N)
    throw DomainError("inner_product: vectors do not match the grid shape");
  const double hr = shape.hr();
  const double ht = shape.htheta();
  double total = 0.0;
  for (int i = 0; i < shape.n_r; ++i) {
    const double ci = (i == 0 || i == shape.n_r - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j < shape.n_theta; ++j)
      row += a[static_cast<size_t>(i) * shape.n_theta + j] *
             b[static_cast<size_t>(i) * shape.n_theta + j];
    total += ci * row;
  }
  return 4.0 * hr * ht * total;
}

std::vector<double> mean_curvature(const PerturbationGrid& pg) {
  pg.validate();
  const CurvatureStencil stencil(pg.p, pg.t, pg.n_r, pg.n_theta);
  return stencil.raw(pg.u);
}

std::vector<double> curvature_residual(const PerturbationGrid& pg) {
  pg.validate();
  const CurvatureStencil stencil(pg.p, pg.t, pg.n_r, pg.n_theta);
  return stencil.residual(pg.u);
}

std::vector<double> jacobi_apply(const PerturbationGrid& pg, const std::vector<double>& v) {
  pg.validate();
  const size_t N = static_cast<size_t>(pg.n_r) * pg.n_theta;
  if (v.size() != N)
    throw DomainError("jacobi_apply: vector does not match the grid shape");
  const double hr = pg.hr();
  const double ht = pg.htheta();
  const double invhr2 = 1.0 / (hr * hr);
  const double invht2 = 1.0 / (ht * ht);
  const double t = pg.t;
  const int p = pg.p;
  std::vector<double> out(N, 0.0);
  auto vf = [&](int i, int j) {
    return v[static_cast<size_t>(fold_i(i)) * pg.n_theta + fold_j(j, pg.n_theta)];
  };
  for (int i = 0; i <= pg.n_r - 2; ++i) {
    const double ch = std::cosh(t * p * pg.rhat(i));
    const double sech2 = 1.0 / (ch * ch);
    const double scale = 1.0 / (t * t * p * p * ch * ch);
    for (int j = 0; j < pg.n_theta; ++j) {
      const double c = vf(i, j);
      const double lap_r = (vf(i + 1, j) - 2.0 * c + vf(i - 1, j)) * invhr2;
      const double lap_t = (vf(i, j + 1) - 2.0 * c + vf(i, j - 1)) * invht2;
      out[static_cast<size_t>(i) * pg.n_theta + j] =
          scale * (lap_r + t * t * (lap_t + 2.0 * p * p * sech2 * c));
    }
  }
  return out;
}

std::vector<double> linearized_solve(const PerturbationGrid& shape,
                                     const std::vector<double>& rhs) {
  shape.validate();
  if (rhs.size() != shape.u.size())
    throw DomainError("linearized_solve: right-hand side does not match the grid shape");
  const WaveSolver solver(shape.p, shape.t, shape.n_r, shape.n_theta);
  std::vector<double> out = rhs;
  solver.solve(out);
  return out;
}

std::vector<double> kernel_mode(int p, double t, int n_r, int n_theta) {
  if (p < 1 || !(t > 0.0) || n_r < 5 || n_theta < 2)
    throw DomainError("kernel_mode: need p >= 1, t > 0 and a grid of at least 5 x 2");
  const int m = n_r - 1;
  const double ht = kPi / n_theta;
  const WaveWeights w = wave_weights(p, t, n_r);
  const double lam_theta = (2.0 * std::cos(ht) - 2.0) / (ht * ht);
  const Tridiagonal S = wave_block(p, t, n_r, lam_theta, w);
  const std::vector<double> eigs = lowest_eigenvalues(S, m);
  int best = 0;
  for (int k = 1; k < m; ++k)
    if (std::abs(eigs[k]) < std::abs(eigs[best]))
      best = k;
  const std::vector<double> phi = inverse_iteration(S, eigs[best]);
  std::vector<double> radial(m);
  for (int i = 0; i < m; ++i)
    radial[i] = w.winv[i] * phi[i];
  if (radial[0] < 0.0)
    for (double& c : radial)
      c = -c;
  PerturbationGrid shape(p, t, n_r, n_theta);
  std::vector<double> mode(shape.u.size(), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n_theta; ++j)
      mode[static_cast<size_t>(i) * n_theta + j] = radial[i] * std::cos(shape.theta(j));
  const double nrm = std::sqrt(inner_product(shape, mode, mode));
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw NumericalError("kernel_mode: degenerate candidate");
  for (double& c : mode)
    c /= nrm;
  return mode;
}

PerturbationGrid newton_solve(const PerturbationGrid& start, double tol, int max_iter) {
  if (!(tol > 0.0) || max_iter < 1)
    throw DomainError("newton_solve: tol must be positive and max_iter at least 1");
  PerturbationGrid pg = start;
  bordered_newton(pg, nullptr, 0.0, 0.0, tol, max_iter);
  return pg;
}

BranchState branch_switch(int p, double amp, double tol, int n_r, int n_theta) {
  if (p < 2)
    throw DomainError("branch_switch: a simple wrap has no single-wave instability; p >= 2");
  if (!(std::abs(amp) < 0.5))
    throw DomainError("branch_switch: |amp| must stay below 0.5 to respect the graph bound");
  if (!(tol > 0.0))
    throw DomainError("branch_switch: tol must be positive");
  if (n_r < 9 || n_theta < 8)
    throw DomainError("branch_switch: grid too small to resolve the single wave");

  const double t1 = bifurcation_instant(p, 1, 1e-10);
  PerturbationGrid pg(p, t1, n_r, n_theta);
  BranchState state;
  if (amp == 0.0) {
    state.t = t1;
    state.u = pg;
    return state;
  }
  const std::vector<double> u1 = kernel_mode(p, t1, n_r, n_theta);
  for (size_t k = 0; k < pg.u.size(); ++k)
    pg.u[k] = amp * u1[k];
  const NewtonOutcome nc = bordered_newton(pg, &u1, 0.0, amp, tol, 25);
  state.t = pg.t;
  state.u = pg;
  state.amplitude = inner_product(pg, pg.u, u1);
  state.residual_norm = nc.residual_sup;
  state.step_index = 0;
  return state;
}

std::vector<BranchState> continue_branch(const BranchState& start, int n_steps, double ds,
                                         double tol) {
  start.u.validate();
  if (n_steps < 1)
    throw DomainError("continue_branch: n_steps must be at least 1");
  if (!(ds != 0.0) || !std::isfinite(ds))
    throw DomainError("continue_branch: ds must be nonzero and finite");
  if (!(tol > 0.0))
    throw DomainError("continue_branch: tol must be positive");

  const int p = start.u.p;
  const int n_r = start.u.n_r;
  const int n_theta = start.u.n_theta;
  const size_t N = start.u.u.size();

  {
    const CurvatureStencil stencil(p, start.t, n_r, n_theta);
    if (sup_norm(stencil.residual(start.u.u)) > 10.0 * tol)
      throw DomainError("continue_branch: the start state is not converged");
  }

  const std::vector<double> u1 = kernel_mode(p, start.t, n_r, n_theta);
  const double t1 = bifurcation_instant(p, 1, 1e-10);

  std::vector<double> tau_u = start.u.u;
  double tau_t = start.t - t1;
  {
    const double nrm = std::sqrt(inner_product(start.u, tau_u, tau_u) + tau_t * tau_t);
    if (!(nrm > 0.0))
      throw DomainError("continue_branch: start coincides with the trivial branch");
    for (double& c : tau_u)
      c /= nrm;
    tau_t /= nrm;
  }

  std::vector<BranchState> out;
  out.reserve(n_steps);
  BranchState cur = start;
  for (int step = 0; step < n_steps; ++step) {
    double dsk = ds;
    int attempts = 0;
    while (true) {
      PerturbationGrid trial = cur.u;
      trial.t = cur.t + dsk * tau_t;
      for (size_t k = 0; k < N; ++k)
        trial.u[k] = cur.u.u[k] + dsk * tau_u[k];
      bool accepted = false;
      NewtonOutcome nc;
      if (sup_norm(trial.u) < 0.95 && trial.t > 0.0) {
        const double target = inner_product(trial, tau_u, trial.u) + tau_t * trial.t;
        try {
          nc = bordered_newton(trial, &tau_u, tau_t, target, tol, 12);
          accepted = true;
        } catch (const NumericalError&) {
          accepted = false;
        }
      }
      if (!accepted) {
        if (++attempts > 5)
          throw NumericalError("continue_branch: five step halvings failed to land a correction");
        dsk *= 0.5;
        continue;
      }
      std::vector<double> new_tau = trial.u;
      for (size_t k = 0; k < N; ++k)
        new_tau[k] -= cur.u.u[k];
      double new_tau_t = trial.t - cur.t;
      const double nrm = std::sqrt(inner_product(trial, new_tau, new_tau) + new_tau_t * new_tau_t);
      if (nrm > 0.0) {
        double align = inner_product(trial, new_tau, tau_u) + new_tau_t * tau_t;
        const double flip = align < 0.0 ? -1.0 : 1.0;
        for (size_t k = 0; k < N; ++k)
          tau_u[k] = flip * new_tau[k] / nrm;
        tau_t = flip * new_tau_t / nrm;
      }
      BranchState next;
      next.t = trial.t;
      next.u = trial;
      next.amplitude = inner_product(trial, trial.u, u1);
      next.residual_norm = nc.residual_sup;
      next.step_index = cur.step_index + 1;
      cur = next;
      out.push_back(cur);
      break;
    }
  }
  return out;
}

double nonsymmetry_metric(const BranchState& state) {
  state.u.validate();
  const CatenoidFamily family(state.u.p, state.u.t);
  std::vector<double> d(state.u.n_theta);
  for (int j = 0; j < state.u.n_theta; ++j) {
    const double th = state.u.theta(j);
    const V3 X = family.position(0.0, th);
    const V3 Nn = family.normal(0.0, th);
    const double uv = state.u.u[j];
    d[j] = std::hypot(X[0] + uv * Nn[0], X[1] + uv * Nn[1]);
  }
  return variance(d);
}

double nonsymmetry_metric(const SurfaceMesh& mesh) {
  if (mesh.n_rows < 1 || mesh.n_cols < 1)
    throw DomainError("nonsymmetry_metric: empty mesh");
  double worst = 0.0;
  std::vector<double> d(mesh.n_cols);
  for (int r = 0; r < mesh.n_rows; ++r) {
    for (int c = 0; c < mesh.n_cols; ++c) {
      const SurfaceMesh::V3& v = mesh.vertices[mesh.index(r, c)];
      d[c] = std::hypot(v.x, v.y);
    }
    worst = std::max(worst, variance(d));
  }
  return worst;
}

std::pair<double, double> mid_parallel_range(const BranchState& state) {
  state.u.validate();
  double lo = state.u.u[0], hi = state.u.u[0];
  for (int j = 0; j < state.u.n_theta; ++j) {
    lo = std::min(lo, state.u.u[j]);
    hi = std::max(hi, state.u.u[j]);
  }
  return {lo, hi};
}

BoundaryReport boundary_cover_check(const BranchState& state) {
  const PerturbationGrid& pg = state.u;
  if (pg.n_r < 3 || pg.n_theta < 2 ||
      pg.u.size() != static_cast<size_t>(pg.n_r) * pg.n_theta)
    throw DomainError("boundary_cover_check: malformed state");
  const CatenoidFamily family(pg.p, pg.t);
  const int rim = pg.n_r - 1;
  BoundaryReport rep;
  rep.boundary_fixed = true;
  for (int j = 0; j < pg.n_theta; ++j)
    if (pg.u[static_cast<size_t>(rim) * pg.n_theta + j] != 0.0)
      rep.boundary_fixed = false;

  const double target_radius = std::cosh(pg.t * pg.p);
  const double target_height = pg.t * pg.p;
  std::vector<cplx> trace(2 * pg.n_theta);
  for (int jf = 0; jf < 2 * pg.n_theta; ++jf) {
    const int jq = jf < pg.n_theta ? jf : 2 * pg.n_theta - 1 - jf;
    const double th = (jf + 0.5) * pg.htheta();
    const V3 X = family.position(pg.rhat(rim), th);
    const V3 Nn = family.normal(pg.rhat(rim), th);
    const double uv = pg.u[static_cast<size_t>(rim) * pg.n_theta + jq];
    const V3 Y = X + uv * Nn;
    rep.radius_deviation = std::max(rep.radius_deviation,
                                    std::abs(std::hypot(Y[0], Y[1]) - target_radius));
    rep.height_deviation = std::max(rep.height_deviation, std::abs(Y[2] - target_height));
    trace[jf] = cplx(Y[0], Y[1]);
  }
  rep.winding = winding_degree(BoundaryTrace{trace, target_radius});
  rep.pass = rep.boundary_fixed && rep.winding == pg.p &&
             rep.radius_deviation < 1e-10 * (1.0 + target_radius) &&
             rep.height_deviation < 1e-10 * (1.0 + target_height);
  return rep;
}

SurfaceMesh bifurcation_mesh(const BranchState& state) {
  state.u.validate();
  const PerturbationGrid& pg = state.u;
  const CatenoidFamily family(pg.p, pg.t);
  const int rows = 2 * pg.n_r - 1;
  const int cols = 2 * pg.n_theta + 1;
  SurfaceMesh mesh = SurfaceMesh::from_grid(rows, cols, [&](int row, int col) {
    const int i_full = row - (pg.n_r - 1);
    const int c = col % (2 * pg.n_theta);
    const double r = i_full * pg.hr();
    const double th = (c + 0.5) * pg.htheta();
    const int iq = fold_i(i_full);
    const int jq = c < pg.n_theta ? c : 2 * pg.n_theta - 1 - c;
    const double uv = pg.u[static_cast<size_t>(iq) * pg.n_theta + jq];
    const V3 X = family.position(r, th);
    const V3 Nn = family.normal(r, th);
    return SurfaceMesh::V3{X[0] + uv * Nn[0], X[1] + uv * Nn[1], X[2] + uv * Nn[2]};
  });
  mesh.metadata = nlohmann::json{{"p", pg.p}, {"t", pg.t}, {"kind", "bifurcated"}};
  return mesh;
}

double surface_area(const PerturbationGrid& pg) {
  pg.validate();
  const CatenoidFamily family(pg.p, pg.t);
  const double hr = pg.hr();
  const double ht = pg.htheta();
  auto surf = [&](int i, int j) -> V3 {
    const double r = i * hr;
    const double th = (j + 0.5) * ht;
    const double uv =
        pg.u[static_cast<size_t>(fold_i(i)) * pg.n_theta + fold_j(j, pg.n_theta)];
    const V3 X = family.position(r, th);
    const V3 Nn = family.normal(r, th);
    return X + uv * Nn;
  };
  double total = 0.0;
  for (int i = 0; i < pg.n_r; ++i) {
    const double ci = (i == 0 || i == pg.n_r - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j < pg.n_theta; ++j) {
      V3 Yr;
      if (i < pg.n_r - 1) {
        Yr = (1.0 / (2.0 * hr)) * (surf(i + 1, j) - surf(i - 1, j));
      } else {
        const V3 a = surf(i, j), b = surf(i - 1, j), c = surf(i - 2, j);
        Yr = (1.0 / (2.0 * hr)) * ((3.0 * a - 4.0 * b) + c);
      }
      const V3 Yt = (1.0 / (2.0 * ht)) * (surf(i, j + 1) - surf(i, j - 1));
      const double E = dotv(Yr, Yr);
      const double F = dotv(Yr, Yt);
      const double G = dotv(Yt, Yt);
      row += std::sqrt(std::max(E * G - F * F, 0.0));
    }
    total += ci * row;
  }
  return 4.0 * hr * ht * total;
}

} // namespace ring
