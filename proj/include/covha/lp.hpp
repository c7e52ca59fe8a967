#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace covha {

/// minimize c'x  subject to  A x <= b,  x free.
struct LpProblem {
  int n = 0;  // variables
  int m = 0;  // inequality rows
  std::vector<double> a;  // m x n row-major
  std::vector<double> b;
  std::vector<double> c;

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  double gap = 0.0;  // complementarity mu * m at exit
  int iterations = 0;
  bool converged = false;
};

namespace detail {

/// Cholesky solve of a symmetric positive definite system, with a diagonal
/// bump retry for nearly singular normal matrices.
inline bool spd_solve(std::vector<double>& m, std::vector<double>& rhs, int n) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<double> l = m;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = l[static_cast<size_t>(i) * n + j];
        for (int k = 0; k < j; ++k)
          s -= l[static_cast<size_t>(i) * n + k] * l[static_cast<size_t>(j) * n + k];
        if (i == j) {
          if (s <= 0.0 || !std::isfinite(s)) {
            ok = false;
            break;
          }
          l[static_cast<size_t>(i) * n + j] = std::sqrt(s);
        } else {
          l[static_cast<size_t>(i) * n + j] = s / l[static_cast<size_t>(j) * n + j];
        }
      }
    }
    if (ok) {
      std::vector<double> y(n);
      for (int i = 0; i < n; ++i) {
        double s = rhs[i];
        for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * y[k];
        y[i] = s / l[static_cast<size_t>(i) * n + i];
      }
      for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * rhs[k];
        rhs[i] = s / l[static_cast<size_t>(i) * n + i];
      }
      return true;
    }
    double bump = 0.0;
    for (int i = 0; i < n; ++i) bump = std::max(bump, m[static_cast<size_t>(i) * n + i]);
    bump = std::max(bump, 1.0) * 1e-10 * std::pow(10.0, attempt * 3);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] += bump;
  }
  return false;
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace detail

/// Infeasible-start primal-dual interior-point method (Mehrotra
/// predictor-corrector) on the inequality form. Slacks s = b - Ax and duals
/// lambda stay strictly positive; each step solves the condensed normal
/// equations (A' diag(lambda/s) A) dx = rhs with a fixed diagonal
/// regularization that keeps nearly parallel rows harmless.
inline LpSolution solve_lp(const LpProblem& p, double tol = 1e-10, int max_iter = 100) {
  const int n = p.n, m = p.m;
  if (n <= 0 || m <= 0) throw std::invalid_argument("empty linear program");
  LpSolution sol;
  std::vector<double> x(n, 0.0), s(m), lam(m, 1.0);
  std::vector<double> ax(m, 0.0);
  auto mul_a = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      const double* row = &p.a[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) acc += row[j] * v[j];
      out[i] = acc;
    }
  };
  mul_a(x, ax);
  for (int i = 0; i < m; ++i) s[i] = std::max(p.b[i] - ax[i], 1.0);

  double scale = 1.0;
  for (double v : p.c) scale = std::max(scale, std::abs(v));
  for (double v : p.b) scale = std::max(scale, std::abs(v));

  std::vector<double> rd(n), rp(m), d(m), mat(static_cast<size_t>(n) * n), rhs(n);
  std::vector<double> dx(n), ds(m), dlam(m), dx_aff(n), ds_aff(m), dlam_aff(m), tmp(m);
  std::vector<double> x_best = x;
  int tiny_steps = 0;

  for (int iter = 0; iter < max_iter; ++iter) {
    mul_a(x, ax);
    double mu = 0.0;
    for (int i = 0; i < m; ++i) mu += lam[i] * s[i];
    mu /= m;
    for (int j = 0; j < n; ++j) {
      double acc = p.c[j];
      for (int i = 0; i < m; ++i) acc += p.a[static_cast<size_t>(i) * n + j] * lam[i];
      rd[j] = acc;
    }
    double rp_inf = 0.0, rd_inf = 0.0;
    for (int i = 0; i < m; ++i) {
      rp[i] = ax[i] + s[i] - p.b[i];
      rp_inf = std::max(rp_inf, std::abs(rp[i]));
    }
    for (int j = 0; j < n; ++j) rd_inf = std::max(rd_inf, std::abs(rd[j]));

    sol.iterations = iter;
    sol.gap = mu * m;
    const double ftol = std::max(1e-8, 1e3 * tol);
    const bool feasible = rp_inf <= ftol * scale && rd_inf <= ftol * scale;
    if (mu <= tol * scale && feasible) {
      sol.converged = true;
      x_best = x;
      break;
    }
    if (!std::isfinite(mu) || mu <= 1e-17 * scale) {
      // Numerical floor: accept the iterate when it is essentially feasible.
      sol.converged = feasible && std::isfinite(mu);
      break;
    }
    x_best = x;

    for (int i = 0; i < m; ++i) d[i] = lam[i] / s[i];
    // Normal matrix A' D A (upper triangle, mirrored) plus regularization.
    std::fill(mat.begin(), mat.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      const double* row = &p.a[static_cast<size_t>(i) * n];
      const double di = d[i];
      for (int j = 0; j < n; ++j) {
        const double v = di * row[j];
        if (v == 0.0) continue;
        for (int k = j; k < n; ++k) mat[static_cast<size_t>(j) * n + k] += v * row[k];
      }
    }
    double diag_max = 1.0;
    for (int j = 0; j < n; ++j)
      diag_max = std::max(diag_max, mat[static_cast<size_t>(j) * n + j]);
    for (int j = 0; j < n; ++j) {
      mat[static_cast<size_t>(j) * n + j] += 1e-14 * diag_max + 1e-30;
      for (int k = 0; k < j; ++k)
        mat[static_cast<size_t>(j) * n + k] = mat[static_cast<size_t>(k) * n + j];
    }

    auto newton = [&](const std::vector<double>& comp_target, std::vector<double>& out_dx,
                      std::vector<double>& out_ds, std::vector<double>& out_dlam) -> bool {
      // Newton step targeting lam_i s_i = comp_target_i; condensed to
      // (A' D A) dx = -c - A' (D rp + comp/s).
      for (int i = 0; i < m; ++i) tmp[i] = d[i] * rp[i] + comp_target[i] / s[i];
      for (int j = 0; j < n; ++j) {
        double acc = -p.c[j];
        for (int i = 0; i < m; ++i) acc -= p.a[static_cast<size_t>(i) * n + j] * tmp[i];
        rhs[j] = acc;
      }
      std::vector<double> mcopy = mat;
      if (!detail::spd_solve(mcopy, rhs, n)) return false;
      if (!detail::all_finite(rhs)) return false;
      out_dx = rhs;
      mul_a(out_dx, out_ds);
      for (int i = 0; i < m; ++i) out_ds[i] = -rp[i] - out_ds[i];
      for (int i = 0; i < m; ++i)
        out_dlam[i] = (comp_target[i] - lam[i] * s[i] - lam[i] * out_ds[i]) / s[i];
      return detail::all_finite(out_ds) && detail::all_finite(out_dlam);
    };

    std::vector<double> comp(m, 0.0);
    if (!newton(comp, dx_aff, ds_aff, dlam_aff)) break;

    auto step_len = [&](const std::vector<double>& v, const std::vector<double>& dv) {
      double a = 1.0;
      for (int i = 0; i < m; ++i)
        if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
      return a;
    };
    const double ap_aff = step_len(s, ds_aff);
    const double ad_aff = step_len(lam, dlam_aff);
    double mu_aff = 0.0;
    for (int i = 0; i < m; ++i)
      mu_aff += (lam[i] + ad_aff * dlam_aff[i]) * (s[i] + ap_aff * ds_aff[i]);
    mu_aff /= m;
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

    for (int i = 0; i < m; ++i) comp[i] = sigma * mu - ds_aff[i] * dlam_aff[i];
    if (!newton(comp, dx, ds, dlam)) break;

    const double ap = std::min(1.0, 0.995 * step_len(s, ds));
    const double ad = std::min(1.0, 0.995 * step_len(lam, dlam));
    if (ap < 1e-10 && ad < 1e-10) {
      if (++tiny_steps >= 3) break;
    } else {
      tiny_steps = 0;
    }
    for (int j = 0; j < n; ++j) x[j] += ap * dx[j];
    for (int i = 0; i < m; ++i) s[i] = std::max(s[i] + ap * ds[i], 1e-300);
    for (int i = 0; i < m; ++i) lam[i] = std::max(lam[i] + ad * dlam[i], 1e-300);
  }

  sol.x = std::move(x_best);
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += p.c[j] * sol.x[j];
  return sol;
}

}  // namespace covha
