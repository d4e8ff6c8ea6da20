#ifndef STDG_SPACETIME_KERNELS_HPP
#define STDG_SPACETIME_KERNELS_HPP

#include <cstddef>

#include "stdg/sbp.hpp"

namespace stdg::kernels {

// Element-local views of the slab tensor with layout (sigma, element, node,
// component): for one element, temporal level sigma lives at
// base + sigma * sigma_stride, with (node, component) contiguous.

/// Temporal flux-differencing volume term. Adds
///   w_sigma w_i J * 2 sum_theta D_{sigma theta} U#(U_sigma, U_theta)
/// to the residual rows of one element. `state(ua, ub, out)` must be
/// symmetric and consistent.
template <class StateFn>
void add_temporal_volume(const SbpOperator& trule, const SbpOperator& srule,
                         double jac, int p, const double* u, std::size_t ustride,
                         StateFn&& state, double* r, std::size_t rstride) {
  const int M = trule.degree();
  const int N = srule.degree();
  double s[8];
  for (int i = 0; i <= N; ++i) {
    for (int sig = 0; sig <= M; ++sig) {
      const double* ua = u + sig * ustride + i * p;
      double* ra = r + sig * rstride + i * p;
      {
        const double ca = 2.0 * trule.weight(sig) * trule.d(sig, sig) *
                          srule.weight(i) * jac;
        for (int c = 0; c < p; ++c) ra[c] += ca * ua[c];
      }
      for (int the = sig + 1; the <= M; ++the) {
        const double* ub = u + the * ustride + i * p;
        state(ua, ub, s);
        const double ca = 2.0 * trule.weight(sig) * trule.d(sig, the) *
                          srule.weight(i) * jac;
        const double cb = 2.0 * trule.weight(the) * trule.d(the, sig) *
                          srule.weight(i) * jac;
        double* rb = r + the * rstride + i * p;
        for (int c = 0; c < p; ++c) {
          ra[c] += ca * s[c];
          rb[c] += cb * s[c];
        }
      }
    }
  }
}

/// Spatial flux-differencing volume term. Adds
///   (dt/2) w_sigma w_i * 2 sum_m D_{i m} F(U_i, U_m)
/// to the residual rows of one element.
template <class FluxFn>
void add_spatial_volume(const SbpOperator& trule, const SbpOperator& srule,
                        double half_dt, int p, const double* u, std::size_t ustride,
                        FluxFn&& flux, double* r, std::size_t rstride) {
  const int M = trule.degree();
  const int N = srule.degree();
  double f[8];
  for (int sig = 0; sig <= M; ++sig) {
    const double wt = half_dt * trule.weight(sig);
    const double* us = u + sig * ustride;
    double* rs = r + sig * rstride;
    for (int i = 0; i <= N; ++i) {
      flux(us + i * p, us + i * p, f);
      const double ca = 2.0 * wt * srule.weight(i) * srule.d(i, i);
      for (int c = 0; c < p; ++c) rs[i * p + c] += ca * f[c];
      for (int m = i + 1; m <= N; ++m) {
        flux(us + i * p, us + m * p, f);
        const double ci = 2.0 * wt * srule.weight(i) * srule.d(i, m);
        const double cm = 2.0 * wt * srule.weight(m) * srule.d(m, i);
        for (int c = 0; c < p; ++c) {
          rs[i * p + c] += ci * f[c];
          rs[m * p + c] += cm * f[c];
        }
      }
    }
  }
}

/// Temporal surface term < J (U* - U), phi >_N at tau = -1 and tau = +1.
/// Either trace may be null to skip that face (the upwind state at tau = +1
/// cancels identically).
inline void add_temporal_surface(const SbpOperator& trule, const SbpOperator& srule,
                                 double jac, int p, const double* u,
                                 std::size_t ustride, const double* star_lo,
                                 const double* star_hi, double* r,
                                 std::size_t rstride) {
  const int M = trule.degree();
  const int N = srule.degree();
  if (star_lo != nullptr) {
    const double* u0 = u;
    double* r0 = r;
    for (int i = 0; i <= N; ++i) {
      const double c = srule.weight(i) * jac;
      for (int cc = 0; cc < p; ++cc) {
        r0[i * p + cc] -= c * (star_lo[i * p + cc] - u0[i * p + cc]);
      }
    }
  }
  if (star_hi != nullptr) {
    const double* uM = u + M * ustride;
    double* rM = r + M * rstride;
    for (int i = 0; i <= N; ++i) {
      const double c = srule.weight(i) * jac;
      for (int cc = 0; cc < p; ++cc) {
        rM[i * p + cc] += c * (star_hi[i * p + cc] - uM[i * p + cc]);
      }
    }
  }
}

/// Spatial surface term (dt/2) w_sigma (F* - f(U)) at the two element faces,
/// with the outward-normal orientation. `fstar_left`/`fstar_right` hold the
/// interface fluxes for all temporal levels, laid out (sigma, component).
template <class PointFluxFn>
void add_spatial_surface(const SbpOperator& trule, const SbpOperator& srule,
                         double half_dt, int p, const double* u, std::size_t ustride,
                         const double* fstar_left, const double* fstar_right,
                         PointFluxFn&& point_flux, double* r, std::size_t rstride) {
  const int M = trule.degree();
  const int N = srule.degree();
  double f[8];
  for (int sig = 0; sig <= M; ++sig) {
    const double wt = half_dt * trule.weight(sig);
    const double* us = u + sig * ustride;
    double* rs = r + sig * rstride;
    point_flux(us, f);
    for (int c = 0; c < p; ++c) {
      rs[c] -= wt * (fstar_left[sig * p + c] - f[c]);
    }
    point_flux(us + N * p, f);
    for (int c = 0; c < p; ++c) {
      rs[N * p + c] += wt * (fstar_right[sig * p + c] - f[c]);
    }
  }
}

} // namespace stdg::kernels

#endif
