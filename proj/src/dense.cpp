#include "stdg/dense.hpp"

#include <cmath>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stdg {

bool LuFactors::factor(std::vector<double> a, int n) {
  lu_ = std::move(a);
  perm_.resize(n);
  n_ = n;
  double* m = lu_.data();
  bool ok = true;
  double inv_pivot = 0.0;

#ifdef _OPENMP
#pragma omp parallel if (n > 512) default(shared)
#endif
  {
    for (int k = 0; k < n && ok; ++k) {
#ifdef _OPENMP
#pragma omp single
#endif
      {
        int piv = k;
        double best = std::fabs(m[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
          const double v = std::fabs(m[i * n + k]);
          if (v > best) {
            best = v;
            piv = i;
          }
        }
        if (best == 0.0) {
          ok = false;
        } else {
          perm_[k] = piv;
          if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
          }
          inv_pivot = 1.0 / m[k * n + k];
        }
      } // implicit barrier publishes the pivot row
      if (!ok) continue;
      const double* row_k = m + k * n;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (int i = k + 1; i < n; ++i) {
        double* row_i = m + i * n;
        const double l = row_i[k] * inv_pivot;
        row_i[k] = l;
        for (int j = k + 1; j < n; ++j) row_i[j] -= l * row_k[j];
      }
    }
  }
  if (!ok) n_ = 0;
  return ok;
}

void LuFactors::solve(std::span<double> b) const {
  const int n = n_;
  const double* m = lu_.data();
  for (int k = 0; k < n; ++k) {
    if (perm_[k] != k) std::swap(b[k], b[perm_[k]]);
  }
  for (int i = 1; i < n; ++i) {
    double s = b[i];
    const double* row = m + i * n;
    for (int j = 0; j < i; ++j) s -= row[j] * b[j];
    b[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    const double* row = m + i * n;
    for (int j = i + 1; j < n; ++j) s -= row[j] * b[j];
    b[i] = s / row[i];
  }
}

} // namespace stdg
