#ifndef STDG_DENSE_HPP
#define STDG_DENSE_HPP

#include <span>
#include <vector>

namespace stdg {

/// Dense LU factorization with partial pivoting, row-major storage.
/// Sized for the slab systems of this project (a few thousand unknowns).
class LuFactors {
public:
  LuFactors() = default;

  /// Factor the n-by-n matrix in place. Returns false on a (numerically)
  /// singular pivot.
  bool factor(std::vector<double> a, int n);

  /// Solve L U x = P b. b is overwritten with the solution.
  void solve(std::span<double> b) const;

  int size() const { return n_; }
  bool valid() const { return n_ > 0; }

private:
  std::vector<double> lu_;
  std::vector<int> perm_;
  int n_ = 0;
};

/// Compensated (Kahan) accumulator for the diagnostic sums.
class KahanSum {
public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace stdg

#endif
