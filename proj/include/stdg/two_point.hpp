#ifndef STDG_TWO_POINT_HPP
#define STDG_TWO_POINT_HPP

#include <span>
#include <vector>

#include "stdg/systems.hpp"

namespace stdg {

/// Oriented jump and arithmetic mean, [[a]] = a_plus - a_minus.
inline double jump(double a_minus, double a_plus) { return a_plus - a_minus; }
inline double mean(double a_minus, double a_plus) { return 0.5 * (a_minus + a_plus); }

/// Logarithmic mean (a - b) / (ln a - ln b), continuously extended at a = b.
/// Uses the series form of Ismail and Roe near a = b to avoid cancellation.
/// Arguments are ordered internally, so the result is exactly symmetric.
double log_mean(double a, double b);

/// Surface dissipation choice for the entropy-stable flux. Both operators
/// act on the entropy-variable jump and are positive semidefinite:
///   RusanovEntropy:     1/2 lambda_max H({{u}}) [[w]]
///   EntropyScaledMatrix: 1/2 R |Lambda| T R^T [[w]] with the eigenvector
///                        scaling R T R^T = H (characteristic upwinding).
enum class DissipationKind { None, RusanovEntropy, EntropyScaledMatrix };

struct DissipationSpec {
  DissipationKind kind = DissipationKind::EntropyScaledMatrix;
};

/// Entropy-conservative temporal state U# of the pair (left = past side,
/// right = future side). Symmetric, consistent, and satisfies
/// [[w]]^T U# = [[phi]] for Euler, shallow water, and MHD.
void temporal_state_ec(const SystemDescriptor& sys, std::span<const double> left,
                       std::span<const double> right, std::span<double> state);

/// Upwind temporal state U* = U_minus (returns `left` verbatim).
void temporal_state_upwind(std::span<const double> left, std::span<double> state);

/// Entropy-conservative and kinetic-energy-preserving two-point Euler flux
/// in direction dir. Satisfies the Tadmor condition [[w]]^T F = [[psi_dir]]
/// and the Jameson conditions.
void flux_eckep_euler(const SystemDescriptor& sys, std::span<const double> left,
                      std::span<const double> right, int dir, std::span<double> flux);

/// ECKEP flux plus entropy dissipation
///   F - 1/2 lambda_max H({{u}}) [[w]],
/// with H = du/dw evaluated at the arithmetic-mean state. The quadratic form
/// [[w]]^T H [[w]] >= 0 makes the flux entropy stable.
void flux_es(const SystemDescriptor& sys, std::span<const double> left,
             std::span<const double> right, int dir, const DissipationSpec& dis,
             std::span<double> flux);

/// Entropy Jacobian H = du/dw of an Euler state, dense row-major p x p.
/// Symmetric positive definite for admissible states.
void euler_entropy_jacobian(const SystemDescriptor& sys, std::span<const double> u,
                            std::span<double> h);

/// Residuals of the kinetic-energy conditions U_{1+l} = {{v_l}} U_1 for a
/// temporal two-point state evaluated at the pair; one entry per velocity
/// component.
std::vector<double> check_kep_temporal(const SystemDescriptor& sys,
                                       std::span<const double> left,
                                       std::span<const double> right,
                                       std::span<const double> state);

/// Residuals of the Jameson conditions for the ECKEP flux of the pair in
/// direction dir: component 1+m of the flux minus {{v_m}} F_1 (minus {{p}}
/// when m == dir); one entry per velocity component.
std::vector<double> jameson_residuals(const SystemDescriptor& sys,
                                      std::span<const double> left,
                                      std::span<const double> right, int dir);

/// Tadmor condition residual [[w]]^T F - [[psi_dir]] of a two-point flux,
/// together with the magnitude scale of the terms entering it.
struct ConditionResidual {
  double residual = 0.0;
  double scale = 0.0;
};

ConditionResidual tadmor_spatial_residual(const SystemDescriptor& sys,
                                          std::span<const double> left,
                                          std::span<const double> right, int dir,
                                          std::span<const double> flux);

/// Temporal condition residual [[w]]^T U - [[phi]] of a two-point state.
ConditionResidual tadmor_temporal_residual(const SystemDescriptor& sys,
                                           std::span<const double> left,
                                           std::span<const double> right,
                                           std::span<const double> state);

} // namespace stdg

#endif
