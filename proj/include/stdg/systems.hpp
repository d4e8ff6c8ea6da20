#ifndef STDG_SYSTEMS_HPP
#define STDG_SYSTEMS_HPP

#include <array>
#include <span>

namespace stdg {

enum class SystemId { Euler1D, Euler3D, ShallowWater, IdealMhd };

/// Parameter bundle for one conservation-law system. The component count p
/// is 3 (Euler1D), 5 (Euler3D), 3 (shallow water: h, h v1, h v2) or
/// 8 (ideal MHD with embedded divergence cleaning term).
struct SystemDescriptor {
  SystemId id = SystemId::Euler1D;
  int p = 3;
  double gamma = 1.4; // adiabatic constant (Euler, MHD)
  double g = 1.0;     // gravitational constant (shallow water)

  static SystemDescriptor euler1d(double gamma = 1.4);
  static SystemDescriptor euler3d(double gamma = 1.4);
  static SystemDescriptor shallow_water(double g = 1.0);
  static SystemDescriptor ideal_mhd(double gamma = 1.4);

  /// Number of velocity components carried by the state.
  int velocity_dims() const;
};

/// States with density/pressure/water height at or below this value are
/// rejected; the logarithmic mean and beta = rho/(2p) need strict positivity.
inline constexpr double kAdmissibilityFloor = 1e-12;

/// Entropy variables and potentials of one state.
struct EntropyQuantities {
  std::array<double, 8> w{}; // entropy variables, first p entries valid
  double s = 0.0;            // entropy
  double phi = 0.0;          // potential  phi = w^T u - s
  std::array<double, 3> psi{}; // flux potential per direction (1D systems: [0])
  double beta = 0.0;           // rho / (2 p)   (Euler, MHD)
  double varsigma = 0.0;       // physical entropy ln p - gamma ln rho
};

/// Kinetic-energy variables of an Euler state.
struct KineticQuantities {
  std::array<double, 8> v{}; // (-|v|^2/2, velocities, 0)
  double kappa = 0.0;        // rho |v|^2 / 2
  std::array<double, 3> fkappa{}; // kinetic flux rho v_d |v|^2 / 2
};

/// Throws AdmissibilityError unless density/height and pressure are strictly
/// above the floor. `where` is prepended to the error location.
void require_admissible(const SystemDescriptor& sys, std::span<const double> u,
                        const char* where = "");

/// Pressure of an (assumed admissible) state; systems without pressure (SW)
/// report the hydrostatic g h^2 / 2.
double pressure(const SystemDescriptor& sys, std::span<const double> u);

/// Physical flux in direction dir (0-based axis; ignored by 1D systems).
void physical_flux(const SystemDescriptor& sys, std::span<const double> u, int dir,
                   std::span<double> flux);

/// Entropy variables w = ds/du, entropy s, potentials (phi, psi), and the
/// Euler/MHD auxiliaries beta and varsigma.
EntropyQuantities entropy_quantities(const SystemDescriptor& sys,
                                     std::span<const double> u);

/// Entropy flux f^s in direction dir.
double entropy_flux(const SystemDescriptor& sys, std::span<const double> u, int dir);

/// Largest characteristic speed of the state (sound, gravity wave, or fast
/// magnetosonic speed plus the flow speed).
double max_wavespeed(const SystemDescriptor& sys, std::span<const double> u);

/// Kinetic-energy variables; Euler systems only.
KineticQuantities kinetic_quantities(const SystemDescriptor& sys,
                                     std::span<const double> u);

/// MHD nonconservative-term quantities: Upsilon = (0, B, v.B, v) and
/// theta = w^T Upsilon = 2 beta (v . B).
struct MhdThetaUpsilon {
  double theta = 0.0;
  std::array<double, 8> upsilon{};
};
MhdThetaUpsilon mhd_theta_upsilon(const SystemDescriptor& sys,
                                  std::span<const double> u);

/// Primitive <-> conserved maps. Primitive layouts:
///   Euler1D (rho, v, p); Euler3D (rho, v1, v2, v3, p);
///   SW (h, v1, v2); MHD (rho, v1, v2, v3, p, B1, B2, B3).
void primitive_from_conserved(const SystemDescriptor& sys, std::span<const double> u,
                              std::span<double> prim);
void conserved_from_primitive(const SystemDescriptor& sys, std::span<const double> prim,
                              std::span<double> u);

} // namespace stdg

#endif
