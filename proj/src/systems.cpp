#include "stdg/systems.hpp"

#include <cmath>
#include <string>

#include "stdg/errors.hpp"

namespace stdg {

SystemDescriptor SystemDescriptor::euler1d(double gamma) {
  return {SystemId::Euler1D, 3, gamma, 0.0};
}
SystemDescriptor SystemDescriptor::euler3d(double gamma) {
  return {SystemId::Euler3D, 5, gamma, 0.0};
}
SystemDescriptor SystemDescriptor::shallow_water(double g) {
  return {SystemId::ShallowWater, 3, 0.0, g};
}
SystemDescriptor SystemDescriptor::ideal_mhd(double gamma) {
  return {SystemId::IdealMhd, 8, gamma, 0.0};
}

int SystemDescriptor::velocity_dims() const {
  switch (id) {
    case SystemId::Euler1D: return 1;
    case SystemId::ShallowWater: return 2;
    default: return 3;
  }
}

namespace {

std::string locate(const char* where, const char* quantity) {
  std::string s(quantity);
  if (where && *where) s = std::string(where);
  return s;
}

double mhd_pressure(const SystemDescriptor& sys, std::span<const double> u) {
  const double rho = u[0];
  const double ke = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / rho;
  const double me = 0.5 * (u[5] * u[5] + u[6] * u[6] + u[7] * u[7]);
  return (sys.gamma - 1.0) * (u[4] - ke - me);
}

} // namespace

double pressure(const SystemDescriptor& sys, std::span<const double> u) {
  switch (sys.id) {
    case SystemId::Euler1D:
      return (sys.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
    case SystemId::Euler3D:
      return (sys.gamma - 1.0) *
             (u[4] - 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / u[0]);
    case SystemId::ShallowWater:
      return 0.5 * sys.g * u[0] * u[0];
    case SystemId::IdealMhd:
      return mhd_pressure(sys, u);
  }
  return 0.0;
}

void require_admissible(const SystemDescriptor& sys, std::span<const double> u,
                        const char* where) {
  if (sys.id == SystemId::ShallowWater) {
    if (!(u[0] > kAdmissibilityFloor)) {
      throw AdmissibilityError("h", u[0], locate(where, "h"));
    }
    return;
  }
  if (!(u[0] > kAdmissibilityFloor)) {
    throw AdmissibilityError("rho", u[0], locate(where, "rho"));
  }
  const double p = pressure(sys, u);
  if (!(p > kAdmissibilityFloor)) {
    throw AdmissibilityError("p", p, locate(where, "p"));
  }
}

void physical_flux(const SystemDescriptor& sys, std::span<const double> u, int dir,
                   std::span<double> flux) {
  require_admissible(sys, u);
  switch (sys.id) {
    case SystemId::Euler1D: {
      const double v = u[1] / u[0];
      const double p = pressure(sys, u);
      flux[0] = u[1];
      flux[1] = u[1] * v + p;
      flux[2] = (u[2] + p) * v;
      return;
    }
    case SystemId::Euler3D: {
      const double rho = u[0];
      const double v[3] = {u[1] / rho, u[2] / rho, u[3] / rho};
      const double p = pressure(sys, u);
      const double vd = v[dir];
      flux[0] = rho * vd;
      for (int l = 0; l < 3; ++l) flux[1 + l] = rho * vd * v[l];
      flux[1 + dir] += p;
      flux[4] = (u[4] + p) * vd;
      return;
    }
    case SystemId::ShallowWater: {
      const double h = u[0];
      const double v[2] = {u[1] / h, u[2] / h};
      const double vd = v[dir < 2 ? dir : 0];
      flux[0] = h * vd;
      for (int l = 0; l < 2; ++l) flux[1 + l] = h * vd * v[l];
      flux[1 + (dir < 2 ? dir : 0)] += 0.5 * sys.g * h * h;
      return;
    }
    case SystemId::IdealMhd: {
      const double rho = u[0];
      const double v[3] = {u[1] / rho, u[2] / rho, u[3] / rho};
      const double B[3] = {u[5], u[6], u[7]};
      const double p = mhd_pressure(sys, u);
      const double bb = 0.5 * (B[0] * B[0] + B[1] * B[1] + B[2] * B[2]);
      const double vdotB = v[0] * B[0] + v[1] * B[1] + v[2] * B[2];
      const double vd = v[dir];
      flux[0] = rho * vd;
      for (int l = 0; l < 3; ++l) flux[1 + l] = rho * vd * v[l] - B[dir] * B[l];
      flux[1 + dir] += p + bb;
      flux[4] = vd * (u[4] + p + bb) - B[dir] * vdotB;
      for (int l = 0; l < 3; ++l) flux[5 + l] = vd * B[l] - B[dir] * v[l];
      return;
    }
  }
}

EntropyQuantities entropy_quantities(const SystemDescriptor& sys,
                                     std::span<const double> u) {
  require_admissible(sys, u);
  EntropyQuantities q;
  switch (sys.id) {
    case SystemId::ShallowWater: {
      const double h = u[0];
      const double v1 = u[1] / h, v2 = u[2] / h;
      const double vv = v1 * v1 + v2 * v2;
      q.w[0] = sys.g * h - 0.5 * vv;
      q.w[1] = v1;
      q.w[2] = v2;
      q.s = 0.5 * h * vv + 0.5 * sys.g * h * h;
      q.phi = 0.5 * sys.g * h * h;
      q.psi[0] = 0.5 * sys.g * h * h * v1;
      q.psi[1] = 0.5 * sys.g * h * h * v2;
      return q;
    }
    case SystemId::Euler1D:
    case SystemId::Euler3D: {
      const double rho = u[0];
      const int nd = sys.velocity_dims();
      double v[3] = {0, 0, 0};
      double vv = 0.0;
      for (int l = 0; l < nd; ++l) {
        v[l] = u[1 + l] / rho;
        vv += v[l] * v[l];
      }
      const double p = pressure(sys, u);
      const double gamma = sys.gamma;
      const double beta = rho / (2.0 * p);
      const double varsigma = -(gamma - 1.0) * std::log(rho) - std::log(beta) -
                              std::log(2.0);
      q.beta = beta;
      q.varsigma = varsigma;
      q.w[0] = (gamma - varsigma) / (gamma - 1.0) - beta * vv;
      for (int l = 0; l < nd; ++l) q.w[1 + l] = 2.0 * beta * v[l];
      q.w[1 + nd] = -2.0 * beta;
      q.s = -rho * varsigma / (gamma - 1.0);
      q.phi = rho;
      for (int l = 0; l < nd; ++l) q.psi[l] = rho * v[l];
      return q;
    }
    case SystemId::IdealMhd: {
      const double rho = u[0];
      double v[3], B[3];
      double vv = 0.0, BB = 0.0;
      for (int l = 0; l < 3; ++l) {
        v[l] = u[1 + l] / rho;
        B[l] = u[5 + l];
        vv += v[l] * v[l];
        BB += B[l] * B[l];
      }
      const double p = mhd_pressure(sys, u);
      const double gamma = sys.gamma;
      const double beta = rho / (2.0 * p);
      const double varsigma = -(gamma - 1.0) * std::log(rho) - std::log(beta) -
                              std::log(2.0);
      q.beta = beta;
      q.varsigma = varsigma;
      q.w[0] = (gamma - varsigma) / (gamma - 1.0) - beta * vv;
      for (int l = 0; l < 3; ++l) q.w[1 + l] = 2.0 * beta * v[l];
      q.w[4] = -2.0 * beta;
      for (int l = 0; l < 3; ++l) q.w[5 + l] = 2.0 * beta * B[l];
      q.s = -rho * varsigma / (gamma - 1.0);
      q.phi = rho + beta * BB;
      // psi_d = w^T f_d - f^s_d + theta B_d (nonconservative contribution).
      const double theta = 2.0 * beta * (v[0] * B[0] + v[1] * B[1] + v[2] * B[2]);
      for (int d = 0; d < 3; ++d) {
        double f[8];
        physical_flux(sys, u, d, f);
        double wf = 0.0;
        for (int c = 0; c < 8; ++c) wf += q.w[c] * f[c];
        q.psi[d] = wf - v[d] * q.s + theta * B[d];
      }
      return q;
    }
  }
  return q;
}

double entropy_flux(const SystemDescriptor& sys, std::span<const double> u, int dir) {
  require_admissible(sys, u);
  switch (sys.id) {
    case SystemId::ShallowWater: {
      const double h = u[0];
      const double v1 = u[1] / h, v2 = u[2] / h;
      const double vv = v1 * v1 + v2 * v2;
      const double vd = dir == 1 ? v2 : v1;
      return vd * (0.5 * h * vv + sys.g * h * h);
    }
    default: {
      // Euler and MHD: f^s_d = v_d s.
      const double vd = u[1 + (sys.id == SystemId::Euler1D ? 0 : dir)] / u[0];
      const EntropyQuantities q = entropy_quantities(sys, u);
      return vd * q.s;
    }
  }
}

double max_wavespeed(const SystemDescriptor& sys, std::span<const double> u) {
  require_admissible(sys, u);
  switch (sys.id) {
    case SystemId::Euler1D: {
      const double v = u[1] / u[0];
      return std::fabs(v) + std::sqrt(sys.gamma * pressure(sys, u) / u[0]);
    }
    case SystemId::Euler3D: {
      const double rho = u[0];
      const double vmag = std::sqrt(u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / rho;
      return vmag + std::sqrt(sys.gamma * pressure(sys, u) / rho);
    }
    case SystemId::ShallowWater: {
      const double h = u[0];
      const double vmag = std::sqrt(u[1] * u[1] + u[2] * u[2]) / h;
      return vmag + std::sqrt(sys.g * h);
    }
    case SystemId::IdealMhd: {
      const double rho = u[0];
      const double vmag = std::sqrt(u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / rho;
      const double a2 = sys.gamma * mhd_pressure(sys, u) / rho;
      const double b2 = (u[5] * u[5] + u[6] * u[6] + u[7] * u[7]) / rho;
      const double bx2 = u[5] * u[5] / rho;
      const double s = a2 + b2;
      const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * a2 * bx2));
      return vmag + std::sqrt(0.5 * (s + disc));
    }
  }
  return 0.0;
}

KineticQuantities kinetic_quantities(const SystemDescriptor& sys,
                                     std::span<const double> u) {
  if (sys.id != SystemId::Euler1D && sys.id != SystemId::Euler3D) {
    throw UnsupportedSystemError("kinetic_quantities: Euler systems only");
  }
  require_admissible(sys, u);
  KineticQuantities k;
  const int nd = sys.velocity_dims();
  const double rho = u[0];
  double vv = 0.0;
  for (int l = 0; l < nd; ++l) {
    const double vl = u[1 + l] / rho;
    k.v[1 + l] = vl;
    vv += vl * vl;
  }
  k.v[0] = -0.5 * vv;
  k.v[1 + nd] = 0.0;
  k.kappa = 0.5 * rho * vv;
  for (int l = 0; l < nd; ++l) k.fkappa[l] = 0.5 * rho * k.v[1 + l] * vv;
  return k;
}

MhdThetaUpsilon mhd_theta_upsilon(const SystemDescriptor& sys,
                                  std::span<const double> u) {
  if (sys.id != SystemId::IdealMhd) {
    throw UnsupportedSystemError("mhd_theta_upsilon: MHD only");
  }
  require_admissible(sys, u);
  MhdThetaUpsilon r;
  const double rho = u[0];
  const double v[3] = {u[1] / rho, u[2] / rho, u[3] / rho};
  const double B[3] = {u[5], u[6], u[7]};
  const double vdotB = v[0] * B[0] + v[1] * B[1] + v[2] * B[2];
  r.upsilon[0] = 0.0;
  for (int l = 0; l < 3; ++l) r.upsilon[1 + l] = B[l];
  r.upsilon[4] = vdotB;
  for (int l = 0; l < 3; ++l) r.upsilon[5 + l] = v[l];
  const double beta = rho / (2.0 * mhd_pressure(sys, u));
  r.theta = 2.0 * beta * vdotB;
  return r;
}

void primitive_from_conserved(const SystemDescriptor& sys, std::span<const double> u,
                              std::span<double> prim) {
  require_admissible(sys, u);
  switch (sys.id) {
    case SystemId::Euler1D:
      prim[0] = u[0];
      prim[1] = u[1] / u[0];
      prim[2] = pressure(sys, u);
      return;
    case SystemId::Euler3D:
      prim[0] = u[0];
      for (int l = 0; l < 3; ++l) prim[1 + l] = u[1 + l] / u[0];
      prim[4] = pressure(sys, u);
      return;
    case SystemId::ShallowWater:
      prim[0] = u[0];
      prim[1] = u[1] / u[0];
      prim[2] = u[2] / u[0];
      return;
    case SystemId::IdealMhd:
      prim[0] = u[0];
      for (int l = 0; l < 3; ++l) prim[1 + l] = u[1 + l] / u[0];
      prim[4] = mhd_pressure(sys, u);
      for (int l = 0; l < 3; ++l) prim[5 + l] = u[5 + l];
      return;
  }
}

void conserved_from_primitive(const SystemDescriptor& sys, std::span<const double> prim,
                              std::span<double> u) {
  switch (sys.id) {
    case SystemId::Euler1D: {
      u[0] = prim[0];
      u[1] = prim[0] * prim[1];
      u[2] = prim[2] / (sys.gamma - 1.0) + 0.5 * prim[0] * prim[1] * prim[1];
      break;
    }
    case SystemId::Euler3D: {
      u[0] = prim[0];
      double vv = 0.0;
      for (int l = 0; l < 3; ++l) {
        u[1 + l] = prim[0] * prim[1 + l];
        vv += prim[1 + l] * prim[1 + l];
      }
      u[4] = prim[4] / (sys.gamma - 1.0) + 0.5 * prim[0] * vv;
      break;
    }
    case SystemId::ShallowWater: {
      u[0] = prim[0];
      u[1] = prim[0] * prim[1];
      u[2] = prim[0] * prim[2];
      break;
    }
    case SystemId::IdealMhd: {
      u[0] = prim[0];
      double vv = 0.0, BB = 0.0;
      for (int l = 0; l < 3; ++l) {
        u[1 + l] = prim[0] * prim[1 + l];
        vv += prim[1 + l] * prim[1 + l];
        u[5 + l] = prim[5 + l];
        BB += prim[5 + l] * prim[5 + l];
      }
      u[4] = prim[4] / (sys.gamma - 1.0) + 0.5 * prim[0] * vv + 0.5 * BB;
      break;
    }
  }
  require_admissible(sys, u);
}

} // namespace stdg
