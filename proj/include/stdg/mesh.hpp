#ifndef STDG_MESH_HPP
#define STDG_MESH_HPP

namespace stdg {

/// Uniform periodic 1D mesh crossed with uniform time slabs. The reference
/// element is [-1, 1] in both directions, so the spatial Jacobian is dx/2
/// and the temporal scaling dt/2.
struct MeshConfig {
  int num_elements = 1; // K_S
  int num_slabs = 1;    // K_T
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_final = 1.0;

  double dx() const { return (x_hi - x_lo) / num_elements; }
  double dt() const { return t_final / num_slabs; }
  double jacobian() const { return 0.5 * dx(); }
};

} // namespace stdg

#endif
