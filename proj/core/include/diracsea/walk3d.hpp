#pragma once

// 3+1-D walks on 4-spinors in the chiral layout alpha_j = diag(sigma_j, -sigma_j),
// beta = [[0, I], [I, 0]]:
//     U(p)     = V T_z T_y T_x,   T_j = exp(-i p_j alpha_j dx),  V = exp(-i m c^2 beta dt)
//     U_mod(p) = V T~_{z,-theta} T~_{z,theta} T~_{y,-theta} T~_{y,theta} T~_{x,-theta} T~_{x,theta}
// with the shift along z rotated about x, y about z, and x about y.

#include "diracsea/spinor.hpp"
#include "diracsea/walk1d.hpp"

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace diracsea {

struct Momentum3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const;
  /// Each component wrapped into [-pi/dx, pi/dx).
  Momentum3 wrapped(double dx) const;
};

Mat4 alpha_matrix(std::size_t axis);  // 0, 1, 2 for x, y, z
Mat4 beta_matrix();

Mat4 u_3d(const Momentum3& p, const WalkParams& params);
Mat4 u_3d_mod(const Momentum3& p, const WalkParams& params);
/// u_3d or u_3d_mod according to params.model().
Mat4 bloch_matrix3(const Momentum3& p, const WalkParams& params);

struct Bloch3Result {
  Momentum3 p;
  std::array<double, 4> energies{};  // principal branch, ascending
  std::array<Spinor4, 4> vectors{};
  bool degenerate = false;  // some pair closer than 1e-9 / dt modulo the fold
};

Bloch3Result dispersion3(const Momentum3& p, const WalkParams& params);

/// Energies only (no eigenvectors), ascending.
std::array<double, 4> energies3(const Momentum3& p, const WalkParams& params);

enum class PointTag { dirac_like, dirac_like_with_phase, weyl_pair, generic };

std::string_view to_string(PointTag tag);

struct PointClass {
  PointTag tag = PointTag::generic;
  /// Set when m > 0 and a component sits at +-pi/(2dx), where the massive
  /// walk has no known effective description.
  bool caveat = false;
  /// For dirac-like tags: max |U(p) - s U(p - shift)| with s = +-1; 0 otherwise.
  double identity_residual = 0.0;
  Momentum3 offset;  // p minus the nearest special point
};

/// Tags a momentum by the special point it lies near (within 0.1/dx per
/// component): an even number of components at +-pi/dx gives dirac-like, an
/// odd number dirac-like-with-phase, m = 0 with every component at +-pi/(2dx)
/// weyl-pair. Dirac model only.
PointClass classify_point(const Momentum3& p, const WalkParams& params);

struct GapScan3 {
  double max_abs_energy = 0.0;
  Momentum3 argmax;
  std::size_t grid = 0;
  std::size_t points = 0;
  bool gapped = false;  // max_abs_energy * dt < pi/2 on the scanned points only
};

/// grid^3 uniform momenta plus every combination of components in
/// {0, +-pi/(2dx), +-pi/dx}.
GapScan3 gap_scan3(const WalkParams& params, std::size_t grid = 64);

/// Reorders bands point by point so each follows the previous point's
/// eigenvector with maximal total overlap.
std::vector<Bloch3Result> track_bands(std::vector<Bloch3Result> path);

/// Sweeps component `axis` over `points` uniform values in [-pi/dx, pi/dx)
/// with the other two held at `fixed`, band-tracked.
std::vector<Bloch3Result> dispersion3_slice(const WalkParams& params, std::size_t axis,
                                            const Momentum3& fixed, std::size_t points);

}  // namespace diracsea
