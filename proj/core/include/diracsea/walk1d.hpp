#pragma once

// Momentum-space analysis of the 1+1-D Dirac walk
//     U(p) = exp(-i m c^2 sigma_x dt) exp(-i p sigma_z dx)
// and the modified walk
//     U_mod(p) = exp(-i m c^2 sigma_x dt) exp(-i p sigma_{-theta} dx) exp(-i p sigma_theta dx).
//
// Momenta are physical (radians per dx); all internal arithmetic is done on the
// dimensionless products p*dx, E*dt and m*c^2*dt.

#include "diracsea/spinor.hpp"

#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace diracsea {

enum class Model { dirac, modified };

std::string_view to_string(Model model);
/// Accepts "dirac" or "modified"; throws std::invalid_argument otherwise.
Model parse_model(std::string_view text);

/// Physical and lattice constants of a walk. The time step is always derived
/// from the lattice spacing: dt = dx/c for the Dirac walk and
/// dt = 2 cos(theta) dx / c for the modified walk.
class WalkParams {
 public:
  static WalkParams dirac(double mass, double c, double dx);
  /// Requires 0 <= theta < pi/2.
  static WalkParams modified(double mass, double c, double dx, double theta);
  /// dx = c = 1 and the mass chosen so that m c^2 dt equals mass_phase.
  static WalkParams from_mass_phase(Model model, double mass_phase, double theta = 0.0);

  Model model() const { return model_; }
  double mass() const { return mass_; }
  double c() const { return c_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  double theta() const { return theta_; }

  /// m c^2 dt
  double mass_phase() const { return mass_phase_; }
  /// m c^2
  double rest_energy() const { return mass_ * c_ * c_; }

 private:
  WalkParams(Model model, double mass, double c, double dx, double dt, double theta,
             double mass_phase);

  Model model_;
  double mass_;
  double c_;
  double dx_;
  double dt_;
  double theta_;
  double mass_phase_;
};

struct BlochResult {
  double p = 0.0;
  double e_plus = 0.0;   // >= 0, principal branch
  double e_minus = 0.0;  // < 0 except at the fold, where both bands sit at +pi/dt
  Spinor2 s_plus = Spinor2::Zero();
  Spinor2 s_minus = Spinor2::Zero();
  bool degenerate = false;
};

/// Raised when the continuum spinors are requested at E_p = 0.
class DegenerateSpinorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by find_theta when m c^2 dt is outside [0, pi/2).
class OutOfHypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by find_theta when the requested margin leaves no admissible theta.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Wraps a momentum into [-pi/dx, pi/dx).
double wrap_momentum(double p, double dx);

Mat2 u_dirac(double p, const WalkParams& params);
Mat2 u_mod(double p, const WalkParams& params);
/// u_dirac or u_mod according to params.model().
Mat2 bloch_matrix(double p, const WalkParams& params);

/// Diagonalizes the Bloch matrix and labels the bands so that e_plus >= e_minus.
BlochResult dispersion(double p, const WalkParams& params);

/// sqrt(p^2 c^2 + m^2 c^4)
double continuum_energy(double p, const WalkParams& params);

struct DiracSpinors {
  Spinor2 u;  // +E_p eigenvector of m c^2 sigma_x + p c sigma_z
  Spinor2 v;  // -E_p eigenvector
};

/// Positive- and negative-energy eigenvectors of the continuum Hamiltonian
/// m c^2 sigma_x + p c sigma_z in the (r, l) basis:
///   u = (sqrt(E + pc), sqrt(E - pc)) / sqrt(2E)
///   v = (-sqrt(E - pc), sqrt(E + pc)) / sqrt(2E)
/// Throws DegenerateSpinorError when m = 0 and p = 0.
DiracSpinors dirac_spinors(double p, const WalkParams& params);

/// cos(E dt) = cos(mc^2 dt) cos^2(p dx) + sin^2(p dx) cos(mc^2 dt + 2 phi), phi = pi/2 - theta.
double cos_energy_closed_form(double p, const WalkParams& params);

struct GapCertificate {
  double max_abs_energy = 0.0;  // physical units
  double argmax_p = 0.0;
  std::size_t points = 0;
  bool gapped = false;  // max_abs_energy * dt < pi/2
};

/// Scans grid_size uniform momenta plus the extremum candidates
/// {0, +-pi/(2dx), +-pi/dx}. The closed form is monotone in cos^2(p dx), so
/// the extrema always sit on the candidates and the grid only adds redundancy.
/// Requires grid_size >= 64 and a modified-walk parameter set.
GapCertificate gap_certificate(const WalkParams& params, std::size_t grid_size);

/// Returns the midpoint of [pi/4 + m_dt/2 + margin, pi/2 - margin], the
/// theta range for which cos(m_dt + 2 phi) > 0.
double find_theta(double m_dt, double margin = 0.0);

struct SwapFidelity {
  double f_plus = 0.0;   // |<v_p | s+_{pi/dx + p}>|^2
  double f_minus = 0.0;  // |<u_p | s-_{pi/dx + p}>|^2
  double energy_error = 0.0;  // |E+_{pi/dx + p} - (pi/dt - E_p)|
};

/// Measures how closely the zone-edge eigenstates reproduce the continuum
/// spinors with the band roles exchanged. Dirac model only.
SwapFidelity boundary_swap_fidelity(double p, const WalkParams& params);

/// Number of momenta in the zone where E+(p) crosses `energy`, counted as sign
/// changes of E+(p) - energy around a periodic grid of grid_points momenta.
std::size_t count_momentum_solutions(double energy, const WalkParams& params,
                                     std::size_t grid_points = 20000);

/// max over |p| <= p_max of |E+(p) - sqrt(p^2 c^2 + m^2 c^4)|. Requires p_max dx <= 1.
double continuum_deviation(const WalkParams& params, double p_max, std::size_t grid_points = 401);

}  // namespace diracsea
