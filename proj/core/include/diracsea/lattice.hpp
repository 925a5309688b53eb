#pragma once

// Position-space evolution on a periodic ring of N sites. Shifts are index
// rotations, so the light cone is exact by construction.

#include "diracsea/spinor.hpp"
#include "diracsea/walk1d.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace diracsea {

enum class Chirality { r = 0, l = 1 };

struct MomentumAmplitudes;

/// Amplitude field over N sites x (r, l), stored site-major. Every factory
/// except zero() yields a unit-norm state.
class LatticeState {
 public:
  static LatticeState delta(std::size_t sites, std::size_t site, Chirality component);
  /// Throws std::invalid_argument unless the amplitudes have unit norm within 1e-12.
  static LatticeState from_amplitudes(std::size_t sites, std::vector<cplx> amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static LatticeState normalized(std::size_t sites, std::vector<cplx> amplitudes);
  /// e^{i p_k n dx} / sqrt(N) (x) spinor, p_k = 2 pi k / (N dx).
  static LatticeState plane_wave(std::size_t sites, int k, const Spinor2& spinor);
  /// The all-zero field; the only non-normalized state.
  static LatticeState zero(std::size_t sites);

  std::size_t sites() const { return sites_; }
  cplx amplitude(std::size_t site, Chirality component) const {
    return amps_[2 * site + static_cast<std::size_t>(component)];
  }
  Spinor2 spinor(std::size_t site) const;
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  double site_probability(std::size_t site) const;
  std::vector<double> probabilities() const;

  /// Cyclic translation by `shift` sites (positive moves amplitude to larger n).
  LatticeState translated(long shift) const;

 private:
  LatticeState(std::size_t sites, std::vector<cplx> amplitudes);
  friend LatticeState step_dirac(const LatticeState&, const WalkParams&);
  friend LatticeState step_mod(const LatticeState&, const WalkParams&);
  friend LatticeState inverse_dft(const MomentumAmplitudes&);

  std::size_t sites_;
  std::vector<cplx> amps_;
};

/// One Dirac-walk step: r moves +1 site, l moves -1 site, then the mass coin.
LatticeState step_dirac(const LatticeState& state, const WalkParams& params);

/// One modified-walk step: two conjugated shifts then the mass coin. Requires N >= 4.
LatticeState step_mod(const LatticeState& state, const WalkParams& params);

/// step_dirac or step_mod according to params.model().
LatticeState step(const LatticeState& state, const WalkParams& params);

/// Lowest momentum index on an N-site ring: -floor(N/2).
int min_momentum_index(std::size_t sites);
/// p_k = 2 pi k / (N dx)
double lattice_momentum(int k, std::size_t sites, double dx);

struct MomentumAmplitudes {
  std::size_t sites = 0;
  int k_min = 0;
  std::vector<Spinor2> amplitudes;  // amplitudes[j] belongs to k = k_min + j

  const Spinor2& at(int k) const { return amplitudes[static_cast<std::size_t>(k - k_min)]; }
};

/// psi~(k) = N^{-1/2} sum_n e^{-i p_k n dx} psi(n), k in {-floor(N/2), ..., ceil(N/2) - 1}.
MomentumAmplitudes dft(const LatticeState& state);
LatticeState inverse_dft(const MomentumAmplitudes& spectrum);

/// Sites whose two-component norm exceeds tol, ascending.
std::vector<std::size_t> support(const LatticeState& state, double tol);

}  // namespace diracsea
