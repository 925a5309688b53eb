#pragma once

// Occupation-number bookkeeping for the free fermionic QCA on a finite
// momentum grid p_k = 2 pi k / (N dx). The QCA is quadratic, so the many-body
// dynamics is fixed by its single-particle matrix; nothing here builds
// exponentially large Fock vectors (see circuit.hpp for that).

#include "diracsea/spinor.hpp"
#include "diracsea/walk1d.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracsea {

/// plus/minus are the positive- and negative-energy particle bands; an
/// antiparticle at k is the absence of a minus-band particle at -k.
enum class Band { plus, minus, antiparticle };
enum class EventKind { create, annihilate };

struct ModeEvent {
  Band band;
  int k;  // grid index, wrapped into [-floor(N/2), ceil(N/2) - 1]
  EventKind kind;

  bool operator==(const ModeEvent&) const = default;
};

class OccupancyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Columns are the walk eigenspinors s+_p and s-_p in the (r, l) basis; the
/// matrix maps band amplitudes (a_p, b_p) to (psi_r(p), psi_l(p)).
struct ModeBasis {
  double p = 0.0;
  Mat2 matrix = Mat2::Identity();
  bool degenerate = false;
};

ModeBasis mode_basis(double p, const WalkParams& params);

/// minus-band event at k <-> antiparticle event at -k with create/annihilate
/// exchanged. Applying it twice is the identity. Throws std::invalid_argument
/// for plus-band events.
ModeEvent antiparticle_relabel(const ModeEvent& event, std::size_t sites);

/// Occupations of the plus and minus bands on an N-point momentum grid.
class SeaState {
 public:
  /// Bare vacuum: every band empty.
  static SeaState bare_vacuum(std::size_t sites);
  /// Dirac vacuum: minus band filled, plus band empty.
  static SeaState dirac_vacuum(std::size_t sites);

  std::size_t sites() const { return plus_.size(); }
  int k_min() const;
  int wrap(int k) const;

  bool occupied(Band band, int k) const;
  std::size_t particle_count() const;

  /// Throws OccupancyError when creating into an occupied mode or
  /// annihilating an empty one.
  SeaState apply(const ModeEvent& event) const;
  SeaState apply(std::span<const ModeEvent> events) const;

  bool operator==(const SeaState&) const = default;

 private:
  explicit SeaState(std::size_t sites);
  std::size_t slot(int k) const;

  std::vector<bool> plus_;
  std::vector<bool> minus_;
};

/// Principal-branch energy of a single mode; for antiparticles this is
/// -E-(p_{-k}).
double mode_energy(Band band, int k, std::size_t sites, const WalkParams& params);

/// Sum of signed mode energies (create +E, annihilate -E) without folding.
/// Checks the events against `sea` in order.
double raw_delta_e(const SeaState& sea, std::span<const ModeEvent> events,
                   const WalkParams& params);

/// raw_delta_e folded into (-pi/dt, pi/dt].
double modular_delta_e(const SeaState& sea, std::span<const ModeEvent> events,
                       const WalkParams& params);

/// Raw finite-grid total of occupied-mode energies; no regularization.
double sea_energy(const SeaState& sea, const WalkParams& params);

struct PairScenario {
  std::string name;
  int k_particle = 0;
  int k_hole = 0;
  double eps1 = 0.0;  // distance of the particle energy from its boundary
  double eps2 = 0.0;  // distance of the hole energy from its boundary
  double raw_delta_e = 0.0;
  double folded_delta_e = 0.0;
};

/// Creates a plus-band particle at k_particle and removes the minus-band
/// particle at k_hole from the Dirac vacuum. eps are measured from E = 0.
PairScenario pair_creation(std::size_t sites, int k_particle, int k_hole,
                           const WalkParams& params);

/// Lowest plus-band mode paired with the highest minus-band mode.
PairScenario low_boundary_pair(std::size_t sites, const WalkParams& params);

/// Plus-band and minus-band modes closest to the fold E = +-pi/dt; eps are
/// measured from the fold.
PairScenario fold_boundary_pair(std::size_t sites, const WalkParams& params);

/// Pair (k_particle, k_hole) minimizing the folded energy change over every
/// combination on the grid.
PairScenario min_pair_over_grid(std::size_t sites, const WalkParams& params);

struct SpinorLimits {
  double u_plus = 0.0;           // |<u_q | s+_q>|^2
  double v_minus = 0.0;          // |<v_q | s-_q>|^2
  double v_plus_shifted = 0.0;   // |<v_q | s+_{pi/dx + q}>|^2
  double u_minus_shifted = 0.0;  // |<u_q | s-_{pi/dx + q}>|^2
};

/// Overlaps between the walk eigenspinors and the continuum Dirac spinors near
/// q = 0 and near the zone edge. Dirac model only.
SpinorLimits sigma_spinor_limits(double q, const WalkParams& params);

/// Single-particle matrix M of one QCA step, G psi_j^dagger G^dagger = sum_i
/// M_ij psi_i^dagger, in the position basis with index 2n + a (a = 0 for r).
/// Built from the mode permutation T, the on-site mass mixing W and, for the
/// modified model, the on-site basis rotation.
Eigen::MatrixXcd single_particle_qca(std::size_t sites, const WalkParams& params);

/// Unitary change of basis from position index 2n + a to momentum index
/// 2j + a, with k = k_min + j.
Eigen::MatrixXcd momentum_transform(std::size_t sites);

/// The 2x2 block of a translation-invariant single-particle matrix at grid index k.
Mat2 momentum_block(const Eigen::MatrixXcd& single_particle, std::size_t sites, int k);

/// Largest matrix element that couples different bands or different momenta
/// after rotating the single-particle QCA into the mode basis. Zero means the
/// Dirac vacuum only acquires a global phase under one step.
double band_mixing(std::size_t sites, const WalkParams& params);

}  // namespace diracsea
