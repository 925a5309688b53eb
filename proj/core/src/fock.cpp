#include "diracsea/fock.hpp"

#include "diracsea/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace diracsea {

namespace {

void require_sites(std::size_t sites, std::size_t minimum, const char* who) {
  if (sites < minimum) {
    throw std::invalid_argument(std::string(who) + ": at least " + std::to_string(minimum) +
                                " sites required");
  }
}

int wrap_index(int k, std::size_t sites) {
  const int n = static_cast<int>(sites);
  const int k_min = min_momentum_index(sites);
  return ((k - k_min) % n + n) % n + k_min;
}

struct BandTable {
  std::vector<double> e_plus;
  std::vector<double> e_minus;
};

BandTable band_table(std::size_t sites, const WalkParams& params) {
  BandTable t;
  t.e_plus.resize(sites);
  t.e_minus.resize(sites);
  const int k_min = min_momentum_index(sites);
  for (std::size_t j = 0; j < sites; ++j) {
    const BlochResult r =
        dispersion(lattice_momentum(k_min + static_cast<int>(j), sites, params.dx()), params);
    t.e_plus[j] = r.e_plus;
    t.e_minus[j] = r.e_minus;
  }
  return t;
}

double fold_energy(double e, double dt) { return fold_phase(e * dt) / dt; }

void block_diag_place(Eigen::MatrixXcd& m, std::size_t site, const Mat2& block) {
  m.block<2, 2>(static_cast<Eigen::Index>(2 * site), static_cast<Eigen::Index>(2 * site)) = block;
}

Eigen::MatrixXcd onsite(std::size_t sites, const Mat2& block) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(2 * sites),
                                              static_cast<Eigen::Index>(2 * sites));
  for (std::size_t n = 0; n < sites; ++n) block_diag_place(m, n, block);
  return m;
}

// psi_{n,r}^dagger -> psi_{n+1,r}^dagger, psi_{n,l}^dagger -> psi_{n-1,l}^dagger
Eigen::MatrixXcd mode_shift(std::size_t sites) {
  const auto dim = static_cast<Eigen::Index>(2 * sites);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 0; n < sites; ++n) {
    const auto up = static_cast<Eigen::Index>(2 * ((n + 1) % sites));
    const auto down = static_cast<Eigen::Index>(2 * ((n + sites - 1) % sites) + 1);
    m(up, static_cast<Eigen::Index>(2 * n)) = 1.0;
    m(down, static_cast<Eigen::Index>(2 * n + 1)) = 1.0;
  }
  return m;
}

}  // namespace

ModeBasis mode_basis(double p, const WalkParams& params) {
  const BlochResult r = dispersion(p, params);
  ModeBasis out;
  out.p = p;
  out.matrix.col(0) = r.s_plus;
  out.matrix.col(1) = r.s_minus;
  out.degenerate = r.degenerate;
  return out;
}

ModeEvent antiparticle_relabel(const ModeEvent& event, std::size_t sites) {
  require_sites(sites, 1, "antiparticle_relabel");
  const EventKind flipped =
      event.kind == EventKind::create ? EventKind::annihilate : EventKind::create;
  switch (event.band) {
    case Band::minus:
      return {Band::antiparticle, wrap_index(-event.k, sites), flipped};
    case Band::antiparticle:
      return {Band::minus, wrap_index(-event.k, sites), flipped};
    case Band::plus:
      break;
  }
  throw std::invalid_argument("antiparticle_relabel: plus-band events have no antiparticle form");
}

SeaState::SeaState(std::size_t sites) : plus_(sites, false), minus_(sites, false) {}

SeaState SeaState::bare_vacuum(std::size_t sites) {
  require_sites(sites, 1, "SeaState");
  return SeaState(sites);
}

SeaState SeaState::dirac_vacuum(std::size_t sites) {
  SeaState s = bare_vacuum(sites);
  s.minus_.assign(sites, true);
  return s;
}

int SeaState::k_min() const { return min_momentum_index(sites()); }

int SeaState::wrap(int k) const { return wrap_index(k, sites()); }

std::size_t SeaState::slot(int k) const { return static_cast<std::size_t>(wrap(k) - k_min()); }

bool SeaState::occupied(Band band, int k) const {
  switch (band) {
    case Band::plus:
      return plus_[slot(k)];
    case Band::minus:
      return minus_[slot(k)];
    case Band::antiparticle:
      return !minus_[slot(-k)];
  }
  return false;
}

std::size_t SeaState::particle_count() const {
  return static_cast<std::size_t>(std::count(plus_.begin(), plus_.end(), true) +
                                  std::count(minus_.begin(), minus_.end(), true));
}

SeaState SeaState::apply(const ModeEvent& event) const {
  const ModeEvent e = event.band == Band::antiparticle ? antiparticle_relabel(event, sites()) : event;
  SeaState out = *this;
  auto& band = e.band == Band::plus ? out.plus_ : out.minus_;
  const std::size_t i = slot(e.k);
  const bool want_empty = e.kind == EventKind::create;
  if (band[i] == want_empty) {
    throw OccupancyError(std::string(want_empty ? "create into occupied" : "annihilate empty") +
                         " mode at k = " + std::to_string(wrap(e.k)));
  }
  band[i] = want_empty;
  return out;
}

SeaState SeaState::apply(std::span<const ModeEvent> events) const {
  SeaState s = *this;
  for (const auto& e : events) s = s.apply(e);
  return s;
}

double mode_energy(Band band, int k, std::size_t sites, const WalkParams& params) {
  require_sites(sites, 1, "mode_energy");
  const double dx = params.dx();
  switch (band) {
    case Band::plus:
      return dispersion(lattice_momentum(wrap_index(k, sites), sites, dx), params).e_plus;
    case Band::minus:
      return dispersion(lattice_momentum(wrap_index(k, sites), sites, dx), params).e_minus;
    case Band::antiparticle:
      return -dispersion(lattice_momentum(wrap_index(-k, sites), sites, dx), params).e_minus;
  }
  return 0.0;
}

double raw_delta_e(const SeaState& sea, std::span<const ModeEvent> events,
                   const WalkParams& params) {
  sea.apply(events);  // occupancy check only
  double total = 0.0;
  for (const auto& e : events) {
    const double energy = mode_energy(e.band, e.k, sea.sites(), params);
    total += e.kind == EventKind::create ? energy : -energy;
  }
  return total;
}

double modular_delta_e(const SeaState& sea, std::span<const ModeEvent> events,
                       const WalkParams& params) {
  return fold_energy(raw_delta_e(sea, events, params), params.dt());
}

double sea_energy(const SeaState& sea, const WalkParams& params) {
  const BandTable t = band_table(sea.sites(), params);
  double total = 0.0;
  for (std::size_t j = 0; j < sea.sites(); ++j) {
    const int k = sea.k_min() + static_cast<int>(j);
    if (sea.occupied(Band::plus, k)) total += t.e_plus[j];
    if (sea.occupied(Band::minus, k)) total += t.e_minus[j];
  }
  return total;
}

PairScenario pair_creation(std::size_t sites, int k_particle, int k_hole,
                           const WalkParams& params) {
  require_sites(sites, 2, "pair_creation");
  const ModeEvent events[] = {{Band::plus, wrap_index(k_particle, sites), EventKind::create},
                              {Band::minus, wrap_index(k_hole, sites), EventKind::annihilate}};
  const SeaState vacuum = SeaState::dirac_vacuum(sites);
  PairScenario out;
  out.name = "pair";
  out.k_particle = events[0].k;
  out.k_hole = events[1].k;
  out.eps1 = mode_energy(Band::plus, out.k_particle, sites, params);
  out.eps2 = -mode_energy(Band::minus, out.k_hole, sites, params);
  out.raw_delta_e = raw_delta_e(vacuum, events, params);
  out.folded_delta_e = fold_energy(out.raw_delta_e, params.dt());
  return out;
}

PairScenario low_boundary_pair(std::size_t sites, const WalkParams& params) {
  require_sites(sites, 2, "low_boundary_pair");
  const BandTable t = band_table(sites, params);
  const auto jp = std::min_element(t.e_plus.begin(), t.e_plus.end()) - t.e_plus.begin();
  const auto jh = std::max_element(t.e_minus.begin(), t.e_minus.end()) - t.e_minus.begin();
  const int k_min = min_momentum_index(sites);
  PairScenario out =
      pair_creation(sites, k_min + static_cast<int>(jp), k_min + static_cast<int>(jh), params);
  out.name = "low-boundary";
  return out;
}

PairScenario fold_boundary_pair(std::size_t sites, const WalkParams& params) {
  require_sites(sites, 2, "fold_boundary_pair");
  const BandTable t = band_table(sites, params);
  const auto jp = std::max_element(t.e_plus.begin(), t.e_plus.end()) - t.e_plus.begin();
  const auto jh = std::min_element(t.e_minus.begin(), t.e_minus.end()) - t.e_minus.begin();
  const int k_min = min_momentum_index(sites);
  PairScenario out =
      pair_creation(sites, k_min + static_cast<int>(jp), k_min + static_cast<int>(jh), params);
  const double edge = kPi / params.dt();
  out.name = "fold-boundary";
  out.eps1 = edge - out.eps1;
  out.eps2 = edge - out.eps2;
  return out;
}

PairScenario min_pair_over_grid(std::size_t sites, const WalkParams& params) {
  require_sites(sites, 2, "min_pair_over_grid");
  const BandTable t = band_table(sites, params);
  const double dt = params.dt();
  double best = std::numeric_limits<double>::infinity();
  std::size_t bp = 0;
  std::size_t bh = 0;
  for (std::size_t jp = 0; jp < sites; ++jp) {
    for (std::size_t jh = 0; jh < sites; ++jh) {
      const double folded = fold_energy(t.e_plus[jp] - t.e_minus[jh], dt);
      if (folded < best) {
        best = folded;
        bp = jp;
        bh = jh;
      }
    }
  }
  const int k_min = min_momentum_index(sites);
  PairScenario out =
      pair_creation(sites, k_min + static_cast<int>(bp), k_min + static_cast<int>(bh), params);
  out.name = "exhaustive-min";
  return out;
}

SpinorLimits sigma_spinor_limits(double q, const WalkParams& params) {
  if (params.model() != Model::dirac) {
    throw std::invalid_argument("sigma_spinor_limits: requires Dirac-walk parameters");
  }
  const DiracSpinors cont = dirac_spinors(q, params);
  const BlochResult near = dispersion(q, params);
  const BlochResult edge = dispersion(wrap_momentum(q + kPi / params.dx(), params.dx()), params);
  SpinorLimits out;
  out.u_plus = fidelity(cont.u, near.s_plus);
  out.v_minus = fidelity(cont.v, near.s_minus);
  out.v_plus_shifted = fidelity(cont.v, edge.s_plus);
  out.u_minus_shifted = fidelity(cont.u, edge.s_minus);
  return out;
}

Eigen::MatrixXcd single_particle_qca(std::size_t sites, const WalkParams& params) {
  require_sites(sites, 2, "single_particle_qca");
  const Eigen::MatrixXcd w = onsite(sites, su2_exp(Axis::x(), -params.mass_phase()));
  const Eigen::MatrixXcd t = mode_shift(sites);
  if (params.model() == Model::dirac) return w * t;

  auto rotated = [&](double theta) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd r = onsite(sites, spin_rotation(Axis::x(), theta));
    return r * t * r.adjoint();
  };
  const double theta = params.theta();
  return w * rotated(-theta) * rotated(theta);
}

Eigen::MatrixXcd momentum_transform(std::size_t sites) {
  require_sites(sites, 1, "momentum_transform");
  const auto dim = static_cast<Eigen::Index>(2 * sites);
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(dim, dim);
  const int k_min = min_momentum_index(sites);
  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  const long n_sites = static_cast<long>(sites);
  for (std::size_t j = 0; j < sites; ++j) {
    const long k = k_min + static_cast<long>(j);
    for (std::size_t n = 0; n < sites; ++n) {
      const long kn = (k * static_cast<long>(n)) % n_sites;
      const cplx phase =
          std::polar(scale, -2.0 * kPi * static_cast<double>(kn) / static_cast<double>(sites));
      for (Eigen::Index a = 0; a < 2; ++a) {
        f(static_cast<Eigen::Index>(2 * j) + a, static_cast<Eigen::Index>(2 * n) + a) = phase;
      }
    }
  }
  return f;
}

Mat2 momentum_block(const Eigen::MatrixXcd& single_particle, std::size_t sites, int k) {
  const auto dim = static_cast<Eigen::Index>(2 * sites);
  if (single_particle.rows() != dim || single_particle.cols() != dim) {
    throw std::invalid_argument("momentum_block: matrix size does not match 2N");
  }
  const Eigen::MatrixXcd f = momentum_transform(sites);
  const auto j = static_cast<Eigen::Index>(wrap_index(k, sites) - min_momentum_index(sites));
  // rows 2j, 2j+1 of F M F^dagger
  const Eigen::MatrixXcd rows = f.middleRows(2 * j, 2) * single_particle;
  return rows * f.middleRows(2 * j, 2).adjoint();
}

double band_mixing(std::size_t sites, const WalkParams& params) {
  const Eigen::MatrixXcd m = single_particle_qca(sites, params);
  const Eigen::MatrixXcd f = momentum_transform(sites);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  const int k_min = min_momentum_index(sites);
  for (std::size_t j = 0; j < sites; ++j) {
    const double p = lattice_momentum(k_min + static_cast<int>(j), sites, params.dx());
    block_diag_place(basis, j, mode_basis(p, params).matrix);
  }
  const Eigen::MatrixXcd modes = basis.adjoint() * f * m * f.adjoint() * basis;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < modes.rows(); ++i) {
    for (Eigen::Index j = 0; j < modes.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(modes(i, j)));
    }
  }
  return worst;
}

}  // namespace diracsea
