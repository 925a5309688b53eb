#include "diracsea/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace diracsea {

namespace {

void require_sites(std::size_t sites, std::size_t minimum) {
  if (sites < minimum) {
    throw std::invalid_argument("LatticeState: at least " + std::to_string(minimum) +
                                " sites required");
  }
}

std::size_t wrap_site(long n, std::size_t sites) {
  const long s = static_cast<long>(sites);
  return static_cast<std::size_t>(((n % s) + s) % s);
}

void apply_sitewise(std::vector<cplx>& amps, const Mat2& m) {
  for (std::size_t i = 0; i < amps.size(); i += 2) {
    const cplx r = amps[i];
    const cplx l = amps[i + 1];
    amps[i] = m(0, 0) * r + m(0, 1) * l;
    amps[i + 1] = m(1, 0) * r + m(1, 1) * l;
  }
}

// exp(-i P sigma_z dx): r component to n+1, l component to n-1.
std::vector<cplx> chiral_shift(const std::vector<cplx>& amps, std::size_t sites) {
  std::vector<cplx> out(amps.size());
  for (std::size_t n = 0; n < sites; ++n) {
    out[2 * ((n + 1) % sites)] = amps[2 * n];
    out[2 * ((n + sites - 1) % sites) + 1] = amps[2 * n + 1];
  }
  return out;
}

// exp(-i P sigma_theta dx) = R_theta exp(-i P sigma_z dx) R_theta^dagger
std::vector<cplx> rotated_shift(std::vector<cplx> amps, std::size_t sites, double theta) {
  const Mat2 rot = spin_rotation(Axis::x(), theta);
  apply_sitewise(amps, rot.adjoint());
  amps = chiral_shift(amps, sites);
  apply_sitewise(amps, rot);
  return amps;
}

}  // namespace

LatticeState::LatticeState(std::size_t sites, std::vector<cplx> amplitudes)
    : sites_(sites), amps_(std::move(amplitudes)) {}

LatticeState LatticeState::delta(std::size_t sites, std::size_t site, Chirality component) {
  require_sites(sites, 2);
  if (site >= sites) throw std::out_of_range("LatticeState::delta: site out of range");
  std::vector<cplx> amps(2 * sites, 0.0);
  amps[2 * site + static_cast<std::size_t>(component)] = 1.0;
  return {sites, std::move(amps)};
}

LatticeState LatticeState::from_amplitudes(std::size_t sites, std::vector<cplx> amplitudes) {
  require_sites(sites, 2);
  if (amplitudes.size() != 2 * sites) {
    throw std::invalid_argument("LatticeState: expected 2N amplitudes");
  }
  LatticeState s{sites, std::move(amplitudes)};
  if (std::abs(s.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("LatticeState: amplitudes are not normalized");
  }
  return s;
}

LatticeState LatticeState::normalized(std::size_t sites, std::vector<cplx> amplitudes) {
  require_sites(sites, 2);
  if (amplitudes.size() != 2 * sites) {
    throw std::invalid_argument("LatticeState: expected 2N amplitudes");
  }
  LatticeState s{sites, std::move(amplitudes)};
  const double n = std::sqrt(s.norm());
  if (!(n > 0.0)) throw std::invalid_argument("LatticeState: cannot normalize a zero field");
  for (auto& a : s.amps_) a /= n;
  return s;
}

LatticeState LatticeState::plane_wave(std::size_t sites, int k, const Spinor2& spinor) {
  require_sites(sites, 2);
  const double sn = spinor.norm();
  if (std::abs(sn - 1.0) > 1e-12) {
    throw std::invalid_argument("LatticeState::plane_wave: spinor must be normalized");
  }
  std::vector<cplx> amps(2 * sites);
  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  for (std::size_t n = 0; n < sites; ++n) {
    const long kn = (static_cast<long>(k) * static_cast<long>(n)) % static_cast<long>(sites);
    const double arg = 2.0 * kPi * static_cast<double>(kn) / static_cast<double>(sites);
    const cplx phase = std::polar(scale, arg);
    amps[2 * n] = phase * spinor[0];
    amps[2 * n + 1] = phase * spinor[1];
  }
  return {sites, std::move(amps)};
}

LatticeState LatticeState::zero(std::size_t sites) {
  require_sites(sites, 2);
  return {sites, std::vector<cplx>(2 * sites, 0.0)};
}

Spinor2 LatticeState::spinor(std::size_t site) const {
  return Spinor2(amps_[2 * site], amps_[2 * site + 1]);
}

double LatticeState::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

double LatticeState::site_probability(std::size_t site) const {
  return std::norm(amps_[2 * site]) + std::norm(amps_[2 * site + 1]);
}

std::vector<double> LatticeState::probabilities() const {
  std::vector<double> out(sites_);
  for (std::size_t n = 0; n < sites_; ++n) out[n] = site_probability(n);
  return out;
}

LatticeState LatticeState::translated(long shift) const {
  std::vector<cplx> out(amps_.size());
  for (std::size_t n = 0; n < sites_; ++n) {
    const std::size_t m = wrap_site(static_cast<long>(n) + shift, sites_);
    out[2 * m] = amps_[2 * n];
    out[2 * m + 1] = amps_[2 * n + 1];
  }
  return {sites_, std::move(out)};
}

LatticeState step_dirac(const LatticeState& state, const WalkParams& params) {
  std::vector<cplx> amps = chiral_shift(state.amps_, state.sites_);
  apply_sitewise(amps, su2_exp(Axis::x(), -params.mass_phase()));
  return {state.sites_, std::move(amps)};
}

LatticeState step_mod(const LatticeState& state, const WalkParams& params) {
  require_sites(state.sites_, 4);
  const double theta = params.theta();
  std::vector<cplx> amps = rotated_shift(state.amps_, state.sites_, theta);
  amps = rotated_shift(std::move(amps), state.sites_, -theta);
  apply_sitewise(amps, su2_exp(Axis::x(), -params.mass_phase()));
  return {state.sites_, std::move(amps)};
}

LatticeState step(const LatticeState& state, const WalkParams& params) {
  return params.model() == Model::dirac ? step_dirac(state, params) : step_mod(state, params);
}

int min_momentum_index(std::size_t sites) { return -static_cast<int>(sites / 2); }

double lattice_momentum(int k, std::size_t sites, double dx) {
  return 2.0 * kPi * static_cast<double>(k) / (static_cast<double>(sites) * dx);
}

MomentumAmplitudes dft(const LatticeState& state) {
  const std::size_t sites = state.sites();
  MomentumAmplitudes out;
  out.sites = sites;
  out.k_min = min_momentum_index(sites);
  out.amplitudes.assign(sites, Spinor2::Zero());
  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  for (std::size_t j = 0; j < sites; ++j) {
    const int k = out.k_min + static_cast<int>(j);
    Spinor2 acc = Spinor2::Zero();
    for (std::size_t n = 0; n < sites; ++n) {
      // reduce k*n mod N first so the phase argument stays small
      const long kn = (static_cast<long>(k) * static_cast<long>(n)) % static_cast<long>(sites);
      const double arg = -2.0 * kPi * static_cast<double>(kn) / static_cast<double>(sites);
      acc += std::polar(scale, arg) * state.spinor(n);
    }
    out.amplitudes[j] = acc;
  }
  return out;
}

LatticeState inverse_dft(const MomentumAmplitudes& spectrum) {
  const std::size_t sites = spectrum.sites;
  require_sites(sites, 2);
  std::vector<cplx> amps(2 * sites, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  for (std::size_t n = 0; n < sites; ++n) {
    Spinor2 acc = Spinor2::Zero();
    for (std::size_t j = 0; j < sites; ++j) {
      const int k = spectrum.k_min + static_cast<int>(j);
      const long kn = (static_cast<long>(k) * static_cast<long>(n)) % static_cast<long>(sites);
      const double arg = 2.0 * kPi * static_cast<double>(kn) / static_cast<double>(sites);
      acc += std::polar(scale, arg) * spectrum.amplitudes[j];
    }
    amps[2 * n] = acc[0];
    amps[2 * n + 1] = acc[1];
  }
  return {sites, std::move(amps)};
}

std::vector<std::size_t> support(const LatticeState& state, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("support: tol must be non-negative");
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < state.sites(); ++n) {
    if (std::sqrt(state.site_probability(n)) > tol) out.push_back(n);
  }
  return out;
}

}  // namespace diracsea
