#include "diracsea/walk1d.hpp"

#include "diracsea/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace diracsea {

namespace {

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("WalkParams: ") + name + " must be positive");
  }
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta < kPi / 2)) {
    throw std::invalid_argument("WalkParams: theta must lie in [0, pi/2)");
  }
}

void require_modified(const WalkParams& params, const char* who) {
  if (params.model() != Model::modified) {
    throw std::invalid_argument(std::string(who) + ": requires modified-walk parameters");
  }
}

// exp(-i k n.sigma)
Mat2 shift_factor(const Axis& axis, double k) { return su2_exp(axis, -k); }

Mat2 coin(const WalkParams& params) { return su2_exp(Axis::x(), -params.mass_phase()); }

}  // namespace

std::string_view to_string(Model model) {
  return model == Model::dirac ? "dirac" : "modified";
}

Model parse_model(std::string_view text) {
  if (text == "dirac") return Model::dirac;
  if (text == "modified") return Model::modified;
  throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

WalkParams::WalkParams(Model model, double mass, double c, double dx, double dt, double theta,
                       double mass_phase)
    : model_(model), mass_(mass), c_(c), dx_(dx), dt_(dt), theta_(theta), mass_phase_(mass_phase) {}

WalkParams WalkParams::dirac(double mass, double c, double dx) {
  check_positive(c, "c");
  check_positive(dx, "dx");
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("WalkParams: mass must be non-negative");
  }
  const double dt = dx / c;
  return {Model::dirac, mass, c, dx, dt, 0.0, mass * c * c * dt};
}

WalkParams WalkParams::modified(double mass, double c, double dx, double theta) {
  check_positive(c, "c");
  check_positive(dx, "dx");
  check_theta(theta);
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("WalkParams: mass must be non-negative");
  }
  const double dt = 2.0 * std::cos(theta) * dx / c;
  return {Model::modified, mass, c, dx, dt, theta, mass * c * c * dt};
}

WalkParams WalkParams::from_mass_phase(Model model, double mass_phase, double theta) {
  if (!(mass_phase >= 0.0) || !std::isfinite(mass_phase)) {
    throw std::invalid_argument("WalkParams: m c^2 dt must be non-negative");
  }
  if (model == Model::dirac) {
    return {Model::dirac, mass_phase, 1.0, 1.0, 1.0, 0.0, mass_phase};
  }
  check_theta(theta);
  const double dt = 2.0 * std::cos(theta);
  return {Model::modified, mass_phase / dt, 1.0, 1.0, dt, theta, mass_phase};
}

double wrap_momentum(double p, double dx) {
  const double k = fold_phase(p * dx);
  // fold_phase lands in (-pi, pi]; the zone is [-pi, pi).
  return (k == kPi ? -kPi : k) / dx;
}

Mat2 u_dirac(double p, const WalkParams& params) {
  return coin(params) * shift_factor(Axis::z(), p * params.dx());
}

Mat2 u_mod(double p, const WalkParams& params) {
  const double k = p * params.dx();
  const double theta = params.theta();
  return coin(params) * shift_factor(rotated_sigma_axis(-theta), k) *
         shift_factor(rotated_sigma_axis(theta), k);
}

Mat2 bloch_matrix(double p, const WalkParams& params) {
  return params.model() == Model::dirac ? u_dirac(p, params) : u_mod(p, params);
}

BlochResult dispersion(double p, const WalkParams& params) {
  const auto pairs = eig_unitary(bloch_matrix(p, params));
  const double dt = params.dt();
  double e0 = principal_energy(pairs[0].phase, dt);
  double e1 = principal_energy(pairs[1].phase, dt);

  BlochResult out;
  out.p = p;
  if (e0 >= e1) {
    out.e_plus = e0;
    out.e_minus = e1;
    out.s_plus = pairs[0].vector;
    out.s_minus = pairs[1].vector;
  } else {
    out.e_plus = e1;
    out.e_minus = e0;
    out.s_plus = pairs[1].vector;
    out.s_minus = pairs[0].vector;
  }
  out.degenerate = modular_distance(e0, e1, dt) * dt < 1e-12;
  return out;
}

double continuum_energy(double p, const WalkParams& params) {
  return std::hypot(p * params.c(), params.rest_energy());
}

DiracSpinors dirac_spinors(double p, const WalkParams& params) {
  const double pc = p * params.c();
  const double mc2 = params.rest_energy();
  const double e = std::hypot(pc, mc2);
  if (e == 0.0) {
    throw DegenerateSpinorError("dirac_spinors: E_p = 0 (m = 0 and p = 0)");
  }
  // E +- pc without cancellation: (E + pc)(E - pc) = (m c^2)^2.
  double e_plus_pc;
  double e_minus_pc;
  if (pc >= 0.0) {
    e_plus_pc = e + pc;
    e_minus_pc = mc2 * mc2 / e_plus_pc;
  } else {
    e_minus_pc = e - pc;
    e_plus_pc = mc2 * mc2 / e_minus_pc;
  }
  const double a = std::sqrt(e_plus_pc / (2.0 * e));
  const double b = std::sqrt(e_minus_pc / (2.0 * e));

  DiracSpinors out;
  out.u << a, b;
  out.v << -b, a;
  return out;
}

double cos_energy_closed_form(double p, const WalkParams& params) {
  require_modified(params, "cos_energy_closed_form");
  const double k = p * params.dx();
  const double m = params.mass_phase();
  const double phi = kPi / 2 - params.theta();
  const double c = std::cos(k);
  const double s = std::sin(k);
  return std::cos(m) * c * c + s * s * std::cos(m + 2.0 * phi);
}

GapCertificate gap_certificate(const WalkParams& params, std::size_t grid_size) {
  require_modified(params, "gap_certificate");
  if (grid_size < 64) {
    throw std::invalid_argument("gap_certificate: grid_size must be at least 64");
  }
  const double dx = params.dx();
  std::vector<double> momenta;
  momenta.reserve(grid_size + 5);
  for (std::size_t j = 0; j < grid_size; ++j) {
    momenta.push_back((-kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size)) /
                      dx);
  }
  for (double k : {0.0, kPi / 2, -kPi / 2, kPi, -kPi}) momenta.push_back(k / dx);

  std::vector<double> abs_energy(momenta.size());
  parallel_for(momenta.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const BlochResult r = dispersion(momenta[i], params);
      abs_energy[i] = std::max(std::abs(r.e_plus), std::abs(r.e_minus));
    }
  });

  const auto it = std::max_element(abs_energy.begin(), abs_energy.end());
  GapCertificate out;
  out.max_abs_energy = *it;
  out.argmax_p = momenta[static_cast<std::size_t>(it - abs_energy.begin())];
  out.points = momenta.size();
  out.gapped = out.max_abs_energy * params.dt() < kPi / 2;
  return out;
}

double find_theta(double m_dt, double margin) {
  if (!(m_dt >= 0.0 && m_dt < kPi / 2)) {
    throw OutOfHypothesisError("find_theta: m c^2 dt must lie in [0, pi/2)");
  }
  if (!(margin >= 0.0)) throw std::invalid_argument("find_theta: margin must be non-negative");
  const double lo = kPi / 4 + m_dt / 2 + margin;
  const double hi = kPi / 2 - margin;
  if (!(lo < hi)) {
    throw InfeasibleError("find_theta: margin leaves no admissible theta");
  }
  return 0.5 * (lo + hi);
}

SwapFidelity boundary_swap_fidelity(double p, const WalkParams& params) {
  if (params.model() != Model::dirac) {
    throw std::invalid_argument("boundary_swap_fidelity: requires Dirac-walk parameters");
  }
  const DiracSpinors cont = dirac_spinors(p, params);
  const double shifted = wrap_momentum(p + kPi / params.dx(), params.dx());
  const BlochResult edge = dispersion(shifted, params);

  SwapFidelity out;
  out.f_plus = fidelity(cont.v, edge.s_plus);
  out.f_minus = fidelity(cont.u, edge.s_minus);
  out.energy_error = std::abs(edge.e_plus - (kPi / params.dt() - continuum_energy(p, params)));
  return out;
}

std::size_t count_momentum_solutions(double energy, const WalkParams& params,
                                     std::size_t grid_points) {
  if (grid_points < 4) throw std::invalid_argument("count_momentum_solutions: grid too small");
  const double dx = params.dx();
  std::vector<double> diff(grid_points);
  parallel_for(grid_points, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const double p =
          (-kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_points)) / dx;
      diff[j] = dispersion(p, params).e_plus - energy;
    }
  });
  std::size_t crossings = 0;
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double a = diff[j];
    const double b = diff[(j + 1) % grid_points];
    if ((a < 0.0) != (b < 0.0)) ++crossings;
  }
  return crossings;
}

double continuum_deviation(const WalkParams& params, double p_max, std::size_t grid_points) {
  if (!(p_max >= 0.0) || p_max * params.dx() > 1.0) {
    throw std::invalid_argument("continuum_deviation: requires 0 <= p_max dx <= 1");
  }
  if (grid_points < 2) throw std::invalid_argument("continuum_deviation: grid too small");
  double worst = 0.0;
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double p =
        -p_max + 2.0 * p_max * static_cast<double>(j) / static_cast<double>(grid_points - 1);
    const BlochResult r = dispersion(p, params);
    worst = std::max(worst, std::abs(r.e_plus - continuum_energy(p, params)));
  }
  return worst;
}

}  // namespace diracsea
