#include "diracsea/circuit.hpp"

#include "diracsea/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace diracsea {

namespace {

constexpr std::size_t kMaxReferenceSites = 5;
constexpr std::size_t kMaxEquivalenceSites = 4;

void require_register(std::size_t sites, std::size_t max_sites, const char* who) {
  if (sites < 1 || sites > max_sites) {
    throw UnsupportedSizeError(std::string(who) + ": N must lie in [1, " +
                               std::to_string(max_sites) + "], got " + std::to_string(sites));
  }
}

Eigen::Index dimension_for(std::size_t sites) { return Eigen::Index{1} << (2 * sites); }

int parity(std::uint64_t bits) { return std::popcount(bits) & 1; }

// exp(-i a h) for h with h^3 = h
Eigen::MatrixXcd exp_quadratic(double a, const Eigen::MatrixXcd& h) {
  const auto dim = h.rows();
  return Eigen::MatrixXcd::Identity(dim, dim) + (std::cos(a) - 1.0) * (h * h) -
         kI * std::sin(a) * h;
}

// prod_n exp(-i a (psi_r^dag psi_l + psi_l^dag psi_r)_n)
Eigen::MatrixXcd onsite_mixing(double a, const std::vector<Eigen::MatrixXcd>& cr,
                               const std::vector<Eigen::MatrixXcd>& cl) {
  const auto dim = cr.front().rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t n = 0; n < cr.size(); ++n) {
    const Eigen::MatrixXcd h = cr[n] * cl[n].adjoint() + cl[n] * cr[n].adjoint();
    out = exp_quadratic(a, h) * out;
  }
  return out;
}

struct ModeImage {
  std::size_t qubit;
  double sign;
};

// T |b> = prod (sign_i psi^dag_{image(i)}) |0>, applied from the highest occupied qubit down.
Eigen::MatrixXcd mode_permutation(const std::vector<Eigen::MatrixXcd>& creation,
                                  const std::vector<ModeImage>& image) {
  const auto dim = creation.front().rows();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  const std::size_t qubits = creation.size();
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[0] = 1.0;
    for (std::size_t q = qubits; q-- > 0;) {
      if ((static_cast<std::uint64_t>(b) >> q) & 1U) {
        v = image[q].sign * (creation[image[q].qubit] * v);
      }
    }
    t.col(b) = v;
  }
  return t;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::S:
      return "S";
    case GateKind::Wprime:
      return "Wprime";
    case GateKind::Rtheta:
      return "Rtheta";
    case GateKind::Wdoubleprime:
      return "Wdoubleprime";
  }
  return "?";
}

Mat4 gate_matrix(GateKind kind, double mass_phase, double theta) {
  Mat4 g = Mat4::Zero();
  switch (kind) {
    case GateKind::S:
      g(0, 0) = 1.0;
      g(1, 2) = 1.0;
      g(2, 1) = 1.0;
      g(3, 3) = -1.0;
      return g;
    case GateKind::Wprime: {
      const double c = std::cos(mass_phase);
      const double s = std::sin(mass_phase);
      g(0, 0) = 1.0;
      g(1, 1) = c;
      g(1, 2) = -kI * s;
      g(2, 1) = -kI * s;
      g(2, 2) = c;
      g(3, 3) = -1.0;
      return g;
    }
    case GateKind::Rtheta: {
      const double c = std::cos(theta / 2);
      const double s = std::sin(theta / 2);
      g(0, 0) = 1.0;
      g(1, 1) = c;
      g(1, 2) = -kI * s;
      g(2, 1) = -kI * s;
      g(2, 2) = c;
      g(3, 3) = 1.0;
      return g;
    }
    case GateKind::Wdoubleprime:
      return gate_matrix(GateKind::Wprime, mass_phase) *
             gate_matrix(GateKind::Rtheta, 0.0, theta).adjoint();
  }
  return g;
}

std::size_t qubit_index(std::size_t site, Chirality component) {
  return 2 * site + (component == Chirality::r ? 1 : 0);
}

RegisterState::RegisterState(std::size_t sites, Eigen::VectorXcd vector)
    : sites_(sites), vec_(std::move(vector)) {}

RegisterState RegisterState::vacuum(std::size_t sites) { return basis(sites, 0); }

RegisterState RegisterState::basis(std::size_t sites, std::uint64_t bits) {
  require_register(sites, kMaxSites, "RegisterState");
  const Eigen::Index dim = dimension_for(sites);
  if (bits >= static_cast<std::uint64_t>(dim)) {
    throw std::out_of_range("RegisterState::basis: bit pattern exceeds register");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[static_cast<Eigen::Index>(bits)] = 1.0;
  return {sites, std::move(v)};
}

RegisterState RegisterState::from_vector(std::size_t sites, Eigen::VectorXcd vector) {
  require_register(sites, kMaxSites, "RegisterState");
  if (vector.size() != dimension_for(sites)) {
    throw std::invalid_argument("RegisterState: vector length must be 4^N");
  }
  if (std::abs(vector.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("RegisterState: vector is not normalized");
  }
  return {sites, std::move(vector)};
}

void RegisterState::apply(const GateSpec& gate) {
  if (gate.q1 >= qubits() || gate.q2 >= qubits() || gate.q1 == gate.q2) {
    throw std::out_of_range("RegisterState::apply: invalid qubit pair (" +
                            std::to_string(gate.q1) + ", " + std::to_string(gate.q2) + ")");
  }
  const std::uint64_t m1 = std::uint64_t{1} << gate.q1;
  const std::uint64_t m2 = std::uint64_t{1} << gate.q2;
  const auto dim = static_cast<std::uint64_t>(vec_.size());
  const Mat4& g = gate.matrix;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & (m1 | m2)) continue;
    const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i | m2),
                                 static_cast<Eigen::Index>(i | m1),
                                 static_cast<Eigen::Index>(i | m1 | m2)};
    Eigen::Vector4cd local(vec_[idx[0]], vec_[idx[1]], vec_[idx[2]], vec_[idx[3]]);
    local = g * local;
    for (int j = 0; j < 4; ++j) vec_[idx[j]] = local[j];
  }
}

void RegisterState::swap_chiralities() {
  Eigen::VectorXcd out(vec_.size());
  for (Eigen::Index b = 0; b < vec_.size(); ++b) {
    const auto bits = static_cast<std::uint64_t>(b);
    const std::uint64_t even = bits & 0x5555555555555555ULL;
    const std::uint64_t odd = bits & 0xAAAAAAAAAAAAAAAAULL;
    out[static_cast<Eigen::Index>((even << 1) | (odd >> 1))] = vec_[b];
  }
  vec_ = std::move(out);
}

QubitCircuit build_circuit(std::size_t sites, const WalkParams& params) {
  if (sites < 2 || sites % 2 != 0 || sites > RegisterState::kMaxSites) {
    throw UnsupportedSizeError("build_circuit: N must be even with 2 <= N <= " +
                               std::to_string(RegisterState::kMaxSites) + ", got " +
                               std::to_string(sites));
  }
  const double m = params.mass_phase();
  const double theta = params.theta();
  QubitCircuit c;
  c.sites = sites;

  auto l = [](std::size_t n) { return qubit_index(n, Chirality::l); };
  auto r = [](std::size_t n) { return qubit_index(n, Chirality::r); };
  auto shift_layer = [&] {
    for (std::size_t n = 0; n < sites; ++n) {
      c.gates.push_back({GateKind::S, r(n), l((n + 1) % sites), gate_matrix(GateKind::S)});
    }
  };
  auto onsite_layer = [&](GateKind kind, bool r_first, const Mat4& g) {
    for (std::size_t n = 0; n < sites; ++n) {
      c.gates.push_back(r_first ? GateSpec{kind, r(n), l(n), g} : GateSpec{kind, l(n), r(n), g});
    }
  };

  if (params.model() == Model::dirac) {
    shift_layer();
    onsite_layer(GateKind::Wprime, false, gate_matrix(GateKind::Wprime, m));
    return c;
  }
  onsite_layer(GateKind::Rtheta, true, gate_matrix(GateKind::Rtheta, 0.0, -theta));
  shift_layer();
  onsite_layer(GateKind::S, false, gate_matrix(GateKind::S));
  onsite_layer(GateKind::Rtheta, true, gate_matrix(GateKind::Rtheta, 0.0, 2.0 * theta));
  shift_layer();
  onsite_layer(GateKind::Wdoubleprime, false, gate_matrix(GateKind::Wdoubleprime, m, theta));
  return c;
}

RegisterState apply_circuit(RegisterState state, const QubitCircuit& circuit) {
  if (state.sites() != circuit.sites) {
    throw std::invalid_argument("apply_circuit: register and circuit sizes differ");
  }
  for (const auto& g : circuit.gates) state.apply(g);
  if (circuit.swap_output_chiralities) state.swap_chiralities();
  return state;
}

Eigen::MatrixXcd circuit_unitary(const QubitCircuit& circuit) {
  require_register(circuit.sites, RegisterState::kMaxSites, "circuit_unitary");
  const Eigen::Index dim = dimension_for(circuit.sites);
  Eigen::MatrixXcd u(dim, dim);
  parallel_for(static_cast<std::size_t>(dim), [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const RegisterState out = apply_circuit(RegisterState::basis(circuit.sites, b), circuit);
      u.col(static_cast<Eigen::Index>(b)) = out.vector();
    }
  });
  return u;
}

Eigen::MatrixXcd jw_creation(std::size_t site, Chirality component, std::size_t sites) {
  require_register(sites, kMaxReferenceSites, "jw_creation");
  if (site >= sites) throw std::out_of_range("jw_creation: site out of range");
  const std::size_t q = qubit_index(site, component);
  const Eigen::Index dim = dimension_for(sites);
  const std::uint64_t mask = (std::uint64_t{1} << q) - 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto bits = static_cast<std::uint64_t>(b);
    if ((bits >> q) & 1U) continue;
    const double sign = (std::popcount(bits & mask) & 1) ? -1.0 : 1.0;
    a(static_cast<Eigen::Index>(bits | (std::uint64_t{1} << q)), b) = sign;
  }
  return a;
}

Eigen::MatrixXcd qca_reference_unitary(std::size_t sites, const WalkParams& params,
                                       int boundary_sign) {
  require_register(sites, kMaxReferenceSites, "qca_reference_unitary");
  if (sites < 2) throw UnsupportedSizeError("qca_reference_unitary: N >= 2 required");
  if (boundary_sign != 1 && boundary_sign != -1) {
    throw std::invalid_argument("qca_reference_unitary: boundary_sign must be +1 or -1");
  }
  const std::size_t qubits = 2 * sites;
  std::vector<Eigen::MatrixXcd> creation(qubits);
  std::vector<Eigen::MatrixXcd> cr(sites);
  std::vector<Eigen::MatrixXcd> cl(sites);
  for (std::size_t n = 0; n < sites; ++n) {
    cr[n] = jw_creation(n, Chirality::r, sites);
    cl[n] = jw_creation(n, Chirality::l, sites);
    creation[qubit_index(n, Chirality::r)] = cr[n];
    creation[qubit_index(n, Chirality::l)] = cl[n];
  }

  std::vector<ModeImage> image(qubits);
  const double wrap = static_cast<double>(boundary_sign);
  for (std::size_t n = 0; n < sites; ++n) {
    image[qubit_index(n, Chirality::r)] = {qubit_index((n + 1) % sites, Chirality::r),
                                           n == sites - 1 ? wrap : 1.0};
    image[qubit_index(n, Chirality::l)] = {qubit_index((n + sites - 1) % sites, Chirality::l),
                                           n == 0 ? wrap : 1.0};
  }
  const Eigen::MatrixXcd t = mode_permutation(creation, image);
  const Eigen::MatrixXcd w = onsite_mixing(params.mass_phase(), cr, cl);
  if (params.model() == Model::dirac) return w * t;

  auto rotated = [&](double theta) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd rot = onsite_mixing(theta / 2, cr, cl);
    return rot * t * rot.adjoint();
  };
  const double theta = params.theta();
  return w * rotated(-theta) * rotated(theta);
}

Eigen::VectorXd occupation_numbers(std::size_t sites) {
  require_register(sites, RegisterState::kMaxSites, "occupation_numbers");
  const Eigen::Index dim = dimension_for(sites);
  Eigen::VectorXd n(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    n[b] = static_cast<double>(std::popcount(static_cast<std::uint64_t>(b)));
  }
  return n;
}

double EquivalenceReport::max_deviation() const {
  return std::max(sectors[0].deviation, sectors[1].deviation);
}

SectorDeviation compare_up_to_phase(const Eigen::MatrixXcd& actual,
                                    const Eigen::MatrixXcd& reference) {
  if (actual.rows() != reference.rows() || actual.cols() != reference.cols()) {
    throw std::invalid_argument("compare_up_to_phase: shape mismatch");
  }
  const cplx overlap = (reference.conjugate().cwiseProduct(actual)).sum();
  SectorDeviation out;
  out.phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0};
  out.deviation = (actual - out.phase * reference).cwiseAbs().maxCoeff();
  return out;
}

EquivalenceReport equivalence_report(std::size_t sites, const WalkParams& params) {
  if (sites > kMaxEquivalenceSites) {
    throw UnsupportedSizeError("equivalence_report: N <= " +
                               std::to_string(kMaxEquivalenceSites) + " required");
  }
  const QubitCircuit circuit = build_circuit(sites, params);
  const Eigen::MatrixXcd u = circuit_unitary(circuit);
  const Eigen::Index dim = u.rows();

  EquivalenceReport report;
  report.sites = sites;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (parity(static_cast<std::uint64_t>(i)) != parity(static_cast<std::uint64_t>(j))) {
        report.leakage = std::max(report.leakage, std::abs(u(i, j)));
      }
    }
  }

  for (int p = 0; p < 2; ++p) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (parity(static_cast<std::uint64_t>(b)) == p) idx.push_back(b);
    }
    const int sign = p == 1 ? 1 : -1;
    const Eigen::MatrixXcd ref = qca_reference_unitary(sites, params, sign);
    const Eigen::MatrixXcd a = u(idx, idx);
    const Eigen::MatrixXcd b = ref(idx, idx);
    SectorDeviation s = compare_up_to_phase(a, b);
    s.parity = p;
    s.boundary_sign = sign;
    report.sectors[static_cast<std::size_t>(p)] = s;
  }
  return report;
}

}  // namespace diracsea
