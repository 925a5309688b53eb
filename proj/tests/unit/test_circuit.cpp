#include <doctest.h>

#include "generators.hpp"

#include <diracsea/circuit.hpp>
#include <diracsea/fock.hpp>

#include <Eigen/Sparse>

#include <bit>
#include <cmath>
#include <vector>

using namespace diracsea;

namespace {

WalkParams dirac(double mdt) { return WalkParams::from_mass_phase(Model::dirac, mdt); }
WalkParams modified(double mdt, double theta) {
  return WalkParams::from_mass_phase(Model::modified, mdt, theta);
}

using Sparse = Eigen::SparseMatrix<cplx>;

Sparse sparse(const Eigen::MatrixXcd& m) { return m.sparseView(); }

double sparse_max(const Sparse& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Sparse::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

// Rows/columns with exactly one particle, ordered by position index 2n + a (a = 0 for r).
std::vector<Eigen::Index> one_particle_indices(std::size_t sites) {
  std::vector<Eigen::Index> idx;
  for (std::size_t n = 0; n < sites; ++n) {
    idx.push_back(Eigen::Index{1} << qubit_index(n, Chirality::r));
    idx.push_back(Eigen::Index{1} << qubit_index(n, Chirality::l));
  }
  return idx;
}

std::vector<Eigen::Index> parity_indices(std::size_t sites, int parity) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index b = 0; b < (Eigen::Index{1} << (2 * sites)); ++b) {
    if ((std::popcount(static_cast<std::uint64_t>(b)) & 1) == parity) idx.push_back(b);
  }
  return idx;
}

}  // namespace

TEST_CASE("gate matrices") {
  const Mat4 s = gate_matrix(GateKind::S);
  CHECK(s(2, 1) == cplx(1.0));  // |01> -> |10>
  CHECK(s(1, 2) == cplx(1.0));
  CHECK(s(3, 3) == cplx(-1.0));
  CHECK(s(0, 0) == cplx(1.0));

  const Mat4 w = gate_matrix(GateKind::Wprime, 0.2);
  CHECK(std::abs(w(1, 1) - std::cos(0.2)) < 1e-15);
  CHECK(std::abs(w(2, 1) - cplx(0, -std::sin(0.2))) < 1e-15);
  CHECK(w(3, 3) == cplx(-1.0));

  CHECK(max_abs_diff(gate_matrix(GateKind::Rtheta, 0.0, 0.0), Mat4::Identity()) == 0.0);
  CHECK(max_abs_diff(gate_matrix(GateKind::Wdoubleprime, 0.3, 0.0), gate_matrix(GateKind::Wprime, 0.3)) == 0.0);

  Mat4 massless = Mat4::Identity();
  massless(3, 3) = -1.0;
  CHECK(max_abs_diff(gate_matrix(GateKind::Wprime, 0.0), massless) == 0.0);

  const Mat4 r = gate_matrix(GateKind::Rtheta, 0.0, 0.6);
  CHECK(std::abs(r(1, 1) - std::cos(0.3)) < 1e-15);
  CHECK(std::abs(r(1, 2) - cplx(0, -std::sin(0.3))) < 1e-15);
  CHECK(max_abs_diff(gate_matrix(GateKind::Wdoubleprime, 0.3, 0.6),
                     gate_matrix(GateKind::Wprime, 0.3) * r.adjoint()) < 1e-15);

  gen::Source src(51);
  for (int i = 0; i < 100; ++i) {
    for (GateKind k : {GateKind::S, GateKind::Wprime, GateKind::Rtheta, GateKind::Wdoubleprime}) {
      CHECK(unitarity_defect(gate_matrix(k, src.uniform(-4, 4), src.uniform(-4, 4))) < 1e-14);
    }
  }
  CHECK(to_string(GateKind::Wdoubleprime) == "Wdoubleprime");
}

TEST_CASE("qubit layout") {
  CHECK(qubit_index(0, Chirality::l) == 0);
  CHECK(qubit_index(0, Chirality::r) == 1);
  CHECK(qubit_index(3, Chirality::l) == 6);
  CHECK(qubit_index(3, Chirality::r) == 7);
}

TEST_CASE("RegisterState construction and gate application") {
  RegisterState v = RegisterState::vacuum(2);
  CHECK(v.dimension() == 16);
  CHECK(v.amplitude(0) == cplx(1.0));
  CHECK_THROWS_AS(RegisterState::vacuum(8), UnsupportedSizeError);
  CHECK_THROWS_AS(RegisterState::basis(1, 4), std::out_of_range);
  CHECK_THROWS_AS(RegisterState::from_vector(1, Eigen::VectorXcd::Ones(4)), std::invalid_argument);
  CHECK_THROWS_AS(RegisterState::from_vector(1, Eigen::VectorXcd::Ones(3)), std::invalid_argument);

  // single S on |...01...>: q1 empty, q2 occupied
  RegisterState s = RegisterState::basis(2, 0b0100);
  s.apply({GateKind::S, 1, 2, gate_matrix(GateKind::S)});
  CHECK(s.amplitude(0b0010) == cplx(1.0));
  s.apply({GateKind::S, 1, 2, gate_matrix(GateKind::S)});
  CHECK(s.amplitude(0b0100) == cplx(1.0));

  RegisterState both = RegisterState::basis(2, 0b0110);
  both.apply({GateKind::S, 1, 2, gate_matrix(GateKind::S)});
  CHECK(both.amplitude(0b0110) == cplx(-1.0));

  CHECK_THROWS_AS(s.apply({GateKind::S, 1, 4, gate_matrix(GateKind::S)}), std::out_of_range);
  CHECK_THROWS_AS(s.apply({GateKind::S, 2, 2, gate_matrix(GateKind::S)}), std::out_of_range);

  RegisterState c = RegisterState::basis(2, 0b0001);
  c.swap_chiralities();
  CHECK(c.amplitude(0b0010) == cplx(1.0));

  QubitCircuit empty{2, {}, false};
  gen::Source src(52);
  Eigen::VectorXcd vec(16);
  for (auto& a : vec) a = {src.normal(), src.normal()};
  const RegisterState r = RegisterState::from_vector(2, vec / vec.norm());
  CHECK((apply_circuit(r, empty).vector() - r.vector()).norm() == 0.0);
  CHECK_THROWS_AS(apply_circuit(RegisterState::vacuum(3), empty), std::invalid_argument);
}

TEST_CASE("random circuits preserve the norm") {
  gen::Source src(53);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = static_cast<std::size_t>(src.integer(1, 7));
    Eigen::VectorXcd vec(Eigen::Index{1} << (2 * n));
    for (auto& a : vec) a = {src.normal(), src.normal()};
    RegisterState state = RegisterState::from_vector(n, vec / vec.norm());
    for (int g = 0; g < 100; ++g) {
      std::size_t q1 = static_cast<std::size_t>(src.integer(0, static_cast<long>(2 * n) - 1));
      std::size_t q2 = q1;
      while (q2 == q1) q2 = static_cast<std::size_t>(src.integer(0, static_cast<long>(2 * n) - 1));
      state.apply({GateKind::Wdoubleprime, q1, q2, src.unitary<4>()});
    }
    CHECK(std::abs(state.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("Jordan-Wigner operators") {
  const Eigen::MatrixXcd c = jw_creation(0, Chirality::r, 2);
  const Eigen::VectorXcd out = c * RegisterState::vacuum(2).vector();
  CHECK(out[0b0010] == cplx(1.0));
  CHECK(out.norm() == 1.0);

  // string over lower qubits: (1, l) picks up a sign when (0, r) is occupied
  const Eigen::MatrixXcd c1 = jw_creation(1, Chirality::l, 2);
  CHECK(c1(0b0110, 0b0010) == cplx(-1.0));
  CHECK(c1(0b0101, 0b0001) == cplx(-1.0));
  CHECK(c1(0b0100, 0b0000) == cplx(1.0));

  CHECK_THROWS_AS(jw_creation(2, Chirality::r, 2), std::out_of_range);
  CHECK_THROWS_AS(jw_creation(0, Chirality::r, 6), UnsupportedSizeError);
}

TEST_CASE("canonical anticommutation relations hold up to four sites") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Sparse> ops;
    for (std::size_t s = 0; s < n; ++s) {
      ops.push_back(sparse(jw_creation(s, Chirality::l, n)));
      ops.push_back(sparse(jw_creation(s, Chirality::r, n)));
    }
    const auto dim = ops.front().rows();
    Sparse id(dim, dim);
    id.setIdentity();
    double worst = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = 0; j < ops.size(); ++j) {
        const Sparse ai = Sparse(ops[i].adjoint());
        const Sparse cc = Sparse(ops[i] * ops[j]) + Sparse(ops[j] * ops[i]);
        Sparse ac = Sparse(ai * ops[j]) + Sparse(ops[j] * ai);
        if (i == j) ac -= id;
        worst = std::max({worst, sparse_max(cc), sparse_max(ac)});
      }
    }
    CHECK(worst <= 1e-13);
  }
}

TEST_CASE("reference shift conjugates creation operators to their neighbours") {
  for (std::size_t n : {2u, 3u}) {
    for (int sign : {1, -1}) {
      const Eigen::MatrixXcd t = qca_reference_unitary(n, dirac(0.0), sign);
      CHECK(unitarity_defect(t) < 1e-12);
      for (std::size_t site = 0; site < n; ++site) {
        const double wrap_r = site == n - 1 ? sign : 1.0;
        const double wrap_l = site == 0 ? sign : 1.0;
        const Eigen::MatrixXcd r = t * jw_creation(site, Chirality::r, n) * t.adjoint();
        const Eigen::MatrixXcd l = t * jw_creation(site, Chirality::l, n) * t.adjoint();
        CHECK(max_abs_diff(r, wrap_r * jw_creation((site + 1) % n, Chirality::r, n)) < 1e-12);
        CHECK(max_abs_diff(l, wrap_l * jw_creation((site + n - 1) % n, Chirality::l, n)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(qca_reference_unitary(2, dirac(0.0), 0), std::invalid_argument);
  CHECK_THROWS_AS(qca_reference_unitary(6, dirac(0.0), 1), UnsupportedSizeError);
}

TEST_CASE("reference mass step mixes the chiralities with cos and i sin") {
  const double m = 0.37;
  const std::size_t n = 2;
  // T at m = 0 is the shift; U / T isolates the mass coin.
  const Eigen::MatrixXcd t = qca_reference_unitary(n, dirac(0.0), 1);
  const Eigen::MatrixXcd w = qca_reference_unitary(n, dirac(m), 1) * t.adjoint();
  for (std::size_t site = 0; site < n; ++site) {
    const Eigen::MatrixXcd pr = jw_creation(site, Chirality::r, n).adjoint();
    const Eigen::MatrixXcd pl = jw_creation(site, Chirality::l, n).adjoint();
    CHECK(max_abs_diff(w * pr * w.adjoint(), std::cos(m) * pr + kI * std::sin(m) * pl) < 1e-12);
    CHECK(max_abs_diff(w * pl * w.adjoint(), std::cos(m) * pl + kI * std::sin(m) * pr) < 1e-12);
  }
}

TEST_CASE("reference single-particle block is the walk") {
  gen::Source src(54);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (Model model : {Model::dirac, Model::modified}) {
      if (model == Model::modified && n < 4) continue;
      const WalkParams p = WalkParams::from_mass_phase(model, src.uniform(0.0, 1.5),
                                                       model == Model::modified ? src.uniform(0.0, 1.5) : 0.0);
      const auto idx = one_particle_indices(n);
      const Eigen::MatrixXcd u = qca_reference_unitary(n, p, 1);
      const Eigen::MatrixXcd block = u(idx, idx);
      CHECK(max_abs_diff(block, single_particle_qca(n, p)) < 1e-12);
    }
  }
}

TEST_CASE("build_circuit layouts") {
  const QubitCircuit d2 = build_circuit(2, dirac(0.2));
  REQUIRE(d2.gates.size() == 4);
  CHECK(d2.gates[0].kind == GateKind::S);
  CHECK(d2.gates[1].kind == GateKind::S);
  CHECK(d2.gates[2].kind == GateKind::Wprime);
  CHECK(d2.gates[3].kind == GateKind::Wprime);
  // S pairs (n, r) with (n + 1, l)
  CHECK(d2.gates[0].q1 == qubit_index(0, Chirality::r));
  CHECK(d2.gates[0].q2 == qubit_index(1, Chirality::l));
  CHECK(d2.gates[1].q1 == qubit_index(1, Chirality::r));
  CHECK(d2.gates[1].q2 == qubit_index(0, Chirality::l));
  CHECK(d2.gates[2].q1 == qubit_index(0, Chirality::l));
  CHECK(d2.gates[2].q2 == qubit_index(0, Chirality::r));

  const QubitCircuit m4 = build_circuit(4, modified(0.2, 3 * kPi / 8));
  CHECK(m4.gates.size() == 6 * 4);
  CHECK(m4.gates.back().kind == GateKind::Wdoubleprime);

  CHECK_THROWS_AS(build_circuit(3, dirac(0.2)), UnsupportedSizeError);
  CHECK_THROWS_AS(build_circuit(0, dirac(0.2)), UnsupportedSizeError);
  CHECK_THROWS_AS(build_circuit(8, dirac(0.2)), UnsupportedSizeError);
}

TEST_CASE("circuit conserves particle number and leaves the vacuum alone") {
  gen::Source src(55);
  for (std::size_t n : {2u, 4u}) {
    for (Model model : {Model::dirac, Model::modified}) {
      const WalkParams p = WalkParams::from_mass_phase(model, src.uniform(0.0, 1.5),
                                                       model == Model::modified ? src.uniform(0.0, 1.5) : 0.0);
      const QubitCircuit c = build_circuit(n, p);
      const Eigen::MatrixXcd u = circuit_unitary(c);
      CHECK(unitarity_defect(u) < 1e-12);
      const Eigen::VectorXd occ = occupation_numbers(n);
      double leak = 0.0;
      for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
          if (occ[i] != occ[j]) leak = std::max(leak, std::abs(u(i, j)));
        }
      }
      CHECK(leak < 1e-12);
      const RegisterState out = apply_circuit(RegisterState::vacuum(n), c);
      CHECK(std::abs(std::abs(out.amplitude(0)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("circuit single-excitation sector reproduces the Bloch matrices") {
  for (std::size_t n : {2u, 4u, 6u}) {
    for (Model model : {Model::dirac, Model::modified}) {
      const WalkParams p = WalkParams::from_mass_phase(model, 0.2, model == Model::modified ? 3 * kPi / 8 : 0.0);
      const QubitCircuit c = build_circuit(n, p);
      const auto idx = one_particle_indices(n);
      Eigen::MatrixXcd block(2 * n, 2 * n);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const RegisterState out =
            apply_circuit(RegisterState::basis(n, static_cast<std::uint64_t>(idx[j])), c);
        for (std::size_t i = 0; i < idx.size(); ++i) {
          block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              out.amplitude(static_cast<std::uint64_t>(idx[i]));
        }
      }
      const Eigen::MatrixXcd m = single_particle_qca(n, p);
      const SectorDeviation d = compare_up_to_phase(block, m);
      CHECK(d.deviation < 1e-10);
      const Eigen::MatrixXcd aligned = block / d.phase;
      const int k_min = min_momentum_index(n);
      for (int k = k_min; k < k_min + static_cast<int>(n); ++k) {
        CHECK(max_abs_diff(momentum_block(aligned, n, k), bloch_matrix(lattice_momentum(k, n, p.dx()), p)) < 1e-10);
      }
    }
  }
}

TEST_CASE("modified circuit at theta = 0 is the Dirac circuit after an extra shift") {
  const std::size_t n = 2;
  const Eigen::MatrixXcd mod = circuit_unitary(build_circuit(n, modified(0.3, 0.0)));
  const Eigen::MatrixXcd composed = circuit_unitary(build_circuit(n, dirac(0.3))) *
                                    circuit_unitary(build_circuit(n, dirac(0.0)));
  for (int parity : {0, 1}) {
    const auto idx = parity_indices(n, parity);
    CHECK(compare_up_to_phase(mod(idx, idx), composed(idx, idx)).deviation < 1e-12);
  }
}

TEST_CASE("compare_up_to_phase") {
  gen::Source src(56);
  const Mat4 u = src.unitary<4>();
  const SectorDeviation d = compare_up_to_phase(std::polar(1.0, 0.7) * u, u);
  CHECK(d.deviation < 1e-14);
  CHECK(std::arg(d.phase) == doctest::Approx(0.7));
  CHECK(compare_up_to_phase(u, -u).deviation < 1e-14);
  CHECK_THROWS_AS(compare_up_to_phase(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("circuit equals the fermionic reference in each parity sector") {
  SUBCASE("two sites, massless") {
    const EquivalenceReport r = equivalence_report(2, dirac(0.0));
    CHECK(r.max_deviation() <= 1e-12);
    CHECK(r.leakage <= 1e-12);
  }
  SUBCASE("two sites, modified") {
    CHECK(equivalence_report(2, modified(0.2, 3 * kPi / 8)).max_deviation() <= 1e-12);
  }
  SUBCASE("four sites, massive Dirac") {
    const EquivalenceReport r = equivalence_report(4, dirac(0.2));
    CHECK(r.max_deviation() <= 1e-10);
    CHECK(r.sectors[0].boundary_sign == -1);
    CHECK(r.sectors[1].boundary_sign == 1);
  }
  SUBCASE("four sites, modified") {
    CHECK(equivalence_report(4, modified(0.2, 3 * kPi / 8)).max_deviation() <= 1e-10);
  }
  SUBCASE("the other boundary sign does not match") {
    const Eigen::MatrixXcd u = circuit_unitary(build_circuit(2, dirac(0.2)));
    const Eigen::MatrixXcd wrong = qca_reference_unitary(2, dirac(0.2), -1);
    const auto idx = parity_indices(2, 1);
    CHECK(compare_up_to_phase(u(idx, idx), wrong(idx, idx)).deviation > 0.1);
  }
  CHECK_THROWS_AS(equivalence_report(6, dirac(0.2)), UnsupportedSizeError);
}
