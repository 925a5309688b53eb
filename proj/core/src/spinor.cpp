#include "diracsea/spinor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace diracsea {

namespace {

constexpr double kUnitaryInputTol = 1e-10;
constexpr double kGaugeThreshold = 1e-10;

Mat2 make_mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

template <typename Vec>
void fix_gauge(Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kGaugeThreshold) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      v[i] = cplx(v[i].real(), 0.0);
      return;
    }
  }
}

void require_unitary(const Eigen::Ref<const Eigen::MatrixXcd>& u, const char* who) {
  if (!u.allFinite() || unitarity_defect(u) > kUnitaryInputTol) {
    throw std::domain_error(std::string(who) + ": input matrix is not unitary");
  }
}

}  // namespace

namespace pauli {
const Mat2& identity() {
  static const Mat2 m = Mat2::Identity();
  return m;
}
const Mat2& x() {
  static const Mat2 m = make_mat2(0.0, 1.0, 1.0, 0.0);
  return m;
}
const Mat2& y() {
  static const Mat2 m = make_mat2(0.0, -kI, kI, 0.0);
  return m;
}
const Mat2& z() {
  static const Mat2 m = make_mat2(1.0, 0.0, 0.0, -1.0);
  return m;
}
}  // namespace pauli

Axis::Axis(double nx, double ny, double nz) : n_{nx, ny, nz} {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
    throw std::domain_error("Axis: vector is not unit length");
  }
}

Axis Axis::normalized(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::domain_error("Axis: cannot normalize a zero vector");
  }
  return {nx / norm, ny / norm, nz / norm};
}

Mat2 Axis::dot_sigma() const {
  return n_[0] * pauli::x() + n_[1] * pauli::y() + n_[2] * pauli::z();
}

Mat2 su2_exp(const Axis& axis, double angle) {
  return std::cos(angle) * pauli::identity() + kI * std::sin(angle) * axis.dot_sigma();
}

Mat2 spin_rotation(const Axis& axis, double angle) { return su2_exp(axis, -0.5 * angle); }

Mat2 rotated_sigma(double theta) {
  return std::cos(theta) * pauli::z() - std::sin(theta) * pauli::y();
}

Axis rotated_sigma_axis(double theta) {
  return Axis::normalized(0.0, -std::sin(theta), std::cos(theta));
}

std::array<EigenPair<2>, 2> eig_unitary(const Mat2& u) {
  require_unitary(u, "eig_unitary");

  // u = e^{i gamma} (r I + i a.sigma) with r^2 + |a|^2 = 1.
  const cplx det = u.determinant();
  const double gamma = 0.5 * std::arg(det);
  const Mat2 v = std::exp(-kI * gamma) * u;
  const double r = 0.5 * (v(0, 0) + v(1, 1)).real();
  const double ax = 0.5 * (v(0, 1) + v(1, 0)).imag();
  const double ay = 0.5 * (v(0, 1) - v(1, 0)).real();
  const double az = 0.5 * (v(0, 0) - v(1, 1)).imag();
  const double amag = std::sqrt(ax * ax + ay * ay + az * az);
  const double phi = std::atan2(amag, r);

  Spinor2 up;
  Spinor2 down;
  if (amag == 0.0) {
    up << 1.0, 0.0;
    down << 0.0, 1.0;
  } else {
    const double nx = ax / amag;
    const double ny = ay / amag;
    const double nz = az / amag;
    // +1 eigenvector of n.sigma, built from whichever column is better conditioned.
    if (nz >= 0.0) {
      up << 1.0 + nz, cplx(nx, ny);
    } else {
      up << cplx(nx, -ny), 1.0 - nz;
    }
    up.normalize();
    down << -std::conj(up[1]), std::conj(up[0]);
  }

  std::array<EigenPair<2>, 2> out{EigenPair<2>{fold_phase(gamma + phi), up},
                                  EigenPair<2>{fold_phase(gamma - phi), down}};
  for (auto& e : out) fix_gauge(e.vector);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.phase < b.phase; });
  return out;
}

std::array<EigenPair<4>, 4> eig_unitary(const Mat4& u) {
  require_unitary(u, "eig_unitary");

  Eigen::ComplexSchur<Mat4> schur(u);
  const Mat4& t = schur.matrixT();
  const Mat4& q = schur.matrixU();

  std::array<EigenPair<4>, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)].phase = fold_phase(std::arg(t(i, i)));
    out[static_cast<std::size_t>(i)].vector = q.col(i);
    fix_gauge(out[static_cast<std::size_t>(i)].vector);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.phase < b.phase; });
  return out;
}

double fold_phase(double phase) {
  double y = std::remainder(phase, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

double principal_energy(double phase, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("principal_energy: dt must be positive");
  return fold_phase(-phase) / dt;
}

double modular_distance(double e1, double e2, double dt) {
  return std::abs(fold_phase((e1 - e2) * dt)) / dt;
}

double unitarity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const Eigen::MatrixXcd d =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                    const Eigen::Ref<const Eigen::MatrixXcd>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double fidelity(const Eigen::Ref<const Eigen::VectorXcd>& a,
                const Eigen::Ref<const Eigen::VectorXcd>& b) {
  return std::norm(a.dot(b));
}

}  // namespace diracsea
