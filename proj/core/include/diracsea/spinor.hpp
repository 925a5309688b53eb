#pragma once

// Small dense complex algebra for two- and four-component spinors: Pauli
// matrices, closed-form SU(2) exponentials, unitary eigendecomposition and
// the quasi-energy branch map shared by every walk model.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <numbers>

namespace diracsea {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Spinor2 = Eigen::Vector2cd;
using Spinor4 = Eigen::Vector4cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Component order is (r, l): sigma_z = |r><r| - |l><l|.
namespace pauli {
const Mat2& identity();
const Mat2& x();
const Mat2& y();
const Mat2& z();
}  // namespace pauli

/// Unit 3-vector used as a rotation / exponentiation axis.
class Axis {
 public:
  /// Throws std::domain_error unless the vector has unit length within 1e-12.
  Axis(double nx, double ny, double nz);

  static Axis x() { return {1.0, 0.0, 0.0}; }
  static Axis y() { return {0.0, 1.0, 0.0}; }
  static Axis z() { return {0.0, 0.0, 1.0}; }
  /// Normalizes an arbitrary non-zero vector.
  static Axis normalized(double nx, double ny, double nz);

  double nx() const { return n_[0]; }
  double ny() const { return n_[1]; }
  double nz() const { return n_[2]; }

  /// n . sigma
  Mat2 dot_sigma() const;

 private:
  std::array<double, 3> n_;
};

/// exp(i angle n.sigma) = I cos(angle) + i (n.sigma) sin(angle).
Mat2 su2_exp(const Axis& axis, double angle);

/// Spin rotation R_{angle, n} = exp(-i n.sigma angle / 2).
Mat2 spin_rotation(const Axis& axis, double angle);

/// sigma_theta = R_{theta,x} sigma_z R_{theta,x}^dagger = cos(theta) sigma_z - sin(theta) sigma_y.
Mat2 rotated_sigma(double theta);

/// Unit axis of rotated_sigma(theta), i.e. (0, -sin theta, cos theta).
Axis rotated_sigma_axis(double theta);

template <int Dim>
struct EigenPair {
  double phase;  // eigenvalue is exp(i phase), phase in (-pi, pi]
  Eigen::Matrix<cplx, Dim, 1> vector;
};

/// Eigenpairs of a 2x2 unitary using the closed-form e^{i gamma}(r I + i a.sigma)
/// split. Sorted by ascending phase. Vectors are orthonormal with the first
/// non-negligible component real and positive. Degenerate input returns the
/// canonical basis. Throws std::domain_error for non-unitary input.
std::array<EigenPair<2>, 2> eig_unitary(const Mat2& u);

/// Eigenpairs of a 4x4 unitary via complex Schur decomposition; for a normal
/// matrix the Schur vectors are an orthonormal eigenbasis even inside
/// degenerate eigenspaces. Same ordering and gauge rules as the 2x2 overload.
std::array<EigenPair<4>, 4> eig_unitary(const Mat4& u);

/// Folds an angle into (-pi, pi].
double fold_phase(double phase);

/// Energy E for an eigenvalue exp(-i E dt) = exp(i phase), folded into
/// (-pi/dt, pi/dt]. Requires dt > 0.
double principal_energy(double phase, double dt);

/// Distance between two quasi-energies on the circle of circumference 2 pi / dt.
double modular_distance(double e1, double e2, double dt);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& u);

/// max_ij |(A - A^dagger)_ij|
double hermiticity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& a);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                    const Eigen::Ref<const Eigen::MatrixXcd>& b);

/// |<a|b>|^2 for unit vectors.
double fidelity(const Eigen::Ref<const Eigen::VectorXcd>& a,
                const Eigen::Ref<const Eigen::VectorXcd>& b);

}  // namespace diracsea
