#include "diracsea/walk3d.hpp"

#include "diracsea/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace diracsea {

namespace {

const Axis& axis_of(std::size_t j) {
  static const Axis axes[3] = {Axis::x(), Axis::y(), Axis::z()};
  return axes[j];
}

// rotation axis paired with each shift direction: x <- y, y <- z, z <- x
const Axis& rotation_axis_for(std::size_t j) {
  static const Axis axes[3] = {Axis::y(), Axis::z(), Axis::x()};
  return axes[j];
}

Mat4 block_shift(const Mat2& k) {
  Mat4 t = Mat4::Zero();
  t.topLeftCorner<2, 2>() = k;
  t.bottomRightCorner<2, 2>() = k.adjoint();
  return t;
}

Mat4 mass_coin(double m) {
  return std::cos(m) * Mat4::Identity() - kI * std::sin(m) * beta_matrix();
}

// exp(-i k sigma_j), rotated by spin_rotation(axis, theta)
Mat2 rotated_k(std::size_t j, double k, double theta) {
  const Mat2 r = spin_rotation(rotation_axis_for(j), theta);
  return r * su2_exp(axis_of(j), -k) * r.adjoint();
}

enum class Near { zero, half, pi, none };

struct NearPoint {
  Near kind;
  double special;  // dimensionless
};

NearPoint nearest_special(double k) {
  static constexpr double kTol = 0.1;
  const double candidates[] = {0.0, kPi / 2, -kPi / 2, kPi, -kPi};
  const Near kinds[] = {Near::zero, Near::half, Near::half, Near::pi, Near::pi};
  for (int i = 0; i < 5; ++i) {
    if (std::abs(k - candidates[i]) < kTol) return {kinds[i], candidates[i]};
  }
  return {Near::none, 0.0};
}

}  // namespace

double Momentum3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Momentum3 Momentum3::wrapped(double dx) const {
  return {wrap_momentum(x, dx), wrap_momentum(y, dx), wrap_momentum(z, dx)};
}

Mat4 alpha_matrix(std::size_t axis) {
  if (axis > 2) throw std::out_of_range("alpha_matrix: axis must be 0, 1 or 2");
  const Mat2 s = axis_of(axis).dot_sigma();
  Mat4 a = Mat4::Zero();
  a.topLeftCorner<2, 2>() = s;
  a.bottomRightCorner<2, 2>() = -s;
  return a;
}

Mat4 beta_matrix() {
  Mat4 b = Mat4::Zero();
  b.topRightCorner<2, 2>() = Mat2::Identity();
  b.bottomLeftCorner<2, 2>() = Mat2::Identity();
  return b;
}

Mat4 u_3d(const Momentum3& p, const WalkParams& params) {
  const double dx = params.dx();
  Mat4 u = mass_coin(params.mass_phase());
  for (std::size_t j : {2u, 1u, 0u}) u = u * block_shift(su2_exp(axis_of(j), -p[j] * dx));
  return u;
}

Mat4 u_3d_mod(const Momentum3& p, const WalkParams& params) {
  const double dx = params.dx();
  const double theta = params.theta();
  Mat4 u = mass_coin(params.mass_phase());
  for (std::size_t j : {2u, 1u, 0u}) {
    const double k = p[j] * dx;
    u = u * block_shift(rotated_k(j, k, -theta)) * block_shift(rotated_k(j, k, theta));
  }
  return u;
}

Mat4 bloch_matrix3(const Momentum3& p, const WalkParams& params) {
  return params.model() == Model::dirac ? u_3d(p, params) : u_3d_mod(p, params);
}

Bloch3Result dispersion3(const Momentum3& p, const WalkParams& params) {
  const auto pairs = eig_unitary(bloch_matrix3(p, params));
  const double dt = params.dt();
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::array<double, 4> e{};
  for (std::size_t i = 0; i < 4; ++i) e[i] = principal_energy(pairs[i].phase, dt);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });

  Bloch3Result out;
  out.p = p;
  for (std::size_t i = 0; i < 4; ++i) {
    out.energies[i] = e[order[i]];
    out.vectors[i] = pairs[order[i]].vector;
  }
  for (std::size_t i = 0; i < 4 && !out.degenerate; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (modular_distance(out.energies[i], out.energies[j], dt) * dt < 1e-9) {
        out.degenerate = true;
        break;
      }
    }
  }
  return out;
}

std::array<double, 4> energies3(const Momentum3& p, const WalkParams& params) {
  const Eigen::ComplexSchur<Mat4> schur(bloch_matrix3(p, params), false);
  const double dt = params.dt();
  std::array<double, 4> e{};
  for (Eigen::Index i = 0; i < 4; ++i) {
    e[static_cast<std::size_t>(i)] = principal_energy(std::arg(schur.matrixT()(i, i)), dt);
  }
  std::sort(e.begin(), e.end());
  return e;
}

std::string_view to_string(PointTag tag) {
  switch (tag) {
    case PointTag::dirac_like:
      return "dirac-like";
    case PointTag::dirac_like_with_phase:
      return "dirac-like-with-phase";
    case PointTag::weyl_pair:
      return "weyl-pair";
    case PointTag::generic:
      return "generic";
  }
  return "generic";
}

PointClass classify_point(const Momentum3& p, const WalkParams& params) {
  if (params.model() != Model::dirac) {
    throw std::invalid_argument("classify_point: requires Dirac-walk parameters");
  }
  const double dx = params.dx();
  const Momentum3 w = p.wrapped(dx);
  std::array<NearPoint, 3> near{};
  int n_pi = 0;
  int n_half = 0;
  int n_none = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    near[j] = nearest_special(w[j] * dx);
    n_pi += near[j].kind == Near::pi;
    n_half += near[j].kind == Near::half;
    n_none += near[j].kind == Near::none;
  }

  PointClass out;
  out.offset = {w.x - near[0].special / dx, w.y - near[1].special / dx,
                w.z - near[2].special / dx};
  if (n_none > 0) return out;
  if (n_half > 0) {
    if (n_half == 3 && params.mass_phase() == 0.0) {
      out.tag = PointTag::weyl_pair;
    } else {
      out.caveat = params.mass_phase() > 0.0;
    }
    return out;
  }
  // Every component sits near 0 or +-pi/dx: compare with the shifted-back momentum.
  Momentum3 base = w;
  base.x -= near[0].kind == Near::pi ? near[0].special / dx : 0.0;
  base.y -= near[1].kind == Near::pi ? near[1].special / dx : 0.0;
  base.z -= near[2].kind == Near::pi ? near[2].special / dx : 0.0;
  const double sign = n_pi % 2 == 0 ? 1.0 : -1.0;
  out.tag = n_pi % 2 == 0 ? PointTag::dirac_like : PointTag::dirac_like_with_phase;
  out.identity_residual = max_abs_diff(u_3d(w, params), sign * u_3d(base, params));
  return out;
}

GapScan3 gap_scan3(const WalkParams& params, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("gap_scan3: grid must be at least 2");
  const double dx = params.dx();
  std::vector<double> axis(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    axis[i] = (-kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(grid)) / dx;
  }
  const std::size_t uniform = grid * grid * grid;
  const double special[] = {0.0, kPi / 2, -kPi / 2, kPi, -kPi};
  std::vector<Momentum3> extra;
  for (double a : special) {
    for (double b : special) {
      for (double c : special) extra.push_back({a / dx, b / dx, c / dx});
    }
  }
  const std::size_t total = uniform + extra.size();

  auto momentum_at = [&](std::size_t i) -> Momentum3 {
    if (i >= uniform) return extra[i - uniform];
    return {axis[i / (grid * grid)], axis[(i / grid) % grid], axis[i % grid]};
  };

  std::vector<double> abs_energy(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto e = energies3(momentum_at(i), params);
      abs_energy[i] = std::max(std::abs(e.front()), std::abs(e.back()));
    }
  });
  const auto it = std::max_element(abs_energy.begin(), abs_energy.end());
  GapScan3 out;
  out.max_abs_energy = *it;
  out.argmax = momentum_at(static_cast<std::size_t>(it - abs_energy.begin()));
  out.grid = grid;
  out.points = total;
  out.gapped = out.max_abs_energy * params.dt() < kPi / 2;
  return out;
}

std::vector<Bloch3Result> track_bands(std::vector<Bloch3Result> path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Bloch3Result& prev = path[i - 1];
    Bloch3Result& cur = path[i];
    double overlap[4][4];
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) overlap[a][b] = fidelity(prev.vectors[a], cur.vectors[b]);
    }
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    std::array<std::size_t, 4> best = perm;
    double best_score = -1.0;
    do {
      double score = 0.0;
      for (std::size_t a = 0; a < 4; ++a) score += overlap[a][perm[a]];
      if (score > best_score + 1e-12) {
        best_score = score;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Bloch3Result old = cur;
    for (std::size_t a = 0; a < 4; ++a) {
      cur.energies[a] = old.energies[best[a]];
      cur.vectors[a] = old.vectors[best[a]];
    }
  }
  return path;
}

std::vector<Bloch3Result> dispersion3_slice(const WalkParams& params, std::size_t axis,
                                            const Momentum3& fixed, std::size_t points) {
  if (axis > 2) throw std::invalid_argument("dispersion3_slice: axis must be 0, 1 or 2");
  if (points < 2) throw std::invalid_argument("dispersion3_slice: at least 2 points required");
  const double dx = params.dx();
  std::vector<Bloch3Result> path(points);
  parallel_for(points, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Momentum3 p = fixed;
      const double v = (-kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(points)) / dx;
      (axis == 0 ? p.x : axis == 1 ? p.y : p.z) = v;
      path[i] = dispersion3(p, params);
    }
  });
  return track_bands(std::move(path));
}

}  // namespace diracsea
