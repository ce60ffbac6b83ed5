#pragma once

/**
 * @file ambient.hpp
 * @brief Points and vectors of C^2 = R^4, and the group laws of S^3 and Sigma^3.
 *
 * A pair (z, w) is stored as four reals (x1, x2, x3, x4) with
 * z = x1 + i x2 and w = x3 + i x4. The complex pair is only a view.
 *
 *   S^3     = { |z|^2 + |w|^2 = 1 },  (z1,w1).(z2,w2) = (z1 z2 - conj(w1) w2, conj(z1) w2 + w1 z2)
 *   Sigma^3 = { |z|^2 - |w|^2 = 1 },  (z1,w1).(z2,w2) = (z1 z2 + conj(w1) w2, w1 z2 + conj(z1) w2)
 *
 * Both laws are real-bilinear on all of C^2, so the same formula gives left
 * translation of ambient vectors. The identity is e = (1, 0) and the inverse
 * of a group element is (conj(z), -w) in both cases.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "berger/error.hpp"
#include "berger/params.hpp"

namespace berger {

enum class SpaceKind { S3, Sigma3 };

inline std::string to_string(SpaceKind space) {
  return space == SpaceKind::S3 ? "s3" : "sigma3";
}

/// Four real coordinates of C^2. The tag keeps points and vectors apart.
template <class Tag>
struct Coords4 {
  std::array<double, 4> x{};

  constexpr Coords4() = default;
  constexpr Coords4(double x1, double x2, double x3, double x4) : x{x1, x2, x3, x4} {}

  static Coords4 from_complex(std::complex<double> z, std::complex<double> w) {
    return {z.real(), z.imag(), w.real(), w.imag()};
  }

  std::complex<double> z() const { return {x[0], x[1]}; }
  std::complex<double> w() const { return {x[2], x[3]}; }

  constexpr double operator[](std::size_t i) const { return x[i]; }
  constexpr double& operator[](std::size_t i) { return x[i]; }

  constexpr bool operator==(const Coords4&) const = default;
};

using AmbientPoint = Coords4<struct PointTag>;
using TangentVector = Coords4<struct VectorTag>;

constexpr TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
constexpr TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
constexpr TangentVector operator-(const TangentVector& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
constexpr TangentVector operator*(double s, const TangentVector& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
constexpr TangentVector operator*(const TangentVector& a, double s) { return s * a; }
constexpr TangentVector operator/(const TangentVector& a, double s) { return (1.0 / s) * a; }

/// Displacement between two points.
constexpr TangentVector operator-(const AmbientPoint& a, const AmbientPoint& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

constexpr AmbientPoint kIdentity{1.0, 0.0, 0.0, 0.0};

/// Tolerance for on-manifold preconditions, relative to |z|^2 + |w|^2.
inline constexpr double kManifoldTolerance = 1e-9;

/// The defining quadratic form minus one: |z|^2 +- |w|^2 - 1.
template <class Tag>
double manifold_residual(const Coords4<Tag>& p, SpaceKind space) {
  const double zz = p[0] * p[0] + p[1] * p[1];
  const double ww = p[2] * p[2] + p[3] * p[3];
  return (space == SpaceKind::S3 ? zz + ww : zz - ww) - 1.0;
}

inline bool on_manifold(const AmbientPoint& p, SpaceKind space, double tol = kManifoldTolerance) {
  const double scale = std::max(1.0, p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
  return std::abs(manifold_residual(p, space)) <= tol * scale;
}

inline void require_on_manifold(const AmbientPoint& p, SpaceKind space) {
  if (!on_manifold(p, space)) {
    throw GeometryError(ErrorCode::DomainError,
                        "point is not on " + to_string(space) + " (residual " +
                            show(manifold_residual(p, space)) + ")");
  }
}

namespace detail {

template <class Out, class A, class B>
Out multiply(const A& p, const B& q, SpaceKind space) {
  const auto z1 = p.z(), w1 = p.w(), z2 = q.z(), w2 = q.w();
  if (space == SpaceKind::S3) {
    return Out::from_complex(z1 * z2 - std::conj(w1) * w2, std::conj(z1) * w2 + w1 * z2);
  }
  return Out::from_complex(z1 * z2 + std::conj(w1) * w2, w1 * z2 + std::conj(z1) * w2);
}

}  // namespace detail

inline AmbientPoint group_mul(const AmbientPoint& p, const AmbientPoint& q, SpaceKind space) {
  return detail::multiply<AmbientPoint>(p, q, space);
}

inline AmbientPoint group_inv(const AmbientPoint& p, SpaceKind space) {
  require_on_manifold(p, space);
  return {p[0], -p[1], -p[2], -p[3]};
}

/// Left translation p.v of an ambient vector (the differential of q -> p.q).
inline TangentVector translate(const AmbientPoint& p, const TangentVector& v, SpaceKind space) {
  return detail::multiply<TangentVector>(p, v, space);
}

/// p^-1 . v, i.e. v pulled back to the identity.
inline TangentVector pull_back(const AmbientPoint& p, const TangentVector& v, SpaceKind space) {
  return translate(group_inv(p, space), v, space);
}

/// Re(z1 conj(z2) + w1 conj(w2)).
inline double euclidean_ip(const TangentVector& a, const TangentVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Differential of the defining form at p applied to v, halved:
/// Re(conj(z) v_z) +- Re(conj(w) v_w). Zero iff v is tangent at p.
inline double tangency_residual(const AmbientPoint& p, const TangentVector& v, SpaceKind space) {
  const double zpart = p[0] * v[0] + p[1] * v[1];
  const double wpart = p[2] * v[2] + p[3] * v[3];
  return space == SpaceKind::S3 ? zpart + wpart : zpart - wpart;
}

// Basis of T_e together with the normal direction, as ambient vectors at e.
inline constexpr TangentVector kUnitI{0.0, 1.0, 0.0, 0.0};         // (i, 0)
inline constexpr TangentVector kMinusJ{0.0, 0.0, -1.0, 0.0};       // (0, -1)
inline constexpr TangentVector kUnitK{0.0, 0.0, 0.0, 1.0};         // (0, i)
inline constexpr TangentVector kUnitReal{1.0, 0.0, 0.0, 0.0};      // (1, 0)

/// Left-invariant frame at a point: X, Y, Z span the tangent space, N the normal line.
struct FrameVectors {
  TangentVector X, Y, Z, N;
};

inline FrameVectors frame_at(const AmbientPoint& p, const BergerParams& params, SpaceKind space) {
  params.validate();
  require_on_manifold(p, space);
  return {translate(p, kUnitI, space) / params.lambda, translate(p, kMinusJ, space) / params.mu,
          translate(p, kUnitK, space) / params.nu, translate(p, kUnitReal, space)};
}

}  // namespace berger
