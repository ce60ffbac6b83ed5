#pragma once

/**
 * @file metric.hpp
 * @brief The generalised Berger metric family on S^3 and Sigma^3, any signature.
 *
 * At a point p the metric pulls vectors back to the identity and weighs their
 * components along (i,0), (0,-1), (0,i) and (1,0):
 *
 *   <A,B>_p = e1 l^2 a_i b_i + e2 m^2 a_j b_j + e3 n^2 a_k b_k + a_1 b_1,
 *
 * where a_* are Euclidean projections of p^-1 A. The last term is the normal
 * direction; keeping it makes the form usable on every ambient vector, which
 * the surface decomposition relies on.
 */

#include <cmath>

#include "berger/ambient.hpp"
#include "berger/params.hpp"

namespace berger {

struct ModelSpec {
  SpaceKind space = SpaceKind::S3;
  BergerParams params{};
  Signature signature{};

  void validate() const { params.validate(); }
};

/// Coefficients of an ambient vector on the frame {X_p, Y_p, Z_p, N_p}.
struct FrameCoords {
  double x = 0.0, y = 0.0, z = 0.0, n = 0.0;

  friend constexpr FrameCoords operator+(const FrameCoords& a, const FrameCoords& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z, a.n + b.n};
  }
  friend constexpr FrameCoords operator-(const FrameCoords& a, const FrameCoords& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z, a.n - b.n};
  }
  friend constexpr FrameCoords operator*(double s, const FrameCoords& a) {
    return {s * a.x, s * a.y, s * a.z, s * a.n};
  }
};

/// Expands v (an ambient vector at p) on the left-invariant frame at p.
inline FrameCoords frame_components(const AmbientPoint& p, const TangentVector& v, const ModelSpec& spec) {
  const TangentVector u = pull_back(p, v, spec.space);
  // p.(i,0) = l X, p.(0,-1) = m Y, p.(0,i) = n Z, p.(1,0) = N
  return {spec.params.lambda * u[1], -spec.params.mu * u[2], spec.params.nu * u[3], u[0]};
}

/// Ambient vector with the given frame coefficients at p.
inline TangentVector from_frame(const AmbientPoint& p, const FrameCoords& c, const ModelSpec& spec) {
  const TangentVector at_identity{c.n, c.x / spec.params.lambda, -c.y / spec.params.mu,
                                  c.z / spec.params.nu};
  return translate(p, at_identity, spec.space);
}

/// The metric in frame coordinates; the normal weight is always +1.
inline double frame_ip(const FrameCoords& a, const FrameCoords& b, const Signature& sig) {
  return sig[0] * a.x * b.x + sig[1] * a.y * b.y + sig[2] * a.z * b.z + a.n * b.n;
}

inline double berger_ip(const AmbientPoint& p, const TangentVector& a, const TangentVector& b,
                        const ModelSpec& spec) {
  require_on_manifold(p, spec.space);
  return frame_ip(frame_components(p, a, spec), frame_components(p, b, spec), spec.signature);
}

enum class CausalClass { Timelike, Lightlike, Spacelike };

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Spacelike: return "spacelike";
  }
  return "unknown";
}

inline constexpr double kCausalTolerance = 1e-12;

/// Zero counts as spacelike.
inline CausalClass causal_character(const AmbientPoint& p, const TangentVector& a, const ModelSpec& spec,
                                    double tol = kCausalTolerance) {
  const double q = berger_ip(p, a, a, spec);
  if (q < -tol) return CausalClass::Timelike;
  const bool is_zero = a == TangentVector{};
  if (std::abs(q) <= tol && !is_zero) return CausalClass::Lightlike;
  return CausalClass::Spacelike;
}

}  // namespace berger
