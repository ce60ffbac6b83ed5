#pragma once

/**
 * @file connection.hpp
 * @brief Levi-Civita connection and curvature of the left-invariant frame.
 *
 * Everything here lives in frame components. For left-invariant fields the
 * derivative terms of the Koszul formula drop out, leaving
 *
 *   2 <nabla_{E_i} E_j, E_k> = <E_k,[E_i,E_j]> + <E_j,[E_k,E_i]> - <E_i,[E_j,E_k]>,
 *
 * and <E_a, E_b> = eps_a delta_ab recovers the coefficients. Curvature follows
 * from R(A,B)C = nabla_A nabla_B C - nabla_B nabla_A C - nabla_[A,B] C with all
 * coefficients constant.
 */

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "berger/error.hpp"
#include "berger/metric.hpp"

namespace berger {

enum Axis : std::size_t { kX = 0, kY = 1, kZ = 2 };

using Table3 = std::array<std::array<std::array<double, 3>, 3>, 3>;

/// [E_i, E_j] = sum_k c[i][j][k] E_k, frame order (X, Y, Z).
struct StructureConstants {
  Table3 c{};
};

/// nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k.
struct ConnectionTable {
  Table3 gamma{};
};

enum class PlaneKind { XY, XZ, YZ };

inline constexpr std::array<PlaneKind, 3> kAllPlanes{PlaneKind::XY, PlaneKind::XZ, PlaneKind::YZ};

inline const char* to_string(PlaneKind plane) {
  switch (plane) {
    case PlaneKind::XY: return "XY";
    case PlaneKind::XZ: return "XZ";
    case PlaneKind::YZ: return "YZ";
  }
  return "?";
}

constexpr std::pair<std::size_t, std::size_t> plane_axes(PlaneKind plane) {
  switch (plane) {
    case PlaneKind::XY: return {kX, kY};
    case PlaneKind::XZ: return {kX, kZ};
    case PlaneKind::YZ: return {kY, kZ};
  }
  return {kX, kY};
}

inline void require_tabulated(const Signature& sig) {
  if (!sig.is_tabulated()) {
    throw GeometryError(ErrorCode::UnsupportedSignature,
                        "no closed form for signature " + sig.to_string());
  }
}

inline StructureConstants structure_constants(const ModelSpec& spec) {
  spec.validate();
  const auto [l, m, n] = spec.params;
  StructureConstants sc;
  auto set = [&sc](std::size_t i, std::size_t j, std::size_t k, double v) {
    sc.c[i][j][k] = v;
    sc.c[j][i][k] = -v;
  };
  set(kX, kY, kZ, 2.0 * n / (l * m));
  set(kZ, kX, kY, 2.0 * m / (n * l));
  // The only difference between the two groups.
  const double yz = 2.0 * l / (m * n);
  set(kY, kZ, kX, spec.space == SpaceKind::S3 ? yz : -yz);
  return sc;
}

inline ConnectionTable koszul_connection(const StructureConstants& sc, const Signature& sig) {
  const auto& c = sc.c;
  ConnectionTable t;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const double twice = sig[k] * c[i][j][k] + sig[j] * c[k][i][j] - sig[i] * c[j][k][i];
        t.gamma[i][j][k] = sig[k] * 0.5 * twice;
      }
    }
  }
  return t;
}

inline ConnectionTable koszul_connection(const ModelSpec& spec) {
  return koszul_connection(structure_constants(spec), spec.signature);
}

/// The four tabulated connections, transcribed term by term. Independent of the Koszul solver.
inline ConnectionTable closed_form_connection(const ModelSpec& spec) {
  spec.validate();
  require_tabulated(spec.signature);
  const auto [l, m, n] = spec.params;
  const double L = l * l, M = m * m, N = n * n, d = l * m * n;
  const bool lorentz = spec.signature[0] < 0;

  // Coefficients of nabla_X Y (on Z), nabla_Y X (on Z), nabla_Z X (on Y),
  // and the X-coefficients of nabla_Y Z, nabla_Z Y.
  double xy, yx, zx, yz, zy;
  if (spec.space == SpaceKind::S3 && !lorentz) {
    xy = (-L + M + N) / d;
    yx = (-L + M - N) / d;
    zx = (L + M - N) / d;
    yz = -(-L + M - N) / d;
    zy = -(L + M - N) / d;
  } else if (spec.space == SpaceKind::S3) {
    xy = (L + M + N) / d;
    yx = (L + M - N) / d;
    zx = (-L + M - N) / d;
    yz = (L + M - N) / d;
    zy = (-L + M - N) / d;
  } else if (!lorentz) {
    xy = (L + M + N) / d;
    yx = (L + M - N) / d;
    zx = (-L + M - N) / d;
    yz = -(L + M - N) / d;
    zy = -(-L + M - N) / d;
  } else {
    xy = (-L + M + N) / d;
    yx = (-L + M - N) / d;
    zx = (L + M - N) / d;
    yz = -(L - M + N) / d;
    zy = (L + M - N) / d;
  }

  ConnectionTable t;
  t.gamma[kX][kY][kZ] = xy;
  t.gamma[kX][kZ][kY] = -xy;
  t.gamma[kY][kX][kZ] = yx;
  t.gamma[kY][kZ][kX] = yz;
  t.gamma[kZ][kX][kY] = zx;
  t.gamma[kZ][kY][kX] = zy;
  return t;
}

inline double max_abs_difference(const Table3& a, const Table3& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[i][j][k] - b[i][j][k]));
  return worst;
}

namespace detail {

using Vec3 = std::array<double, 3>;

// nabla_{E_a} of the left-invariant field sum_k v_k E_k.
inline Vec3 covariant(const ConnectionTable& t, std::size_t a, const Vec3& v) {
  Vec3 out{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t q = 0; q < 3; ++q) out[q] += v[k] * t.gamma[a][k][q];
  return out;
}

// nabla_W of a left-invariant field, W = sum_a w_a E_a.
inline Vec3 covariant_along(const ConnectionTable& t, const Vec3& w, const Vec3& v) {
  Vec3 out{};
  for (std::size_t a = 0; a < 3; ++a) {
    const Vec3 part = covariant(t, a, v);
    for (std::size_t q = 0; q < 3; ++q) out[q] += w[a] * part[q];
  }
  return out;
}

}  // namespace detail

/// Frame components of R(E_i, E_j) E_k.
inline std::array<double, 3> riemann(const ConnectionTable& t, const StructureConstants& sc, std::size_t i,
                                     std::size_t j, std::size_t k) {
  using detail::Vec3;
  const Vec3 ek = [k] {
    Vec3 e{};
    e[k] = 1.0;
    return e;
  }();
  const Vec3 first = detail::covariant(t, i, detail::covariant(t, j, ek));
  const Vec3 second = detail::covariant(t, j, detail::covariant(t, i, ek));
  const Vec3 third = detail::covariant_along(t, sc.c[i][j], ek);
  Vec3 out{};
  for (std::size_t q = 0; q < 3; ++q) out[q] = first[q] - second[q] - third[q];
  return out;
}

/// <R(E_i,E_j)E_j, E_i> for the plane's two frame vectors, from the Koszul table.
inline double curvature_numerator(const ModelSpec& spec, PlaneKind plane) {
  const auto sc = structure_constants(spec);
  const auto table = koszul_connection(sc, spec.signature);
  const auto [i, j] = plane_axes(plane);
  return spec.signature[i] * riemann(table, sc, i, j, j)[i];
}

/// Numerator divided by the Gram determinant eps_i eps_j of the plane.
inline double sectional_curvature(const ModelSpec& spec, PlaneKind plane) {
  const auto [i, j] = plane_axes(plane);
  return curvature_numerator(spec, plane) / (spec.signature[i] * spec.signature[j]);
}

/// The tabulated curvature formulas exactly as printed, including the
/// Sigma^3 Riemannian K(Y,Z) whose lambda^4 - mu^2 - nu^2 term is not
/// homogeneous and disagrees with the Koszul value.
inline double printed_curvature_numerator(const ModelSpec& spec, PlaneKind plane) {
  spec.validate();
  require_tabulated(spec.signature);
  const auto [l, m, n] = spec.params;
  const double L = l * l, M = m * m, N = n * n, d2 = (l * m * n) * (l * m * n);
  const bool lorentz = spec.signature[0] < 0;
  const bool s3 = spec.space == SpaceKind::S3;
  auto sq = [](double v) { return v * v; };

  // The XY/XZ pairs come in two flavours that the four cases share.
  const double xy_a = sq(L - M + N) + 4 * N * (M - N);
  const double xz_a = sq(L + M - N) - 4 * M * (M - N);
  const double xy_b = sq(L + M - N) + 4 * N * (M - N);
  const double xz_b = sq(L - M + N) - 4 * M * (M - N);
  const bool flavour_a = s3 != lorentz;

  switch (plane) {
    case PlaneKind::XY: return (flavour_a ? xy_a : xy_b) / d2;
    case PlaneKind::XZ: return (flavour_a ? xz_a : xz_b) / d2;
    case PlaneKind::YZ:
      if (s3 && !lorentz) return (sq(L + M + N) - 4 * (L * L + M * N)) / d2;
      if (s3) return (sq(L + M + N) + 2 * (L * L - M * M - N * N)) / d2;
      if (!lorentz) return -(sq(L + M + N) + 2 * (L * L - M - N)) / d2;
      return -(sq(L + M + N) - 4 * (L * L + M * N)) / d2;
  }
  return 0.0;
}

/// The printed form known to disagree with the Koszul value.
inline bool printed_curvature_is_known_typo(const ModelSpec& spec, PlaneKind plane) {
  return spec.space == SpaceKind::Sigma3 && spec.signature.is_riemannian() && plane == PlaneKind::YZ;
}

enum class SignRegion { InRegion, OnBoundary, Outside };

inline const char* to_string(SignRegion r) {
  switch (r) {
    case SignRegion::InRegion: return "InRegion";
    case SignRegion::OnBoundary: return "OnBoundary";
    case SignRegion::Outside: return "Outside";
  }
  return "?";
}

/// A non-positive-curvature condition on lambda^2: an optional ordering of
/// mu and nu, then either 0 < lambda^2 <= bound or lambda^2 >= bound.
struct SignCondition {
  enum class Ordering { Any, MuBelowNu, MuAboveNu };
  enum class Direction { AtMost, AtLeast };

  Ordering ordering = Ordering::Any;
  Direction direction = Direction::AtMost;
  /// Boundary value of lambda^2; unset when the ordering fails.
  std::optional<double> bound;
};

inline constexpr double kSignBoundaryTolerance = 1e-10;

inline SignCondition sign_condition(const ModelSpec& spec, PlaneKind plane) {
  spec.validate();
  require_tabulated(spec.signature);
  using O = SignCondition::Ordering;
  using D = SignCondition::Direction;
  const auto [l, m, n] = spec.params;
  const double M = m * m, N = n * n;
  const bool lorentz = spec.signature[0] < 0;
  const bool s3 = spec.space == SpaceKind::S3;
  const double root = std::sqrt(M * M - M * N + N * N);

  SignCondition cond;
  switch (plane) {
    case PlaneKind::XY: {
      cond.ordering = O::MuBelowNu;
      if (m < n) {
        const double lead = 2 * n * std::sqrt(N - M);
        // S^3,g and Sigma^3,h: 2n sqrt(n^2-m^2) + m^2 - n^2, the others flip the tail.
        cond.bound = (s3 != lorentz) ? lead + M - N : lead - M + N;
      }
      break;
    }
    case PlaneKind::XZ: {
      cond.ordering = O::MuAboveNu;
      if (m > n) {
        const double lead = 2 * m * std::sqrt(M - N);
        cond.bound = (s3 != lorentz) ? lead + N - M : lead - N + M;
      }
      break;
    }
    case PlaneKind::YZ: {
      if (s3 && !lorentz) {
        cond.direction = D::AtLeast;
        cond.bound = (2 * root + M + N) / 3;
      } else if (s3) {
        cond.bound = (2 * root - M - N) / 3;
      } else if (!lorentz) {
        cond.direction = D::AtLeast;
        cond.bound = (2 * root - M - N) / 3;
      } else {
        cond.bound = (2 * root + M + N) / 3;
      }
      break;
    }
  }
  return cond;
}

inline SignRegion sign_region_check(const ModelSpec& spec, PlaneKind plane) {
  const SignCondition cond = sign_condition(spec, plane);
  if (!cond.bound) return SignRegion::Outside;
  const double l2 = spec.params.lambda * spec.params.lambda;
  const double b = *cond.bound;
  if (std::abs(l2 - b) <= kSignBoundaryTolerance) return SignRegion::OnBoundary;
  const bool inside =
      cond.direction == SignCondition::Direction::AtMost ? (l2 > 0.0 && l2 <= b) : (l2 >= b);
  return inside ? SignRegion::InRegion : SignRegion::Outside;
}

}  // namespace berger
