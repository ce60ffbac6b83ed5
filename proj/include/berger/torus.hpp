#pragma once

/**
 * @file torus.hpp
 * @brief Flat tori in S^3 and Sigma^3 and their extrinsic geometry.
 *
 *   S^3:     F(a, b) = (cos t e^{ia},  sin t e^{ib}),   0 < t < pi/2
 *   Sigma^3: F(a, b) = (cosh t e^{ia}, sinh t e^{ib}),  t > 0
 *
 * The second fundamental form is obtained by decomposing the flat second
 * derivative of F along {d_alpha, d_beta, normal of the torus, N_p} with
 * respect to the Berger metric on all of R^4. The tangential part is removed
 * with the inverse of the first fundamental form, never with square roots of
 * it, so the same code serves indefinite induced metrics.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "berger/ambient.hpp"
#include "berger/error.hpp"
#include "berger/metric.hpp"

namespace berger {

struct TorusPoint {
  double theta = std::numbers::pi / 4;
  double alpha = 0.0;
  double beta = 0.0;
};

struct FundamentalForm {
  double E = 0.0, F = 0.0, G = 0.0;

  double determinant() const { return E * G - F * F; }
};

struct TorusPartials {
  TangentVector d_alpha, d_beta, d_theta;
};

struct SurfaceGeometry {
  FundamentalForm form;
  /// B(d_alpha, d_alpha) on the frame; only y and z survive.
  FrameCoords b_alpha;
  FrameCoords trace_b;
  FrameCoords h;
  double h_norm = 0.0;
  bool minimal = false;
};

struct CmcSolution {
  std::vector<double> thetas;
};

enum class CmcMethod { ClosedForm, Bisection };

inline constexpr double kDegenerateDeterminant = 1e-14;
inline constexpr double kMinimalTolerance = 1e-12;
inline constexpr double kCmcResidualTolerance = 1e-10;

inline void require_torus_domain(SpaceKind space, double theta) {
  const bool ok = space == SpaceKind::S3 ? (theta > 0.0 && theta < std::numbers::pi / 2)
                                         : (theta > 0.0 && std::isfinite(theta));
  if (!ok) {
    throw GeometryError(ErrorCode::DegenerateTorus,
                        "theta = " + show(theta) + " degenerates the " + to_string(space) +
                            " torus to a circle");
  }
}

namespace detail {

// (cos t, sin t) on S^3, (cosh t, sinh t) on Sigma^3.
inline std::pair<double, double> radii(SpaceKind space, double theta) {
  if (space == SpaceKind::S3) return {std::cos(theta), std::sin(theta)};
  return {std::cosh(theta), std::sinh(theta)};
}

}  // namespace detail

inline AmbientPoint embed(SpaceKind space, const TorusPoint& tp) {
  require_torus_domain(space, tp.theta);
  const auto [c, s] = detail::radii(space, tp.theta);
  return {c * std::cos(tp.alpha), c * std::sin(tp.alpha), s * std::cos(tp.beta), s * std::sin(tp.beta)};
}

inline TorusPartials partials(SpaceKind space, const TorusPoint& tp) {
  require_torus_domain(space, tp.theta);
  const auto [c, s] = detail::radii(space, tp.theta);
  const double ca = std::cos(tp.alpha), sa = std::sin(tp.alpha);
  const double cb = std::cos(tp.beta), sb = std::sin(tp.beta);
  // d/dtheta of (c, s) is (-s, c) on S^3 and (s, c) on Sigma^3.
  const double dc = space == SpaceKind::S3 ? -s : s;
  return {TangentVector{-c * sa, c * ca, 0.0, 0.0}, TangentVector{0.0, 0.0, -s * sb, s * cb},
          TangentVector{dc * ca, dc * sa, c * cb, c * sb}};
}

/// Flat second derivatives d^2F/d alpha^2 and d^2F/d beta^2.
inline std::pair<TangentVector, TangentVector> second_partials(SpaceKind space, const TorusPoint& tp) {
  require_torus_domain(space, tp.theta);
  const auto [c, s] = detail::radii(space, tp.theta);
  return {TangentVector{-c * std::cos(tp.alpha), -c * std::sin(tp.alpha), 0.0, 0.0},
          TangentVector{0.0, 0.0, -s * std::cos(tp.beta), -s * std::sin(tp.beta)}};
}

/// Closed-form first fundamental form for any signature. With
/// D = e2 mu^2 sin^2(a+b) + e3 nu^2 cos^2(a+b):
///   S^3:     E = c^2 (e1 l^2 c^2 + s^2 D),  F =  c^2 s^2 (e1 l^2 - D),  G = s^2 (e1 l^2 s^2 + c^2 D)
///   Sigma^3: E = c^2 (e1 l^2 c^2 + s^2 D),  F = -c^2 s^2 (e1 l^2 + D),  G = s^2 (e1 l^2 s^2 + c^2 D)
inline FundamentalForm first_fundamental_form(const ModelSpec& spec, const TorusPoint& tp) {
  spec.validate();
  require_torus_domain(spec.space, tp.theta);
  const auto [c, s] = detail::radii(spec.space, tp.theta);
  const auto& sig = spec.signature;
  const double sum = tp.alpha + tp.beta;
  const double mixed = sig[1] * spec.params.mu * spec.params.mu * std::sin(sum) * std::sin(sum) +
                       sig[2] * spec.params.nu * spec.params.nu * std::cos(sum) * std::cos(sum);
  const double l2 = sig[0] * spec.params.lambda * spec.params.lambda;
  const double c2 = c * c, s2 = s * s;
  FundamentalForm form;
  form.E = c2 * (l2 * c2 + s2 * mixed);
  form.G = s2 * (l2 * s2 + c2 * mixed);
  form.F = spec.space == SpaceKind::S3 ? c2 * s2 * (l2 - mixed) : -c2 * s2 * (l2 + mixed);
  return form;
}

/// The same form evaluated through the metric on the closed-form partials.
inline FundamentalForm induced_form(const ModelSpec& spec, const TorusPoint& tp) {
  const AmbientPoint p = embed(spec.space, tp);
  const auto d = partials(spec.space, tp);
  return {berger_ip(p, d.d_alpha, d.d_alpha, spec), berger_ip(p, d.d_alpha, d.d_beta, spec),
          berger_ip(p, d.d_beta, d.d_beta, spec)};
}

struct GramSchmidt {
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
};

/// V1 = f1 d_alpha, V2 = f2 d_alpha + f3 d_beta; positive-definite forms only.
inline GramSchmidt gram_schmidt_basis(const FundamentalForm& form) {
  const double det = form.determinant();
  if (!(form.E > 0.0) || !(det > 0.0)) {
    throw GeometryError(ErrorCode::IndefiniteInducedMetric,
                        "Gram-Schmidt needs E > 0 and EG - F^2 > 0");
  }
  return {1.0 / std::sqrt(form.E), -form.F / std::sqrt(form.E * det), std::sqrt(form.E) / std::sqrt(det)};
}

namespace detail {

inline void require_nondegenerate(const FundamentalForm& form) {
  if (std::abs(form.determinant()) < kDegenerateDeterminant) {
    throw GeometryError(ErrorCode::DegenerateInducedMetric, "EG - F^2 vanishes");
  }
}

// Normal part of an ambient vector v at a torus point: v minus its tangential
// projection (via the inverse first fundamental form) minus its N_p component.
inline FrameCoords normal_part(const ModelSpec& spec, const FundamentalForm& form, const FrameCoords& v,
                               const FrameCoords& da, const FrameCoords& db) {
  const auto& sig = spec.signature;
  const double ra = frame_ip(v, da, sig), rb = frame_ip(v, db, sig);
  const double det = form.determinant();
  const double ca = (form.G * ra - form.F * rb) / det;
  const double cb = (form.E * rb - form.F * ra) / det;
  FrameCoords out = v - ca * da - cb * db;
  out.n = 0.0;  // <N,N> = 1 and N is orthogonal to the tangent space
  return out;
}

struct SecondForms {
  FundamentalForm form;
  FrameCoords b_alpha, b_beta;
};

inline SecondForms second_forms(const ModelSpec& spec, const TorusPoint& tp) {
  spec.validate();
  const AmbientPoint p = embed(spec.space, tp);
  const auto d = partials(spec.space, tp);
  const auto [aa, bb] = second_partials(spec.space, tp);
  const FundamentalForm form = first_fundamental_form(spec, tp);
  require_nondegenerate(form);
  const FrameCoords da = frame_components(p, d.d_alpha, spec);
  const FrameCoords db = frame_components(p, d.d_beta, spec);
  return {form, normal_part(spec, form, frame_components(p, aa, spec), da, db),
          normal_part(spec, form, frame_components(p, bb, spec), da, db)};
}

}  // namespace detail

inline FrameCoords second_ff_alpha(const ModelSpec& spec, const TorusPoint& tp) {
  return detail::second_forms(spec, tp).b_alpha;
}

inline FrameCoords second_ff_beta(const ModelSpec& spec, const TorusPoint& tp) {
  return detail::second_forms(spec, tp).b_beta;
}

/// sqrt|<v,v>|; for the tori here v has no X component, so the modulus is inert.
inline double berger_norm(const FrameCoords& v, const Signature& sig) {
  return std::sqrt(std::abs(frame_ip(v, v, sig)));
}

inline SurfaceGeometry mean_curvature(const ModelSpec& spec, const TorusPoint& tp) {
  const auto forms = detail::second_forms(spec, tp);
  SurfaceGeometry geo;
  geo.form = forms.form;
  geo.b_alpha = forms.b_alpha;
  // B(d_alpha, d_beta) = 0 and B(d_beta, d_beta) = -B(d_alpha, d_alpha).
  const double ratio = (forms.form.G - forms.form.E) / forms.form.determinant();
  geo.trace_b = ratio * forms.b_alpha;
  geo.h = 0.5 * geo.trace_b;
  geo.h_norm = berger_norm(geo.h, spec.signature);
  geo.minimal = geo.h_norm <= kMinimalTolerance;
  return geo;
}

namespace detail {

inline double mixed_weight(const BergerParams& params, double sum) {
  const double sn = std::sin(sum), cs = std::cos(sum);
  return params.mu * params.mu * sn * sn + params.nu * params.nu * cs * cs;
}

}  // namespace detail

/// B(d_alpha, d_alpha) in closed form, valid when e2 = e3 = +1:
///   b_y = -c s mu nu^2 cos(a+b) / D,  b_z = c s mu^2 nu sin(a+b) / D,
/// with D = mu^2 sin^2(a+b) + nu^2 cos^2(a+b) and (c, s) the torus radii.
inline FrameCoords closed_form_second_ff_alpha(const ModelSpec& spec, const TorusPoint& tp) {
  spec.validate();
  require_torus_domain(spec.space, tp.theta);
  if (!spec.signature.is_tabulated()) {
    throw GeometryError(ErrorCode::UnsupportedSignature, "no closed form for " + spec.signature.to_string());
  }
  const auto [c, s] = detail::radii(spec.space, tp.theta);
  const double sum = tp.alpha + tp.beta;
  const double D = detail::mixed_weight(spec.params, sum);
  const double m = spec.params.mu, n = spec.params.nu;
  return {0.0, -c * s * m * n * n * std::cos(sum) / D, c * s * m * m * n * std::sin(sum) / D, 0.0};
}

/// ||H|| = mu nu / (|tan 2t| D^{3/2}) on S^3 and mu nu / (|tanh 2t| D^{3/2}) on Sigma^3.
inline double closed_form_mean_curvature_norm(const ModelSpec& spec, const TorusPoint& tp) {
  spec.validate();
  require_torus_domain(spec.space, tp.theta);
  if (!spec.signature.is_tabulated()) {
    throw GeometryError(ErrorCode::UnsupportedSignature, "no closed form for " + spec.signature.to_string());
  }
  const double D = detail::mixed_weight(spec.params, tp.alpha + tp.beta);
  const double m = spec.params.mu, n = spec.params.nu;
  if (spec.space == SpaceKind::S3) {
    // cos 2t / sin 2t keeps the value exactly zero-friendly at t = pi/4.
    const double inv_tan = std::abs(std::cos(2 * tp.theta)) / std::sin(2 * tp.theta);
    return m * n * inv_tan / std::pow(D, 1.5);
  }
  return m * n / (std::tanh(2 * tp.theta) * std::pow(D, 1.5));
}

namespace detail {

inline constexpr double kCmcHypothesisTolerance = 1e-14;

inline double cmc_norm(const ModelSpec& spec, double theta) {
  return mean_curvature(spec, TorusPoint{theta, 0.0, 0.0}).h_norm;
}

// Root of f(t) = ||H(t)|| - C on [lo, hi], assuming a sign change.
inline double bisect(const ModelSpec& spec, double target, double lo, double hi) {
  double flo = cmc_norm(spec, lo) - target;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = cmc_norm(spec, mid) - target;
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> cmc_bisection(const ModelSpec& spec, double target) {
  constexpr double kGap = 1e-6;
  constexpr double kFloor = 1e-4;  // keeps EG - F^2 clear of the degeneracy cutoff
  std::vector<double> roots;
  if (spec.space == SpaceKind::S3) {
    const double quarter = std::numbers::pi / 4;
    if (target == 0.0) return {quarter};
    const double top = std::numbers::pi / 2 - kFloor;
    if (cmc_norm(spec, kFloor) < target) return {};
    if (cmc_norm(spec, quarter - kGap) < target) roots.push_back(bisect(spec, target, kFloor, quarter - kGap));
    if (cmc_norm(spec, quarter + kGap) < target) roots.push_back(bisect(spec, target, quarter + kGap, top));
    return roots;
  }
  if (target * spec.params.mu <= 1.0) return {};
  double hi = 1.0;
  while (cmc_norm(spec, hi) > target && hi < 50.0) hi *= 2.0;
  if (cmc_norm(spec, kFloor) < target || cmc_norm(spec, hi) > target) return {};
  return {bisect(spec, target, kFloor, hi)};
}

}  // namespace detail

/// Tori of the family with ||H|| identically C; requires mu = nu.
inline CmcSolution cmc_solve(const ModelSpec& spec, double target, CmcMethod method = CmcMethod::ClosedForm) {
  spec.validate();
  const double mu = spec.params.mu;
  if (std::abs(mu - spec.params.nu) > detail::kCmcHypothesisTolerance) {
    throw GeometryError(ErrorCode::HypothesisViolated, "constant mean curvature needs mu = nu");
  }
  if (!(target >= 0.0) || !std::isfinite(target)) {
    throw GeometryError(ErrorCode::DomainError, "target mean curvature must be finite and non-negative");
  }

  CmcSolution sol;
  if (method == CmcMethod::Bisection) {
    sol.thetas = detail::cmc_bisection(spec, target);
  } else if (spec.space == SpaceKind::S3) {
    if (target == 0.0) {
      sol.thetas = {std::numbers::pi / 4};
    } else {
      const double half = 0.5 * std::atan(1.0 / (target * mu));
      sol.thetas = {half, std::numbers::pi / 2 - half};
    }
  } else if (target * mu > 1.0) {
    sol.thetas = {0.5 * std::atanh(1.0 / (target * mu))};
  }

  if (sol.thetas.empty()) {
    throw GeometryError(ErrorCode::NoSolution, "no torus of the family has ||H|| = " + show(target));
  }
  for (double theta : sol.thetas) {
    const double residual = std::abs(detail::cmc_norm(spec, theta) - target);
    if (residual > kCmcResidualTolerance * std::max(1.0, target)) {
      throw GeometryError(ErrorCode::NoSolution,
                          "root at theta = " + show(theta) + " misses the target by " +
                              show(residual));
    }
  }
  std::sort(sol.thetas.begin(), sol.thetas.end());
  return sol;
}

}  // namespace berger
