#pragma once

/**
 * @file verify.hpp
 * @brief Finite-difference oracle and the cross-check suite.
 *
 * Everything here re-derives geometry from `embed` alone: derivatives are
 * central differences, inner products go through the frame expansion, and
 * no closed-form partial, fundamental form or curvature formula is used on
 * the oracle side.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "berger/ambient.hpp"
#include "berger/connection.hpp"
#include "berger/error.hpp"
#include "berger/metric.hpp"
#include "berger/params.hpp"
#include "berger/torus.hpp"

namespace berger {

struct FdConfig {
  double step = 1e-5;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;

  void validate() const {
    if (!(step > 0.0 && step <= 1e-2)) throw std::invalid_argument("step must lie in (0, 1e-2]");
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  }
};

enum class Which { Alpha, Beta, Theta };

namespace detail {

inline double& coordinate(TorusPoint& tp, Which which) {
  switch (which) {
    case Which::Alpha: return tp.alpha;
    case Which::Beta: return tp.beta;
    case Which::Theta: break;
  }
  return tp.theta;
}

inline TorusPoint shifted(TorusPoint tp, Which which, double h) {
  coordinate(tp, which) += h;
  return tp;
}

// The offset actually realised in floating point by adding h to the coordinate.
inline double realised_step(const TorusPoint& tp, Which which, double h) {
  TorusPoint base = tp, moved = shifted(tp, which, h);
  return coordinate(moved, which) - coordinate(base, which);
}

}  // namespace detail

inline TangentVector fd_partial(SpaceKind space, const TorusPoint& tp, Which which, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.step;
  const double width = detail::realised_step(tp, which, h) - detail::realised_step(tp, which, -h);
  return (embed(space, detail::shifted(tp, which, h)) - embed(space, detail::shifted(tp, which, -h))) / width;
}

namespace detail {

// (f(+h) - 2 f(0) + f(-h)) / h^2, written for the realised offsets hp and hm so
// that rounding of the shifted coordinate does not leak into the quotient.
inline TangentVector second_difference(SpaceKind space, const TorusPoint& tp, Which which, double h) {
  const double hp = realised_step(tp, which, h), hm = -realised_step(tp, which, -h);
  const TangentVector up = embed(space, shifted(tp, which, h)) - embed(space, tp);
  const TangentVector down = embed(space, shifted(tp, which, -h)) - embed(space, tp);
  return (2.0 / (hp + hm)) * (up / hp + down / hm);
}

inline TangentVector mixed_difference(SpaceKind space, const TorusPoint& tp, double h) {
  auto at = [&](double da, double db) { return embed(space, {tp.theta, tp.alpha + da, tp.beta + db}); };
  return ((at(h, h) - at(h, -h)) - (at(-h, h) - at(-h, -h))) / (4 * h * h);
}

}  // namespace detail

inline TangentVector fd_second_partial_alpha(SpaceKind space, const TorusPoint& tp, const FdConfig& cfg) {
  cfg.validate();
  return detail::second_difference(space, tp, Which::Alpha, cfg.step);
}

inline TangentVector fd_second_partial_beta(SpaceKind space, const TorusPoint& tp, const FdConfig& cfg) {
  cfg.validate();
  return detail::second_difference(space, tp, Which::Beta, cfg.step);
}

inline TangentVector fd_mixed_partial(SpaceKind space, const TorusPoint& tp, const FdConfig& cfg) {
  cfg.validate();
  return detail::mixed_difference(space, tp, cfg.step);
}

/// Base step of the extrapolated differences used by the FD surface pipeline.
inline constexpr double kPipelineStep = 1e-2;

/// Surface quantities rebuilt from differences of `embed`.
struct FdSurface {
  FundamentalForm form;
  FrameCoords b_alpha, b_beta, b_mixed;
  FrameCoords trace_b, h;
  double h_norm = 0.0;
};

namespace detail {

// One Richardson step on top of a second-order difference D(h): (4 D(h/2) - D(h)) / 3.
template <class Diff>
TangentVector richardson(Diff diff, double h) {
  return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

}  // namespace detail

inline FdSurface fd_surface(const ModelSpec& spec, const TorusPoint& tp, double h = kPipelineStep) {
  spec.validate();
  const SpaceKind space = spec.space;
  const AmbientPoint p = embed(space, tp);
  auto first = [&](Which w) {
    return detail::richardson(
        [&](double s) {
          return (embed(space, detail::shifted(tp, w, s)) - embed(space, detail::shifted(tp, w, -s))) / (2 * s);
        },
        h);
  };
  auto second = [&](Which w) {
    return detail::richardson([&](double s) { return detail::second_difference(space, tp, w, s); }, h);
  };
  const auto mixed = detail::richardson([&](double s) { return detail::mixed_difference(space, tp, s); }, h);

  const auto& sig = spec.signature;
  const FrameCoords da = frame_components(p, first(Which::Alpha), spec);
  const FrameCoords db = frame_components(p, first(Which::Beta), spec);

  FdSurface out;
  out.form = {frame_ip(da, da, sig), frame_ip(da, db, sig), frame_ip(db, db, sig)};
  const double E = out.form.E, F = out.form.F, G = out.form.G;
  const double det = E * G - F * F;
  if (std::abs(det) < kDegenerateDeterminant) {
    throw GeometryError(ErrorCode::DegenerateInducedMetric, "EG - F^2 vanishes");
  }

  auto normal = [&](const TangentVector& v) {
    FrameCoords c = frame_components(p, v, spec);
    const double ra = frame_ip(c, da, sig), rb = frame_ip(c, db, sig);
    c = c - ((G * ra - F * rb) / det) * da - ((E * rb - F * ra) / det) * db;
    c.n = 0.0;
    return c;
  };
  out.b_alpha = normal(second(Which::Alpha));
  out.b_beta = normal(second(Which::Beta));
  out.b_mixed = normal(mixed);

  // Full trace with the inverse induced metric.
  out.trace_b = (1.0 / det) * (G * out.b_alpha - 2.0 * F * out.b_mixed + E * out.b_beta);
  out.h = 0.5 * out.trace_b;
  out.h_norm = std::sqrt(std::abs(frame_ip(out.h, out.h, sig)));
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Draws for one case of one check; the n-th draw depends only on
/// (seed, check name, case index, n).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::string_view check, std::uint64_t index)
      : key_(splitmix64(splitmix64(seed) ^ fnv1a(check)) ^ splitmix64(index + 0x632be59bd9b4e019ULL)) {}

  double uniform(double lo, double hi) {
    const std::uint64_t bits = splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++draws_);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t key_;
  std::uint64_t draws_ = 0;
};

// ---------------------------------------------------------------------------
// Report

struct CheckRecord {
  std::string name;
  std::size_t cases = 0;
  double max_abs_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool expected_fail = false;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  /// True when every check not marked expected_fail passed.
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.passed || c.expected_fail; });
  }
};

/// Deviation recorded for a case that threw or produced a non-finite value.
inline constexpr double kBrokenCase = std::numeric_limits<double>::max();

inline std::vector<ModelSpec> standard_cases() {
  return {{SpaceKind::S3, {}, Signature::riemannian()},
          {SpaceKind::S3, {}, Signature::lorentzian()},
          {SpaceKind::Sigma3, {}, Signature::riemannian()},
          {SpaceKind::Sigma3, {}, Signature::lorentzian()}};
}

namespace detail {

struct Check {
  std::string name;
  double tolerance;
  bool expected_fail;
  // Deviation for case `index`; may throw.
  std::function<double(SampleStream&, std::size_t)> body;
  std::size_t cases;
};

inline CheckRecord run_check(const Check& check, std::uint64_t seed) {
  CheckRecord rec{check.name, check.cases, 0.0, check.tolerance, false, check.expected_fail};
  for (std::size_t i = 0; i < check.cases; ++i) {
    SampleStream rng(seed, check.name, i);
    double dev;
    try {
      dev = check.body(rng, i);
    } catch (const std::exception&) {
      dev = kBrokenCase;
    }
    if (!std::isfinite(dev)) dev = kBrokenCase;
    rec.max_abs_deviation = std::max(rec.max_abs_deviation, dev);
  }
  rec.passed = rec.max_abs_deviation <= rec.tolerance;
  return rec;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double max_dev(const TangentVector& a, const TangentVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_dev(const FrameCoords& a, const FrameCoords& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z), std::abs(a.n - b.n)});
}

inline double max_abs(const FrameCoords& a) { return max_dev(a, FrameCoords{}); }

// Round-off in differences of embed grows with |F|, which exceeds 1 on Sigma^3.
inline double embedding_scale(SpaceKind space, const TorusPoint& tp) {
  const auto p = embed(space, tp);
  return std::max(1.0, std::sqrt(euclidean_ip(p - AmbientPoint{}, p - AmbientPoint{})));
}

inline BergerParams random_params(SampleStream& rng) {
  const double l = rng.uniform(0.5, 2.0), m = rng.uniform(0.5, 2.0), n = rng.uniform(0.5, 2.0);
  return {l, m, n};
}

// Case 0 keeps the spec's own parameters.
inline ModelSpec sample_spec(const ModelSpec& base, SampleStream& rng, std::size_t index) {
  ModelSpec spec = base;
  if (index > 0) spec.params = random_params(rng);
  return spec;
}

inline TorusPoint random_torus_point(SpaceKind space, SampleStream& rng) {
  const double hi = space == SpaceKind::S3 ? std::numbers::pi / 2 - 0.2 : 1.5;
  const double theta = rng.uniform(0.2, hi);
  const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
  const double b = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return {theta, a, b};
}

// Every point of either space has this form for some t.
inline AmbientPoint random_point(SpaceKind space, SampleStream& rng) {
  const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
  const double b = rng.uniform(-std::numbers::pi, std::numbers::pi);
  double c, s;
  if (space == SpaceKind::S3) {
    const double t = rng.uniform(0.0, std::numbers::pi / 2);
    c = std::cos(t), s = std::sin(t);
  } else {
    const double t = rng.uniform(0.0, 1.5);
    c = std::cosh(t), s = std::sinh(t);
  }
  return {c * std::cos(a), c * std::sin(a), s * std::cos(b), s * std::sin(b)};
}

inline TangentVector random_tangent_at_identity(SampleStream& rng) {
  return rng.uniform(-1, 1) * kUnitI + rng.uniform(-1, 1) * kMinusJ + rng.uniform(-1, 1) * kUnitK;
}

// Sigma^3 Riemannian K(Y,Z) numerator from the Koszul computation, written out.
inline double corrected_sigma3_yz(const BergerParams& p) {
  const double L = p.lambda * p.lambda, M = p.mu * p.mu, N = p.nu * p.nu;
  const double d2 = L * M * N;
  return -((L + M + N) * (L + M + N) + 2 * (L * L - M * M - N * N)) / d2;
}

// Tabulated first-fundamental-form relations, one per case.
inline double fff_relation_deviation(const ModelSpec& spec, const TorusPoint& tp, const FundamentalForm& f) {
  const double l2 = spec.signature[0] * spec.params.lambda * spec.params.lambda;
  double c, s;
  if (spec.space == SpaceKind::S3) {
    c = std::cos(tp.theta), s = std::sin(tp.theta);
    return std::max(std::abs(f.F - (-f.E + l2 * c * c)), std::abs(f.G - (f.E + l2 * (s * s - c * c))));
  }
  c = std::cosh(tp.theta), s = std::sinh(tp.theta);
  return std::max(std::abs(f.F - (-f.E + l2 * c * c)), std::abs(f.G - (f.E - l2 * (c * c + s * s))));
}

inline std::vector<Check> checks_for(const ModelSpec& base, std::size_t n, const FdConfig& cfg) {
  const SpaceKind space = base.space;
  const bool tabulated = base.signature.is_tabulated();
  const std::string prefix = to_string(space) + "[" + base.signature.to_string() + "].";
  std::vector<Check> out;
  auto add = [&](std::string name, double tol, auto body, std::size_t cases = 0, bool xfail = false) {
    out.push_back({prefix + name, tol, xfail, body, cases ? cases : n});
  };

  // Ambient group.
  add("ambient.associativity", 1e-12, [space](SampleStream& rng, std::size_t) {
    const auto p = random_point(space, rng), q = random_point(space, rng), r = random_point(space, rng);
    const auto lhs = group_mul(group_mul(p, q, space), r, space);
    const auto rhs = group_mul(p, group_mul(q, r, space), space);
    return max_dev(lhs - kIdentity, rhs - kIdentity);
  });
  add("ambient.closure_and_inverse", 1e-12, [space](SampleStream& rng, std::size_t) {
    const auto p = random_point(space, rng), q = random_point(space, rng);
    const double closure = std::abs(manifold_residual(group_mul(p, q, space), space));
    const double inverse = max_dev(group_mul(p, group_inv(p, space), space) - kIdentity, TangentVector{});
    return std::max(closure, inverse);
  });

  // Frame and metric.
  add("metric.frame_gram", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto p = random_point(spec.space, rng);
    const auto f = frame_at(p, spec.params, spec.space);
    const TangentVector v[4] = {f.X, f.Y, f.Z, f.N};
    const int diag[4] = {spec.signature[0], spec.signature[1], spec.signature[2], 1};
    double m = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        m = std::max(m, std::abs(berger_ip(p, v[a], v[b], spec) - (a == b ? diag[a] : 0)));
    return m;
  });
  add("metric.frame_tangency", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto p = random_point(spec.space, rng);
    const auto f = frame_at(p, spec.params, spec.space);
    const double scale = euclidean_ip(p - AmbientPoint{}, p - AmbientPoint{});
    return std::max({std::abs(tangency_residual(p, f.X, spec.space)), std::abs(tangency_residual(p, f.Y, spec.space)),
                     std::abs(tangency_residual(p, f.Z, spec.space))}) /
           scale;
  });
  add("metric.left_invariance", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto p = random_point(spec.space, rng), g = random_point(spec.space, rng);
    const auto v = translate(p, random_tangent_at_identity(rng), spec.space);
    const auto w = translate(p, random_tangent_at_identity(rng), spec.space);
    const double before = berger_ip(p, v, w, spec);
    const double after =
        berger_ip(group_mul(g, p, spec.space), translate(g, v, spec.space), translate(g, w, spec.space), spec);
    return rel(after, before);
  });

  // Connection.
  if (tabulated) {
    add("connection.koszul_vs_closed_form", 1e-12, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      return max_abs_difference(koszul_connection(spec).gamma, closed_form_connection(spec).gamma);
    });
  }
  add("connection.torsion_free", 1e-14, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto sc = structure_constants(spec);
    const auto t = koszul_connection(sc, spec.signature);
    double m = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t k = 0; k < 3; ++k)
          m = std::max(m, std::abs(t.gamma[a][b][k] - t.gamma[b][a][k] - sc.c[a][b][k]));
    return m;
  });
  add("connection.metric_compatible", 1e-14, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto t = koszul_connection(spec);
    const auto& e = spec.signature;
    double m = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t k = 0; k < 3; ++k)
          m = std::max(m, std::abs(e[k] * t.gamma[a][b][k] + e[b] * t.gamma[a][k][b]));
    return m;
  });

  // Curvature.
  if (tabulated) {
    for (PlaneKind plane : kAllPlanes) {
      const bool xfail = printed_curvature_is_known_typo(base, plane);
      add(std::string("curvature.printed_") + to_string(plane), 1e-12,
          [base, plane](SampleStream& rng, std::size_t i) {
            const ModelSpec spec = sample_spec(base, rng, i);
            return std::abs(curvature_numerator(spec, plane) - printed_curvature_numerator(spec, plane));
          },
          0, xfail);
    }
    if (space == SpaceKind::Sigma3 && base.signature.is_riemannian()) {
      add("curvature.corrected_YZ", 1e-12, [base](SampleStream& rng, std::size_t i) {
        const ModelSpec spec = sample_spec(base, rng, i);
        return std::abs(curvature_numerator(spec, PlaneKind::YZ) - corrected_sigma3_yz(spec.params));
      });
    }
  }
  add("curvature.pair_symmetry", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto sc = structure_constants(spec);
    const auto t = koszul_connection(sc, spec.signature);
    double m = 0.0;
    for (PlaneKind plane : kAllPlanes) {
      const auto [a, b] = plane_axes(plane);
      const double ab = spec.signature[a] * riemann(t, sc, a, b, b)[a];
      const double ba = spec.signature[b] * riemann(t, sc, b, a, a)[b];
      m = std::max(m, std::abs(ab - ba));
    }
    return m;
  });
  if (space == SpaceKind::S3 && base.signature.is_riemannian()) {
    add("curvature.round_sphere", 1e-12, [](SampleStream&, std::size_t) {
      const ModelSpec round{SpaceKind::S3, {1, 1, 1}, Signature::riemannian()};
      double m = 0.0;
      for (PlaneKind plane : kAllPlanes) m = std::max(m, std::abs(sectional_curvature(round, plane) - 1.0));
      return m;
    }, 1);
  }

  // Sign regions.
  if (tabulated) {
    for (PlaneKind plane : kAllPlanes) {
      const std::string tag = std::string("sign_region.") + to_string(plane);
      add(tag + ".boundary", 1e-9, [base, plane](SampleStream& rng, std::size_t) {
        for (int attempt = 0; attempt < 256; ++attempt) {
          ModelSpec spec = base;
          double m = rng.uniform(0.5, 2.0), n = rng.uniform(0.5, 2.0);
          if (plane == PlaneKind::XY && m > n) std::swap(m, n);
          if (plane == PlaneKind::XZ && m < n) std::swap(m, n);
          spec.params = {1.0, m, n};
          const auto cond = sign_condition(spec, plane);
          if (!cond.bound || *cond.bound < 0.05) continue;
          spec.params.lambda = std::sqrt(*cond.bound);
          const double miss = sign_region_check(spec, plane) == SignRegion::OnBoundary ? 0.0 : 1.0;
          return std::max(miss, std::abs(curvature_numerator(spec, plane)));
        }
        return 1.0;
      });
      add(tag + ".interior", 0.0, [base, plane](SampleStream& rng, std::size_t i) {
        const ModelSpec spec = sample_spec(base, rng, i);
        const double k = curvature_numerator(spec, plane);
        if (std::abs(k) <= kSignBoundaryTolerance) return 0.0;
        switch (sign_region_check(spec, plane)) {
          case SignRegion::InRegion: return k < 0.0 ? 0.0 : 1.0;
          case SignRegion::Outside: return k > 0.0 ? 0.0 : 1.0;
          case SignRegion::OnBoundary: return 0.0;
        }
        return 1.0;
      });
    }
  }

  // Tori: fundamental forms.
  add("torus.first_form_vs_metric", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto tp = random_torus_point(spec.space, rng);
    const auto a = first_fundamental_form(spec, tp), b = induced_form(spec, tp);
    return std::max({rel(a.E, b.E), rel(a.F, b.F), rel(a.G, b.G)});
  });
  if (tabulated) {
    add("torus.first_form_relations", 1e-12, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      const auto tp = random_torus_point(spec.space, rng);
      const auto f = first_fundamental_form(spec, tp);
      return fff_relation_deviation(spec, tp, f) / std::max(1.0, std::abs(f.E));
    });
  }

  // Tori: finite differences at the configured step.
  add("torus.fd_first_partials", 1e-9, [space, cfg](SampleStream& rng, std::size_t) {
    const auto tp = random_torus_point(space, rng);
    const auto d = partials(space, tp);
    return std::max({max_dev(fd_partial(space, tp, Which::Alpha, cfg), d.d_alpha),
                     max_dev(fd_partial(space, tp, Which::Beta, cfg), d.d_beta),
                     max_dev(fd_partial(space, tp, Which::Theta, cfg), d.d_theta)}) /
           embedding_scale(space, tp);
  });
  add("torus.fd_second_partials", 1e-5, [space, cfg](SampleStream& rng, std::size_t) {
    const auto tp = random_torus_point(space, rng);
    const auto [aa, bb] = second_partials(space, tp);
    return std::max(max_dev(fd_second_partial_alpha(space, tp, cfg), aa),
                    max_dev(fd_second_partial_beta(space, tp, cfg), bb)) /
           embedding_scale(space, tp);
  });

  // Tori: second fundamental form and mean curvature.
  if (tabulated) {
    add("torus.b_alpha_closed_form", 1e-10, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      const auto tp = random_torus_point(spec.space, rng);
      return max_dev(second_ff_alpha(spec, tp), closed_form_second_ff_alpha(spec, tp));
    });
  }
  add("torus.b_alpha_no_x_or_n", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto b = second_ff_alpha(spec, random_torus_point(spec.space, rng));
    return std::max(std::abs(b.x), std::abs(b.n));
  });
  add("torus.b_beta_antisymmetry", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto tp = random_torus_point(spec.space, rng);
    return max_dev(second_ff_beta(spec, tp), -1.0 * second_ff_alpha(spec, tp));
  });
  add("torus.fd_b_beta_antisymmetry", 1e-6, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto s = fd_surface(spec, random_torus_point(spec.space, rng));
    return max_dev(s.b_beta, -1.0 * s.b_alpha);
  });
  add("torus.fd_b_mixed_vanishes", 1e-7, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    return max_abs(fd_surface(spec, random_torus_point(spec.space, rng)).b_mixed);
  });
  add("torus.fd_b_alpha", 1e-6, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto tp = random_torus_point(spec.space, rng);
    return max_dev(fd_surface(spec, tp).b_alpha, second_ff_alpha(spec, tp));
  });
  if (tabulated) {
    add("torus.h_norm_closed_form", 1e-10, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      const auto tp = random_torus_point(spec.space, rng);
      return rel(mean_curvature(spec, tp).h_norm, closed_form_mean_curvature_norm(spec, tp));
    });
    add("torus.fd_h_norm", 1e-6, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      const auto tp = random_torus_point(spec.space, rng);
      return rel(fd_surface(spec, tp).h_norm, closed_form_mean_curvature_norm(spec, tp));
    });
  }
  add("torus.fd_h_vector", 1e-6, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    const auto tp = random_torus_point(spec.space, rng);
    const auto geo = mean_curvature(spec, tp);
    return max_dev(fd_surface(spec, tp).h, geo.h) / std::max(1.0, geo.h_norm);
  });
  add("torus.signature_invariance", 1e-9, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    ModelSpec flipped = spec;
    flipped.signature = spec.signature.flip_first();
    const auto tp = random_torus_point(spec.space, rng);
    const auto a = mean_curvature(spec, tp), b = mean_curvature(flipped, tp);
    const double scale = std::max(1.0, a.h_norm);
    return std::max({max_dev(a.trace_b, b.trace_b) / scale, max_dev(a.h, b.h) / scale, rel(a.h_norm, b.h_norm)});
  });
  add("torus.lambda_independence", 1e-12, [base](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = sample_spec(base, rng, i);
    ModelSpec other = spec;
    other.params.lambda = rng.uniform(0.5, 2.0);
    const auto tp = random_torus_point(spec.space, rng);
    return rel(mean_curvature(other, tp).h_norm, mean_curvature(spec, tp).h_norm);
  });

  // Minimality and constant mean curvature.
  if (space == SpaceKind::S3) {
    add("torus.clifford_minimal", kMinimalTolerance, [base](SampleStream& rng, std::size_t i) {
      const ModelSpec spec = sample_spec(base, rng, i);
      const TorusPoint tp{std::numbers::pi / 4, rng.uniform(-std::numbers::pi, std::numbers::pi),
                          rng.uniform(-std::numbers::pi, std::numbers::pi)};
      const auto geo = mean_curvature(spec, tp);
      return geo.minimal ? geo.h_norm : std::max(geo.h_norm, 1.0);
    });
  } else {
    add("torus.sigma3_lower_bound", 0.0, [base](SampleStream& rng, std::size_t) {
      ModelSpec spec = base;
      const double mu = rng.uniform(0.5, 2.0);
      spec.params = {rng.uniform(0.5, 2.0), mu, mu};
      const TorusPoint tp{rng.uniform(0.05, 3.0), rng.uniform(-std::numbers::pi, std::numbers::pi),
                          rng.uniform(-std::numbers::pi, std::numbers::pi)};
      return mean_curvature(spec, tp).h_norm > 1.0 / mu ? 0.0 : 1.0;
    });
  }

  auto cmc_spec = [base](SampleStream& rng) {
    ModelSpec spec = base;
    const double mu = rng.uniform(0.5, 2.0);
    spec.params = {rng.uniform(0.5, 2.0), mu, mu};
    return spec;
  };
  // Target for case i: C = 0 first on S^3, otherwise inside the solvable range.
  auto cmc_target = [space](SampleStream& rng, std::size_t i, double mu) {
    if (space == SpaceKind::S3) return i == 0 ? 0.0 : rng.uniform(0.0, 5.0);
    return 1.0 / mu + rng.uniform(1e-3, 5.0);
  };
  add("cmc.round_trip", kCmcResidualTolerance, [=](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = cmc_spec(rng);
    const double target = cmc_target(rng, i, spec.params.mu);
    const auto sol = cmc_solve(spec, target);
    const std::size_t expected = space == SpaceKind::Sigma3 ? 1 : (target > 0.0 ? 2 : 1);
    if (sol.thetas.size() != expected) return 1.0;
    double m = 0.0;
    for (double theta : sol.thetas) {
      const TorusPoint tp{theta, rng.uniform(-std::numbers::pi, std::numbers::pi),
                          rng.uniform(-std::numbers::pi, std::numbers::pi)};
      m = std::max(m, rel(mean_curvature(spec, tp).h_norm, target));
    }
    return m;
  });
  add("cmc.bisection_agrees", 1e-9, [=](SampleStream& rng, std::size_t i) {
    const ModelSpec spec = cmc_spec(rng);
    const double target = cmc_target(rng, i, spec.params.mu);
    const auto a = cmc_solve(spec, target, CmcMethod::ClosedForm);
    const auto b = cmc_solve(spec, target, CmcMethod::Bisection);
    if (a.thetas.size() != b.thetas.size()) return 1.0;
    double m = 0.0;
    for (std::size_t k = 0; k < a.thetas.size(); ++k) m = std::max(m, std::abs(a.thetas[k] - b.thetas[k]));
    return m;
  });
  if (space == SpaceKind::Sigma3) {
    add("cmc.no_solution_below_bound", 0.0, [=](SampleStream& rng, std::size_t) {
      const ModelSpec spec = cmc_spec(rng);
      const double target = rng.uniform(0.0, 1.0 / spec.params.mu);
      try {
        cmc_solve(spec, target);
      } catch (const GeometryError& e) {
        return e.code() == ErrorCode::NoSolution ? 0.0 : 1.0;
      }
      return 1.0;
    });
  }
  return out;
}

}  // namespace detail

/// Runs every cross-check for each spec. Checks are independent and may be
/// spread over `threads` workers; records land at fixed positions, so the
/// report does not depend on scheduling.
inline VerificationReport run_suite(const std::vector<ModelSpec>& specs, const FdConfig& cfg,
                                    unsigned threads = 1) {
  cfg.validate();
  std::vector<detail::Check> checks;
  for (const auto& spec : specs) {
    auto more = detail::checks_for(spec, cfg.samples, cfg);
    checks.insert(checks.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }

  VerificationReport report;
  report.checks.resize(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < checks.size(); k = next++) {
      report.checks[k] = detail::run_check(checks[k], cfg.seed);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace berger
