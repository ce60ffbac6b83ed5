// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berger/cli.hpp"

using namespace berger;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<ModelSpec>& cases() {
  static const std::vector<ModelSpec> all = standard_cases();
  return all;
}

struct Sampler {
  std::mt19937_64 gen;
  explicit Sampler(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  BergerParams params() { return {uniform(0.5, 2), uniform(0.5, 2), uniform(0.5, 2)}; }
  double theta(SpaceKind s) { return s == SpaceKind::S3 ? uniform(0.2, pi / 2 - 0.2) : uniform(0.2, 1.5); }
  double angle() { return uniform(-pi, pi); }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Outcome ac1() {
  const ModelSpec round{SpaceKind::S3, {1, 1, 1}, Signature::riemannian()};
  double dev = 0;
  for (PlaneKind p : kAllPlanes) dev = std::max(dev, std::abs(sectional_curvature(round, p) - 1.0));
  return {dev <= 1e-12, fmt("max |K - 1| = %.3g (tol 1e-12)", dev)};
}

Outcome ac2() {
  const auto t0 = Clock::now();
  Sampler s(2);
  double dev = 0;
  for (const auto& base : cases()) {
    for (int i = 0; i < 1000; ++i) {
      ModelSpec spec = base;
      spec.params = s.params();
      dev = std::max(dev, max_abs_difference(koszul_connection(spec).gamma, closed_form_connection(spec).gamma));
    }
  }
  const double t = seconds_since(t0);
  return {dev <= 1e-12 && t < 1.0, fmt("max deviation %.3g (tol 1e-12), %.3f s (limit 1 s)", dev, t)};
}

Outcome ac3() {
  Sampler s(2);
  double dev = 0, typo_dev = 0;
  for (const auto& base : cases()) {
    for (int i = 0; i < 1000; ++i) {
      ModelSpec spec = base;
      spec.params = s.params();
      for (PlaneKind p : kAllPlanes) {
        const double koszul = curvature_numerator(spec, p);
        const double printed = printed_curvature_numerator(spec, p);
        if (printed_curvature_is_known_typo(spec, p)) {
          typo_dev = std::max(typo_dev, std::abs(printed - koszul));
          const auto [l, m, n] = spec.params;
          const double L = l * l, M = m * m, N = n * n;
          // Minus the Lorentzian S^3 K(Y,Z) numerator.
          const double corrected = -((L + M + N) * (L + M + N) + 2 * (L * L - M * M - N * N)) / (L * M * N);
          dev = std::max(dev, std::abs(corrected - koszul));
        } else {
          dev = std::max(dev, std::abs(printed - koszul));
        }
      }
    }
  }
  const bool xfail_confirmed = typo_dev > 1e-6;
  return {dev <= 1e-12 && xfail_confirmed,
          fmt("max deviation %.3g (tol 1e-12); expected-fail printed Sigma3 Riemannian K(Y,Z) off by up to %.3g",
              dev, typo_dev)};
}

Outcome ac4() {
  const auto t0 = Clock::now();
  Sampler s(4);
  double boundary = 0;
  int disagreements = 0, compared = 0;
  for (const auto& base : cases()) {
    for (PlaneKind plane : kAllPlanes) {
      for (int hits = 0; hits < 100;) {
        double m = s.uniform(0.5, 2), n = s.uniform(0.5, 2);
        if (plane == PlaneKind::XY && m > n) std::swap(m, n);
        if (plane == PlaneKind::XZ && m < n) std::swap(m, n);
        ModelSpec spec = base;
        spec.params = {1, m, n};
        const auto cond = sign_condition(spec, plane);
        if (!cond.bound || *cond.bound <= 0) continue;
        spec.params.lambda = std::sqrt(*cond.bound);
        boundary = std::max(boundary, std::abs(curvature_numerator(spec, plane)));
        ++hits;
      }
      for (int i = 0; i < 1000; ++i) {
        ModelSpec spec = base;
        spec.params = s.params();
        const double k = curvature_numerator(spec, plane);
        if (std::abs(k) <= 1e-10) continue;
        const SignRegion r = sign_region_check(spec, plane);
        ++compared;
        if ((r == SignRegion::InRegion) != (k < 0) || r == SignRegion::OnBoundary) ++disagreements;
      }
    }
  }
  const double t = seconds_since(t0);
  return {boundary <= 1e-9 && disagreements == 0 && t < 2.0,
          fmt("boundary max |K| %.3g (tol 1e-9), %g sign disagreements, %.3f s (limit 2 s)", boundary,
              disagreements, t) +
              " over " + std::to_string(compared) + " interior samples"};
}

template <class F>
void for_torus_samples(std::uint64_t seed, int n, F f) {
  Sampler s(seed);
  for (SpaceKind space : {SpaceKind::S3, SpaceKind::Sigma3}) {
    for (Signature sig : {Signature::riemannian(), Signature::lorentzian()}) {
      for (int i = 0; i < n; ++i) {
        const ModelSpec spec{space, s.params(), sig};
        const TorusPoint tp{s.theta(space), s.angle(), s.angle()};
        f(spec, tp);
      }
    }
  }
}

Outcome ac5() {
  const auto t0 = Clock::now();
  double closed = 0, fd = 0;
  for_torus_samples(5, 500, [&](const ModelSpec& spec, const TorusPoint& tp) {
    const auto [m, n] = std::pair{spec.params.mu, spec.params.nu};
    const double sum = tp.alpha + tp.beta;
    const double D = m * m * std::sin(sum) * std::sin(sum) + n * n * std::cos(sum) * std::cos(sum);
    const double t2 = spec.space == SpaceKind::S3 ? std::tan(2 * tp.theta) : std::tanh(2 * tp.theta);
    const double expected = m * n / (std::abs(t2) * std::pow(D, 1.5));
    closed = std::max(closed, rel(mean_curvature(spec, tp).h_norm, expected));
    fd = std::max(fd, rel(fd_surface(spec, tp).h_norm, expected));
  });
  const double t = seconds_since(t0);
  return {closed <= 1e-10 && fd <= 1e-6 && t < 5.0,
          fmt("pipeline %.3g (tol 1e-10), finite differences %.3g (tol 1e-6), %.3f s (limit 5 s)", closed, fd, t)};
}

Outcome ac6() {
  Sampler s(6);
  double minimal = 0, residual = 0;
  int wrong_counts = 0;
  for (Signature sig : {Signature::riemannian(), Signature::lorentzian()}) {
    for (int i = 0; i < 200; ++i) {
      const ModelSpec spec{SpaceKind::S3, s.params(), sig};
      minimal = std::max(minimal, mean_curvature(spec, {pi / 4, s.angle(), s.angle()}).h_norm);
    }
    for (SpaceKind space : {SpaceKind::S3, SpaceKind::Sigma3}) {
      for (int i = 0; i < 200; ++i) {
        const double mu = s.uniform(0.5, 2);
        const ModelSpec spec{space, {s.uniform(0.5, 2), mu, mu}, sig};
        const double c = i == 0 ? 0.0 : s.uniform(0.0, 4.0);
        const bool solvable = space == SpaceKind::S3 || c * mu > 1.0;
        const std::size_t want = space == SpaceKind::Sigma3 ? 1 : (c == 0 ? 1 : 2);
        try {
          const auto sol = cmc_solve(spec, c);
          if (!solvable || sol.thetas.size() != want) ++wrong_counts;
          for (double theta : sol.thetas)
            residual = std::max(residual, rel(mean_curvature(spec, {theta, s.angle(), s.angle()}).h_norm, c));
        } catch (const GeometryError& e) {
          if (solvable || e.code() != ErrorCode::NoSolution) ++wrong_counts;
        }
      }
    }
  }
  return {minimal <= 1e-12 && residual <= 1e-10 && wrong_counts == 0,
          fmt("Clifford max ||H|| %.3g (tol 1e-12), CMC residual %.3g (tol 1e-10), %g wrong solution counts",
              minimal, residual, wrong_counts)};
}

Outcome ac7() {
  double dev = 0;
  Sampler s(7);
  for (SpaceKind space : {SpaceKind::S3, SpaceKind::Sigma3}) {
    for (int i = 0; i < 500; ++i) {
      const BergerParams params = s.params();
      const TorusPoint tp{s.theta(space), s.angle(), s.angle()};
      const auto g = mean_curvature({space, params, Signature::riemannian()}, tp);
      const auto h = mean_curvature({space, params, Signature::lorentzian()}, tp);
      for (auto [a, b] : {std::pair{g.trace_b, h.trace_b}, std::pair{g.h, h.h}}) {
        dev = std::max({dev, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z), std::abs(a.n - b.n)});
      }
      dev = std::max(dev, std::abs(g.h_norm - h.h_norm));
    }
  }
  return {dev <= 1e-9, fmt("max deviation %.3g (tol 1e-9)", dev)};
}

Outcome ac8() {
  Sampler s(8);
  double torsion = 0, compat = 0;
  std::vector<Signature> sigs;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1}) sigs.push_back({a, b, c});
  for (SpaceKind space : {SpaceKind::S3, SpaceKind::Sigma3}) {
    for (const Signature& sig : sigs) {
      for (int i = 0; i < 200; ++i) {
        const ModelSpec spec{space, s.params(), sig};
        const auto sc = structure_constants(spec);
        const auto t = koszul_connection(sc, sig);
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t k = 0; k < 3; ++k) {
              torsion = std::max(torsion, std::abs(t.gamma[a][b][k] - t.gamma[b][a][k] - sc.c[a][b][k]));
              compat = std::max(compat, std::abs(sig[k] * t.gamma[a][b][k] + sig[b] * t.gamma[a][k][b]));
            }
      }
    }
  }
  return {torsion <= 1e-14 && compat <= 1e-14,
          fmt("torsion %.3g, metric compatibility %.3g (tol 1e-14)", torsion, compat)};
}

Outcome ac9() {
  auto run = [](const std::string& threads, double& secs, int& code) {
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    code = cli::run_cli({"verify", "--samples", "1000", "--seed", "42", "--threads", threads}, out, err);
    secs = seconds_since(t0);
    return out.str();
  };
  double t1 = 0, t2 = 0, t3 = 0;
  int c1 = 0, c2 = 0, c3 = 0;
  const std::string a = run("1", t1, c1), b = run("1", t2, c2), c = run("4", t3, c3);
  const bool same = a == b && a == c;
  const double worst = std::max({t1, t2, t3});
  return {same && worst < 10.0 && c1 == 0 && c2 == 0 && c3 == 0,
          fmt("slowest run %.3f s (limit 10 s), exit code %g, ", worst, c1) +
              (same ? "identical output across runs and thread counts" : "OUTPUT DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
