#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>

#include "berger/metric.hpp"

using namespace berger;
using cd = std::complex<double>;

namespace {

std::vector<ModelSpec> all_specs(BergerParams params) {
  std::vector<ModelSpec> out;
  for (SpaceKind space : {SpaceKind::S3, SpaceKind::Sigma3})
    for (Signature sig : {Signature{1, 1, 1}, Signature{-1, 1, 1}, Signature{1, -1, 1}, Signature{-1, -1, -1}})
      out.push_back({space, params, sig});
  return out;
}

AmbientPoint random_point(std::mt19937_64& gen, SpaceKind space) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> t(0.0, space == SpaceKind::S3 ? std::numbers::pi / 2 : 1.5);
  const double r = t(gen), a = angle(gen), b = angle(gen);
  const double c = space == SpaceKind::S3 ? std::cos(r) : std::cosh(r);
  const double s = space == SpaceKind::S3 ? std::sin(r) : std::sinh(r);
  return {c * std::cos(a), c * std::sin(a), s * std::cos(b), s * std::sin(b)};
}

// The metric straight from its definition, with complex arithmetic for the
// translation p^-1 A and the Euclidean pairing Re(z1 conj z2 + w1 conj w2).
double reference_ip(const AmbientPoint& p, const TangentVector& A, const TangentVector& B, const ModelSpec& spec) {
  const cd z(p[0], -p[1]), w(-p[2], -p[3]);  // p^-1 = (conj z, -w)
  auto pull = [&](const TangentVector& v) {
    const cd vz(v[0], v[1]), vw(v[2], v[3]);
    if (spec.space == SpaceKind::S3) return std::pair{z * vz - std::conj(w) * vw, std::conj(z) * vw + w * vz};
    return std::pair{z * vz + std::conj(w) * vw, w * vz + std::conj(z) * vw};
  };
  auto dot = [](std::pair<cd, cd> a, cd z2, cd w2) { return (a.first * std::conj(z2) + a.second * std::conj(w2)).real(); };
  const auto a = pull(A), b = pull(B);
  const cd i(0, 1);
  const auto& e = spec.signature;
  const double l = spec.params.lambda, m = spec.params.mu, n = spec.params.nu;
  return e[0] * l * l * dot(a, i, 0) * dot(b, i, 0) + e[1] * m * m * dot(a, 0, -1) * dot(b, 0, -1) +
         e[2] * n * n * dot(a, 0, i) * dot(b, 0, i) + dot(a, 1, 0) * dot(b, 1, 0);
}

}  // namespace

TEST(BergerIp, FrameVectorsAreOrthonormal) {
  std::mt19937_64 gen(11);
  for (const auto& spec : all_specs({0.8, 1.9, 0.55})) {
    for (int k = 0; k < 100; ++k) {
      const auto p = random_point(gen, spec.space);
      const auto f = frame_at(p, spec.params, spec.space);
      const TangentVector v[4] = {f.X, f.Y, f.Z, f.N};
      const int diag[4] = {spec.signature[0], spec.signature[1], spec.signature[2], 1};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) EXPECT_NEAR(berger_ip(p, v[a], v[b], spec), a == b ? diag[a] : 0, 1e-12);
    }
  }
}

TEST(BergerIp, WorkedExample) {
  // p.(0, i - 1) has projection 1 on (0,-1) and 1 on (0,i): mu^2 + nu^2.
  const ModelSpec spec{SpaceKind::S3, {1.0, 2.0, 3.0}, Signature::riemannian()};
  std::mt19937_64 gen(12);
  for (int k = 0; k < 10; ++k) {
    const auto p = random_point(gen, SpaceKind::S3);
    const auto v = translate(p, TangentVector{0, 0, -1, 1}, SpaceKind::S3);
    EXPECT_NEAR(berger_ip(p, v, v, spec), 13.0, 1e-12);
  }
}

TEST(BergerIp, MatchesDefinition) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-1, 1), par(0.5, 2.0);
  for (int k = 0; k < 200; ++k) {
    for (const auto& base : all_specs({1, 1, 1})) {
      ModelSpec spec = base;
      spec.params = {par(gen), par(gen), par(gen)};
      const auto p = random_point(gen, spec.space);
      const TangentVector a{u(gen), u(gen), u(gen), u(gen)}, b{u(gen), u(gen), u(gen), u(gen)};
      const double ref = reference_ip(p, a, b, spec);
      EXPECT_NEAR(berger_ip(p, a, b, spec), ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(BergerIp, SymmetricBilinear) {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& spec : all_specs({1.3, 0.7, 1.6})) {
    for (int k = 0; k < 50; ++k) {
      const auto p = random_point(gen, spec.space);
      const TangentVector a{u(gen), u(gen), u(gen), u(gen)}, b{u(gen), u(gen), u(gen), u(gen)},
          c{u(gen), u(gen), u(gen), u(gen)};
      const double s = u(gen);
      EXPECT_NEAR(berger_ip(p, a, b, spec), berger_ip(p, b, a, spec), 1e-12);
      EXPECT_NEAR(berger_ip(p, s * a + c, b, spec), s * berger_ip(p, a, b, spec) + berger_ip(p, c, b, spec), 1e-12);
    }
  }
}

TEST(BergerIp, LeftInvariant) {
  std::mt19937_64 gen(15);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& spec : all_specs({0.9, 1.4, 0.6})) {
    for (int k = 0; k < 100; ++k) {
      const auto p = random_point(gen, spec.space);
      const TangentVector v{0, u(gen), u(gen), u(gen)}, w{0, u(gen), u(gen), u(gen)};
      EXPECT_NEAR(berger_ip(p, translate(p, v, spec.space), translate(p, w, spec.space), spec),
                  berger_ip(kIdentity, v, w, spec), 1e-12);
    }
  }
}

TEST(BergerIp, RejectsOffManifoldBase) {
  const ModelSpec spec{};
  EXPECT_THROW(berger_ip(AmbientPoint{0.3, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, spec), GeometryError);
}

TEST(FrameComponents, RoundTrip) {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& spec : all_specs({1.7, 0.6, 1.2})) {
    const auto p = random_point(gen, spec.space);
    const TangentVector v{u(gen), u(gen), u(gen), u(gen)};
    const auto back = from_frame(p, frame_components(p, v, spec), spec);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(back[i], v[i], 1e-13);
  }
}

TEST(CausalCharacter, Examples) {
  const ModelSpec lorentz{SpaceKind::S3, {1.5, 0.8, 1.1}, Signature::lorentzian()};
  std::mt19937_64 gen(17);
  const auto p = random_point(gen, SpaceKind::S3);
  const auto f = frame_at(p, lorentz.params, lorentz.space);
  EXPECT_EQ(causal_character(p, f.X, lorentz), CausalClass::Timelike);
  EXPECT_EQ(causal_character(p, f.Y, lorentz), CausalClass::Spacelike);
  EXPECT_EQ(causal_character(p, f.X + f.Y, lorentz), CausalClass::Lightlike);
  EXPECT_EQ(causal_character(p, TangentVector{}, lorentz), CausalClass::Spacelike);

  const ModelSpec riem{SpaceKind::Sigma3, {1, 1, 1}, Signature::riemannian()};
  const auto q = random_point(gen, SpaceKind::Sigma3);
  EXPECT_EQ(causal_character(q, frame_at(q, riem.params, riem.space).X, riem), CausalClass::Spacelike);
}

TEST(CausalCharacter, ToleranceIsExplicit) {
  const ModelSpec lorentz{SpaceKind::S3, {}, Signature::lorentzian()};
  const auto f = frame_at(kIdentity, lorentz.params, lorentz.space);
  const TangentVector almost = f.X + 1.001 * f.Y;  // <v,v> = -1 + 1.002001
  EXPECT_EQ(causal_character(kIdentity, almost, lorentz), CausalClass::Spacelike);
  EXPECT_EQ(causal_character(kIdentity, almost, lorentz, 1e-2), CausalClass::Lightlike);
  EXPECT_STREQ(to_string(CausalClass::Lightlike), "lightlike");
}

TEST(Signature, Validation) {
  EXPECT_THROW(Signature(1, 0, 1), GeometryError);
  EXPECT_THROW(Signature(2, 1, 1), GeometryError);
  EXPECT_EQ(Signature::lorentzian().to_string(), "-,+,+");
  EXPECT_TRUE(Signature::lorentzian().is_tabulated());
  EXPECT_FALSE(Signature(1, -1, 1).is_tabulated());
  EXPECT_EQ(Signature::riemannian().flip_first(), Signature::lorentzian());
}

TEST(BergerParams, Validation) {
  EXPECT_NO_THROW((BergerParams{1, 2, 3}.validate()));
  EXPECT_THROW((BergerParams{0, 1, 1}.validate()), GeometryError);
  EXPECT_THROW((BergerParams{1, -1, 1}.validate()), GeometryError);
  EXPECT_THROW((BergerParams{1, 1, std::numeric_limits<double>::infinity()}.validate()), GeometryError);
  EXPECT_THROW((BergerParams{1, 1, std::nan("")}.validate()), GeometryError);
}
