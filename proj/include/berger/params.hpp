#pragma once

#include <array>
#include <cmath>
#include <string>

#include "berger/error.hpp"

namespace berger {

/// Weights of the generalised Berger metric on the three frame directions.
struct BergerParams {
  double lambda = 1.0;
  double mu = 1.0;
  double nu = 1.0;

  void validate() const {
    if (!(lambda > 0.0 && mu > 0.0 && nu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu) ||
        !std::isfinite(nu)) {
      throw GeometryError(ErrorCode::DomainError, "Berger parameters must be finite and positive");
    }
  }

  constexpr bool operator==(const BergerParams&) const = default;
};

/// Signs applied to the lambda^2, mu^2, nu^2 terms; each entry is +1 or -1.
class Signature {
 public:
  constexpr Signature() = default;
  Signature(int e1, int e2, int e3) : eps_{e1, e2, e3} {
    for (int e : eps_) {
      if (e != 1 && e != -1) {
        throw GeometryError(ErrorCode::DomainError, "signature entries must be +1 or -1");
      }
    }
  }

  static Signature riemannian() { return {1, 1, 1}; }
  static Signature lorentzian() { return {-1, 1, 1}; }

  constexpr int operator[](std::size_t i) const { return eps_[i]; }

  /// True for the two signatures the closed-form tables cover.
  constexpr bool is_tabulated() const {
    return eps_[1] == 1 && eps_[2] == 1;
  }
  constexpr bool is_riemannian() const { return eps_[0] == 1 && eps_[1] == 1 && eps_[2] == 1; }

  /// Same signature with the sign on the first direction flipped.
  Signature flip_first() const { return {-eps_[0], eps_[1], eps_[2]}; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) s += ',';
      s += eps_[i] > 0 ? '+' : '-';
    }
    return s;
  }

  constexpr bool operator==(const Signature&) const = default;

 private:
  std::array<int, 3> eps_{1, 1, 1};
};

}  // namespace berger
