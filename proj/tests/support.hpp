#pragma once

#include <random>

#include "holo/qmath.hpp"

namespace holo::testing {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(20240601ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Entries uniform in [-1, 1].
inline HermitianMatrix random_hermitian(std::mt19937_64& g, std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = uniform(g, -1.0, 1.0);
    for (std::size_t k = i + 1; k < dim; ++k) {
      m(i, k) = Complex(uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0));
      m(k, i) = std::conj(m(i, k));
    }
  }
  return HermitianMatrix(m);
}

inline BlochAngles random_input(std::mt19937_64& g) {
  return BlochAngles{std::acos(uniform(g, -1.0, 1.0)), uniform(g, 0.0, kTwoPi)};
}

inline bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace holo::testing
