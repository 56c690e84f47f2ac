#pragma once
// Deterministic random streams. A splitmix64 sequencer derives independent
// substream seeds, mt19937_64 supplies bits (its output is fixed by the
// standard), and the uniform / Gaussian mappings are spelled out here because
// std::normal_distribution is not reproducible across library vendors.

#include <cmath>
#include <cstdint>
#include <random>

#include "tikhcond/core.hpp"

namespace tikhcond {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for logical substream `stream` of a master seed; one mixing round
// decorrelates small consecutive stream ids.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  return splitmix64(s);
}

class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  // (0, 1]: never zero, so log() below is safe.
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // (0, 1): strictly interior.
  double uniform_open() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // (-1, 1): strictly interior.
  double uniform_sym() { return 2.0 * uniform_open() - 1.0; }

  // Box-Muller with the usual cached-pair convention.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * kPi * u2;
    cached_ = rad * std::sin(ang);
    have_cached_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Column-major fills so the draw order is part of the contract.
inline Vec gaussian_vec(GaussianStream& g, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = g.gaussian();
  return v;
}

inline Mat gaussian_mat(GaussianStream& g, Index m, Index n) {
  Mat A(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) A(i, j) = g.gaussian();
  return A;
}

inline Vec uniform_sym_vec(GaussianStream& g, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = g.uniform_sym();
  return v;
}

}  // namespace tikhcond
