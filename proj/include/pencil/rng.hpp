#pragma once

#include <pencil/types.hpp>

#include <cstdint>
#include <string_view>
#include <utility>

namespace pencil {

/// Splittable counter-based random stream. A stream is identified by a 64-bit
/// key derived from (seed, path of branch labels); identical (seed, path)
/// reproduces identical draws, and child streams with distinct labels are
/// independent for practical purposes. Draw order within a stream is the
/// counter sequence, so a stream passed by value leaves the caller's copy
/// untouched.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Derive the child stream for branch `label` ("L", "R", "line-v-7", ...).
  RngStream child(std::string_view label) const;

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_uniform();

  /// Two independent standard normals (Box-Muller, fully deterministic).
  std::pair<double, double> next_gaussian_pair();

  /// One draw from the standard complex normal N_C(0, 1): E|g|^2 = 1.
  Complex next_standard_complex();

  std::uint64_t key() const { return key_; }

 private:
  RngStream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pencil
