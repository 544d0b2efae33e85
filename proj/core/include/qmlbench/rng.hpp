#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qmlbench {

// One master seed per experiment; sub-streams come from labelled derivation so
// adding a consumer never shifts another consumer's numbers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), eng_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }
  Rng derive(std::string_view label) const;
  Rng derive(std::uint64_t index) const;

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  std::mt19937_64& engine() { return eng_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace qmlbench
