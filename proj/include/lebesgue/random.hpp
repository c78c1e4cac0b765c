#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "lebesgue/measure.hpp"
#include "lebesgue/mp.hpp"
#include "lebesgue/product.hpp"
#include "lebesgue/simplefn.hpp"

namespace lebesgue::random {

/// Seeded source of random kernel objects for property suites.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  bool chance(double p);

  /// num / den with num in [0, max_num], den in [1, max_den].
  Rational rational(long max_num = 10, long max_den = 10);
  Rational positive_rational(long max_num = 10, long max_den = 10);

  Carrier carrier(std::size_t size, const std::string& prefix);
  Subset subset(const Carrier& c);
  /// Random union of atoms.
  Subset measurable_set(const SigmaAlgebra& sigma);
  SetCollection generators(const Carrier& c, std::size_t max_count);

  /// Finite weights; roughly one atom in five weighs zero.
  AtomicMeasure finite_measure(const SigmaAlgebra& sigma, long max_num = 10, long max_den = 10);

  /// Atom-constant nonnegative function, optionally with +inf values.
  PointwiseFn measurable_fn(const SigmaAlgebra& sigma, bool allow_inf);
  /// Canonical simple function with at least `min_values` values (fewer
  /// only if the sigma-algebra has fewer atoms).
  SimpleFn simple_fn(const SigmaAlgebra& sigma, std::size_t min_values);

  /// Expression of depth at most `max_depth` whose indicators are measurable
  /// in `sigma`; suprema have at most `max_prefix` terms.
  MpExpr expr(const SigmaAlgebra& sigma, std::size_t max_depth, std::size_t max_prefix = 4);
  /// Nondecreasing sequence whose terms have depth at most `term_depth`.
  MpSeq seq(const SigmaAlgebra& sigma, std::size_t term_depth, std::size_t max_prefix = 4);

  /// Product of two random factors with sides in [1, max_side].
  ProductSpace product_space(std::size_t max_side);

  PointMap point_map(const Carrier& domain, const Carrier& codomain);

 private:
  std::mt19937_64 rng_;
};

}  // namespace lebesgue::random
