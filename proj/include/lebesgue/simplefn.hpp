#pragma once

#include <vector>

#include "lebesgue/measure.hpp"
#include "lebesgue/pointwise.hpp"

namespace lebesgue {

/// Canonical nonnegative simple function: f = sum of v * indicator(f^-1(v))
/// over a strictly increasing list of values, with the level sets stored
/// alongside.
class SimpleFn {
 public:
  /// Validates every canonical-form invariant; throws InvalidArgument,
  /// NegativeValue or NotMeasurable.
  SimpleFn(SigmaAlgebra sigma, std::vector<Rational> values, std::vector<Subset> preimages);

  const SigmaAlgebra& sigma() const { return sigma_; }
  const Carrier& carrier() const { return sigma_.carrier(); }
  const std::vector<Rational>& values() const { return values_; }
  const std::vector<Subset>& preimages() const { return preimages_; }

  const Rational& operator()(std::size_t x) const;
  std::vector<Rational> evaluate() const;
  PointwiseFn to_pointwise() const;

 private:
  SigmaAlgebra sigma_;
  std::vector<Rational> values_;
  std::vector<Subset> preimages_;
  std::vector<std::size_t> level_of_;
};

/// Throws NegativeValue, or NonMeasurableLevelSet naming the offending value.
SimpleFn canonicalize(const std::vector<Rational>& f, const SigmaAlgebra& sigma);

struct ConsReduction {
  SimpleFn g;
  Rational gap;
  Subset d;
};

/// For f with values v1 < v2 < ...: moves the level set of v2 down to v1.
/// The result satisfies f = g + gap * indicator(d) with gap = v2 - v1 and
/// d = f^-1(v2). Throws TooFewValues for a one-value function.
ConsReduction sf_cons_reduce(const SimpleFn& f);

/// Sum of v * m(f^-1(v)).
XReal lint_sf(const AtomicMeasure& m, const SimpleFn& f);

}  // namespace lebesgue
