#include "lebesgue/random.hpp"

#include <algorithm>

namespace lebesgue::random {

std::size_t Generator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational Generator::rational(long max_num, long max_den) {
  const long num = static_cast<long>(uniform(0, static_cast<std::size_t>(max_num)));
  const long den = static_cast<long>(uniform(1, static_cast<std::size_t>(max_den)));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Generator::positive_rational(long max_num, long max_den) {
  const long num = static_cast<long>(uniform(1, static_cast<std::size_t>(max_num)));
  const long den = static_cast<long>(uniform(1, static_cast<std::size_t>(max_den)));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Carrier Generator::carrier(std::size_t size, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) labels.push_back(prefix + std::to_string(i));
  return Carrier(std::move(labels));
}

Subset Generator::subset(const Carrier& c) {
  return Subset(c, std::uniform_int_distribution<Bits>(0, c.full_bits())(rng_));
}

Subset Generator::measurable_set(const SigmaAlgebra& sigma) {
  const Bits all = (Bits{1} << sigma.atom_count()) - 1;
  return sigma.union_of_atoms(std::uniform_int_distribution<Bits>(0, all)(rng_));
}

SetCollection Generator::generators(const Carrier& c, std::size_t max_count) {
  SetCollection gen(c);
  const std::size_t n = uniform(0, max_count);
  for (std::size_t i = 0; i < n; ++i) gen.insert(subset(c));
  return gen;
}

AtomicMeasure Generator::finite_measure(const SigmaAlgebra& sigma, long max_num, long max_den) {
  std::vector<XReal> w;
  for (std::size_t k = 0; k < sigma.atom_count(); ++k) {
    w.emplace_back(chance(0.2) ? Rational(0) : rational(max_num, max_den));
  }
  return AtomicMeasure(sigma, std::move(w));
}

PointwiseFn Generator::measurable_fn(const SigmaAlgebra& sigma, bool allow_inf) {
  std::vector<XReal> v(sigma.carrier().size());
  for (const Subset& atom : sigma.atoms()) {
    XReal value = allow_inf && chance(0.25) ? XReal::pos_inf() : XReal(rational());
    for (std::size_t x : atom.points()) v[x] = value;
  }
  return PointwiseFn(sigma.carrier(), std::move(v));
}

SimpleFn Generator::simple_fn(const SigmaAlgebra& sigma, std::size_t min_values) {
  const std::size_t atoms = sigma.atom_count();
  const std::size_t want = std::min(atoms, std::max<std::size_t>(min_values, uniform(1, atoms)));
  // Distinct values on the first `want` atoms, then reuse values at random.
  std::vector<Rational> pool;
  while (pool.size() < want) {
    Rational q = rational(20, 6);
    if (std::find(pool.begin(), pool.end(), q) == pool.end()) pool.push_back(q);
  }
  std::vector<std::size_t> order(atoms);
  for (std::size_t k = 0; k < atoms; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng_);
  std::vector<Rational> f(sigma.carrier().size());
  for (std::size_t i = 0; i < atoms; ++i) {
    const Rational& v = i < want ? pool[i] : pool[uniform(0, want - 1)];
    for (std::size_t x : sigma.atoms()[order[i]].points()) f[x] = v;
  }
  return canonicalize(f, sigma);
}

MpSeq Generator::seq(const SigmaAlgebra& sigma, std::size_t term_depth, std::size_t max_prefix) {
  const std::size_t p = uniform(1, std::max<std::size_t>(1, max_prefix));
  if (term_depth == 0) {
    // Nested indicators: A_0 within A_1 within ...
    std::vector<MpExpr> terms;
    Subset current = measurable_set(sigma) & measurable_set(sigma);
    const std::size_t k = uniform(0, p - 1);
    for (std::size_t i = 0; i < p; ++i) {
      if (i > 0 && i <= k) current = current | measurable_set(sigma);
      terms.push_back(MpExpr::charac(current));
    }
    return MpSeq::stabilized(std::move(terms), k);
  }
  // Terms base + c_i * inc with nondecreasing coefficients c_i.
  const bool with_base = term_depth >= 2;
  const std::size_t inc_depth = with_base ? term_depth - 2 : 0;
  std::optional<MpExpr> base;
  if (with_base) base = expr(sigma, term_depth - 1, max_prefix);
  const MpExpr inc = expr(sigma, inc_depth, max_prefix);
  const bool diverging = p >= 2 && chance(0.3);
  const std::size_t k = diverging ? p - 1 : uniform(0, p - 1);
  std::vector<Rational> coef;
  Rational c = chance(0.3) ? Rational(0) : rational(3, 2);
  for (std::size_t i = 0; i < p; ++i) {
    if (i > 0 && i <= k) c += positive_rational(3, 2);
    coef.push_back(c);
  }
  std::vector<MpExpr> terms;
  for (const Rational& ci : coef) {
    MpExpr scaled = MpExpr::scal(ci, inc);
    terms.push_back(base ? MpExpr::add(*base, scaled) : scaled);
  }
  if (diverging) {
    try {
      return MpSeq::diverging(terms);
    } catch (const KernelError&) {
      // The increment is infinite somewhere the sequence still grows.
    }
  }
  // Past k the coefficients are constant, so terms k.. agree pointwise.
  return MpSeq::stabilized(std::move(terms), std::min(k, p - 1));
}

MpExpr Generator::expr(const SigmaAlgebra& sigma, std::size_t max_depth, std::size_t max_prefix) {
  if (max_depth == 0) return MpExpr::charac(measurable_set(sigma));
  switch (uniform(0, 4)) {
    case 0:
      return MpExpr::charac(measurable_set(sigma));
    case 1:
      return MpExpr::scal(chance(0.15) ? Rational(0) : rational(5, 3), expr(sigma, max_depth - 1, max_prefix));
    case 2:
    case 3:
      return MpExpr::add(expr(sigma, max_depth - 1, max_prefix), expr(sigma, max_depth - 1, max_prefix));
    default:
      return MpExpr::sup(seq(sigma, uniform(0, max_depth - 1), max_prefix));
  }
}

ProductSpace Generator::product_space(std::size_t max_side) {
  const Carrier x1 = carrier(uniform(1, max_side), "a");
  const Carrier x2 = carrier(uniform(1, max_side), "u");
  return ProductSpace(generators(x1, 3), generators(x2, 3));
}

PointMap Generator::point_map(const Carrier& domain, const Carrier& codomain) {
  PointMap h{domain, codomain, {}};
  for (std::size_t i = 0; i < domain.size(); ++i) h.image.push_back(uniform(0, codomain.size() - 1));
  return h;
}

}  // namespace lebesgue::random
