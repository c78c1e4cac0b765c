#include "lebesgue/selftest.hpp"

#include <functional>

#include "lebesgue/product.hpp"
#include "lebesgue/random.hpp"

namespace lebesgue {

namespace {

using CaseFn = std::function<std::optional<std::string>(random::Generator&)>;

SuiteResult run_suite(const std::string& name, const SelftestOptions& opt, std::uint64_t salt, const CaseFn& body) {
  SuiteResult result{name, 0, 0, std::nullopt};
  random::Generator gen(opt.seed * 0x9e3779b97f4a7c15ULL + salt);
  for (std::size_t i = 0; i < opt.cases; ++i) {
    ++result.cases;
    std::optional<std::string> failure;
    try {
      failure = body(gen);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      ++result.failures;
      if (!result.counterexample) result.counterexample = "case " + std::to_string(i) + ": " + *failure;
    }
  }
  return result;
}

SigmaAlgebra random_sigma(random::Generator& g, std::size_t max_points) {
  const Carrier c = g.carrier(g.uniform(1, max_points), "x");
  return generate_sigma(g.generators(c, 4));
}

std::optional<std::string> tonelli_case(random::Generator& g, const SelftestOptions& opt) {
  const ProductSpace ps = g.product_space(opt.size);
  const AtomicMeasure m1 = g.finite_measure(ps.sigma1());
  const AtomicMeasure m2 = g.finite_measure(ps.sigma2());
  const MpExpr e = g.expr(ps.sigma(), g.uniform(0, opt.depth));
  const TonelliReport r = tonelli(m1, SigmaFiniteWitness::whole(ps.x1()), m2, SigmaFiniteWitness::whole(ps.x2()), e, ps);
  if (r.verdict == Verdict::Fail || !r.swap_audit.passed()) {
    return "e = " + e.str() + ": double " + r.double_integral.str() + ", iterated_12 " + r.iterated_12.str() +
           ", iterated_21 " + r.iterated_21.str();
  }
  const XReal oracle = integrate_oracle(prod_measure(m1, m2, ps), pointwise(e));
  if (!(oracle == r.double_integral)) {
    return "e = " + e.str() + ": fold " + r.double_integral.str() + " vs atom sum " + oracle.str();
  }
  return std::nullopt;
}

std::optional<std::string> box_case(random::Generator& g, const SelftestOptions& opt) {
  const ProductSpace ps = g.product_space(opt.size);
  const AtomicMeasure m1 = g.finite_measure(ps.sigma1());
  const AtomicMeasure m2 = g.finite_measure(ps.sigma2());
  const AuditReport r = box_property_audit(prod_measure(m1, m2, ps), m1, m2, ps);
  if (!r.passed()) return "box " + r.checks.front().witness.value_or("?");
  return std::nullopt;
}

std::optional<std::string> change_of_measure_case(random::Generator& g, const SelftestOptions& opt) {
  const Carrier y = g.carrier(g.uniform(1, 6), "y");
  const SigmaAlgebra sigma_y = generate_sigma(g.generators(y, 3));
  const Carrier x = g.carrier(g.uniform(1, 6), "x");
  const PointMap h = g.point_map(x, y);
  // Pull back the atoms of sigma_y so that h is measurable, then refine.
  SetCollection gen_x = g.generators(x, 2);
  for (const Subset& atom : sigma_y.atoms()) gen_x.insert(h.preimage(atom));
  const AtomicMeasure m = g.finite_measure(generate_sigma(gen_x));
  const MpExpr e = g.expr(sigma_y, g.uniform(0, opt.depth));
  const AuditReport r = change_of_measure_check(h, m, sigma_y, e);
  if (!r.passed()) return "g = " + e.str();
  return std::nullopt;
}

std::optional<std::string> beppo_levi_case(random::Generator& g, const SelftestOptions& opt) {
  const SigmaAlgebra sigma = random_sigma(g, opt.size + 2);
  const AtomicMeasure m = g.finite_measure(sigma);
  const MpSeq s = g.seq(sigma, g.uniform(0, opt.depth > 0 ? opt.depth - 1 : 0));
  const MpExpr e = MpExpr::sup(s);
  std::vector<XReal> term_integrals;
  for (const MpExpr& t : s.terms()) term_integrals.push_back(integrate(m, t));
  const XReal lhs = integrate(m, e);
  const XReal sup = sup_of_prefix(term_integrals, s);
  const XReal oracle = integrate_oracle(m, pointwise(e));
  if (!(lhs == sup) || !(sup == oracle)) {
    return "sup " + e.str() + ": " + lhs.str() + ", " + sup.str() + ", " + oracle.str();
  }
  return std::nullopt;
}

std::optional<std::string> mp_correct_case(random::Generator& g, const SelftestOptions& opt) {
  const SigmaAlgebra sigma = random_sigma(g, opt.size + 2);
  const PointwiseFn f = g.measurable_fn(sigma, true);
  if (!(pointwise(from_pointwise(f, sigma)) == f)) return "from_pointwise roundtrip " + f.str();
  const MpExpr e = g.expr(sigma, g.uniform(0, opt.depth));
  if (!mplus_check(pointwise(e), sigma)) return "mplus_check rejects " + e.str();
  return std::nullopt;
}

std::optional<std::string> sf_aux_cons_case(random::Generator& g, const SelftestOptions& opt) {
  SigmaAlgebra sigma = random_sigma(g, opt.size + 2);
  if (sigma.atom_count() < 2) sigma = SigmaAlgebra::discrete(g.carrier(g.uniform(2, opt.size + 2), "x"));
  const SimpleFn f = g.simple_fn(sigma, 2);
  const ConsReduction r = sf_cons_reduce(f);
  std::vector<Rational> expected{f.values()[0]};
  expected.insert(expected.end(), f.values().begin() + 2, f.values().end());
  if (r.g.values() != expected) return "value list of g";
  for (std::size_t x = 0; x < sigma.carrier().size(); ++x) {
    if (r.g(x) > f(x)) return "g > f at " + sigma.carrier().label(x);
    const Rational rebuilt = r.g(x) + (r.d.contains(x) ? r.gap : Rational(0));
    if (rebuilt != f(x)) return "f != g + gap * indicator(D) at " + sigma.carrier().label(x);
  }
  return std::nullopt;
}

std::optional<std::string> adapted_seq_case(random::Generator& g, const SelftestOptions& opt) {
  const SigmaAlgebra sigma = random_sigma(g, opt.size + 2);
  const PointwiseFn f = g.measurable_fn(sigma, true);
  for (unsigned n = 0; n <= 8; ++n) {
    const SimpleFn phi = mk_adapted_seq(f, sigma, n);
    const SimpleFn next = mk_adapted_seq(f, sigma, n + 1);
    Rational eps(1);
    eps /= Rational(mpz_class(1) << n);
    for (std::size_t x = 0; x < f.values.size(); ++x) {
      if (phi(x) > next(x)) return "phi_n > phi_n+1 for " + f.str();
      if (XReal(next(x)) > f(x)) return "phi_n+1 > f for " + f.str();
      if (phi(x) > Rational(n)) return "phi_n > n for " + f.str();
      if (f(x) <= XReal(Rational(n)) && !(f(x).value() - phi(x) < eps)) return "gap >= 2^-n for " + f.str();
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  std::optional<mutation::ScopedZeroTimesInfinity> mutant;
  if (options.mutant) {
    if (*options.mutant != "zero-times-inf") {
      throw KernelError(ErrorCode::InvalidArgument, "unknown mutant '" + *options.mutant + "'");
    }
    mutant.emplace(mutation::ZeroTimesInfinity::Infinity);
  }
  auto bind = [&](auto fn) { return [&options, fn](random::Generator& g) { return fn(g, options); }; };
  std::vector<SuiteResult> results;
  results.push_back(run_suite("tonelli", options, 1, bind(tonelli_case)));
  results.push_back(run_suite("box", options, 2, bind(box_case)));
  results.push_back(run_suite("change_of_measure", options, 3, bind(change_of_measure_case)));
  results.push_back(run_suite("beppo_levi", options, 4, bind(beppo_levi_case)));
  results.push_back(run_suite("mp_correct", options, 5, bind(mp_correct_case)));
  results.push_back(run_suite("sf_aux_cons", options, 6, bind(sf_aux_cons_case)));
  results.push_back(run_suite("adapted_seq", options, 7, bind(adapted_seq_case)));
  return results;
}

}  // namespace lebesgue
