#include "lebesgue/simplefn.hpp"

#include <algorithm>
#include <map>

namespace lebesgue {

SimpleFn::SimpleFn(SigmaAlgebra sigma, std::vector<Rational> values, std::vector<Subset> preimages)
    : sigma_(std::move(sigma)),
      values_(std::move(values)),
      preimages_(std::move(preimages)),
      level_of_(sigma_.carrier().size(), 0) {
  if (values_.empty() || values_.size() != preimages_.size()) {
    throw KernelError(ErrorCode::InvalidArgument, "simple function needs one nonempty preimage per value");
  }
  for (auto& v : values_) v.canonicalize();
  if (sgn(values_.front()) < 0) throw KernelError(ErrorCode::NegativeValue, values_.front().get_str());
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) {
      throw KernelError(ErrorCode::InvalidArgument, "simple function values must be strictly increasing");
    }
  }
  Bits covered = 0;
  for (std::size_t i = 0; i < preimages_.size(); ++i) {
    const Subset& p = preimages_[i];
    require_same_carrier(sigma_.carrier(), p.carrier(), "simple function preimage");
    if (p.is_empty()) throw KernelError(ErrorCode::InvalidArgument, "empty preimage of " + values_[i].get_str());
    if ((covered & p.bits()) != 0) throw KernelError(ErrorCode::InvalidArgument, "overlapping preimages");
    if (!sigma_.contains(p)) throw KernelError(ErrorCode::NotMeasurable, "preimage " + p.str());
    covered |= p.bits();
    for (std::size_t x : p.points()) level_of_[x] = i;
  }
  if (covered != sigma_.carrier().full_bits()) {
    throw KernelError(ErrorCode::InvalidArgument, "preimages do not cover the carrier");
  }
}

const Rational& SimpleFn::operator()(std::size_t x) const { return values_[level_of_.at(x)]; }

std::vector<Rational> SimpleFn::evaluate() const {
  std::vector<Rational> out;
  out.reserve(level_of_.size());
  for (std::size_t x = 0; x < level_of_.size(); ++x) out.push_back((*this)(x));
  return out;
}

PointwiseFn SimpleFn::to_pointwise() const {
  std::vector<XReal> v;
  for (std::size_t x = 0; x < level_of_.size(); ++x) v.emplace_back((*this)(x));
  return PointwiseFn(carrier(), std::move(v));
}

SimpleFn canonicalize(const std::vector<Rational>& f, const SigmaAlgebra& sigma) {
  const Carrier& c = sigma.carrier();
  if (f.size() != c.size()) throw KernelError(ErrorCode::InvalidArgument, "function length differs from carrier");
  std::map<Rational, Bits> levels;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (sgn(f[x]) < 0) throw KernelError(ErrorCode::NegativeValue, f[x].get_str() + " at " + c.label(x));
    levels[f[x]] |= Bits{1} << x;
  }
  std::vector<Rational> values;
  std::vector<Subset> preimages;
  for (const auto& [v, bits] : levels) {
    Subset level(c, bits);
    if (!sigma.contains(level)) {
      throw KernelError(ErrorCode::NonMeasurableLevelSet, "level set of " + v.get_str() + " is " + level.str());
    }
    values.push_back(v);
    preimages.push_back(level);
  }
  return SimpleFn(sigma, std::move(values), std::move(preimages));
}

ConsReduction sf_cons_reduce(const SimpleFn& f) {
  const auto& v = f.values();
  const auto& p = f.preimages();
  if (v.size() < 2) throw KernelError(ErrorCode::TooFewValues, "sf_cons_reduce needs at least two values");

  std::vector<Rational> g_values{v[0]};
  std::vector<Subset> g_preimages{p[0] | p[1]};
  for (std::size_t i = 2; i < v.size(); ++i) {
    g_values.push_back(v[i]);
    g_preimages.push_back(p[i]);
  }
  Rational gap = v[1] - v[0];
  return {SimpleFn(f.sigma(), std::move(g_values), std::move(g_preimages)), gap, p[1]};
}

XReal lint_sf(const AtomicMeasure& m, const SimpleFn& f) {
  if (!(m.sigma() == f.sigma())) {
    throw KernelError(ErrorCode::CarrierMismatch, "simple function and measure use different sigma-algebras");
  }
  XReal sum(0);
  for (std::size_t i = 0; i < f.values().size(); ++i) sum = sum + XReal(f.values()[i]) * measure_of(m, f.preimages()[i]);
  return sum;
}

}  // namespace lebesgue
