#include "lebesgue/measure.hpp"

#include <bit>
#include <functional>
#include <random>

namespace lebesgue {

AtomicMeasure::AtomicMeasure(SigmaAlgebra sigma, std::vector<XReal> weights)
    : sigma_(std::move(sigma)), weights_(std::move(weights)) {
  if (weights_.size() != sigma_.atom_count()) {
    throw KernelError(ErrorCode::InvalidArgument, "expected " + std::to_string(sigma_.atom_count()) +
                                                      " atom weights, got " + std::to_string(weights_.size()));
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (!weights_[k].is_nonneg()) {
      throw KernelError(ErrorCode::NegativeValue, "weight " + weights_[k].str() + " on atom " + sigma_.atoms()[k].str());
    }
  }
}

AtomicMeasure AtomicMeasure::zero(const SigmaAlgebra& sigma) {
  return AtomicMeasure(sigma, std::vector<XReal>(sigma.atom_count(), XReal(0)));
}

AtomicMeasure AtomicMeasure::counting(const SigmaAlgebra& sigma) {
  std::vector<XReal> w;
  for (const auto& a : sigma.atoms()) w.emplace_back(static_cast<long>(a.count()));
  return AtomicMeasure(sigma, std::move(w));
}

MeasureTable::MeasureTable(SigmaAlgebra sigma) : sigma_(std::move(sigma)) {
  for (const auto& s : sigma_.members()) values_.emplace(s.bits(), XReal(0));
}

MeasureTable MeasureTable::from_measure(const AtomicMeasure& m) {
  MeasureTable t(m.sigma());
  for (auto& [bits, value] : t.values_) value = measure_of(m, Subset(m.carrier(), bits));
  return t;
}

void MeasureTable::set(const Subset& a, const XReal& value) {
  if (!sigma_.contains(a)) throw KernelError(ErrorCode::NotMeasurable, a.str());
  values_[a.bits()] = value;
}

const XReal& MeasureTable::at(const Subset& a) const {
  require_same_carrier(sigma_.carrier(), a.carrier(), "measure table lookup");
  auto it = values_.find(a.bits());
  if (it == values_.end()) throw KernelError(ErrorCode::NotMeasurable, a.str());
  return it->second;
}

PointMap PointMap::identity(const Carrier& c) {
  PointMap h{c, c, {}};
  for (std::size_t i = 0; i < c.size(); ++i) h.image.push_back(i);
  return h;
}

PointMap PointMap::constant(const Carrier& domain, const Carrier& codomain, std::size_t target) {
  if (target >= codomain.size()) throw KernelError(ErrorCode::InvalidArgument, "constant map target out of range");
  return PointMap{domain, codomain, std::vector<std::size_t>(domain.size(), target)};
}

PointMap PointMap::swap(const ProductCarrier& pc) {
  const ProductCarrier other = pc.swapped();
  PointMap h{pc.carrier(), other.carrier(), {}};
  for (std::size_t i = 0; i < pc.carrier().size(); ++i) {
    auto [i1, i2] = pc.split(i);
    h.image.push_back(other.index(i2, i1));
  }
  return h;
}

Subset PointMap::preimage(const Subset& b) const {
  require_same_carrier(codomain, b.carrier(), "preimage");
  Bits out = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (b.contains(image[i])) out |= Bits{1} << i;
  }
  return Subset(domain, out);
}

XReal measure_of(const AtomicMeasure& m, const Subset& a) {
  const Bits sel = m.sigma().atoms_in(a);
  Rational sum;
  for (Bits s = sel; s != 0; s &= s - 1) {
    const XReal& w = m.atom_weight(static_cast<std::size_t>(std::countr_zero(s)));
    if (!w.is_finite()) return w;
    sum += w.value();
  }
  return XReal(sum);
}

XReal total_mass(const AtomicMeasure& m) { return measure_of(m, Subset::full(m.carrier())); }

// ---------------------------------------------------------------------------

namespace {

std::string chain_str(const std::vector<Bits>& chain, const SigmaAlgebra& sigma) {
  std::string s = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) s += ",";
    s += sigma.union_of_atoms(chain[i]).str();
  }
  return s + "]";
}

// Calls visit(chain) on strictly increasing chains of atom selections.
void for_each_chain(std::size_t atoms, const MeasureAuditOptions& opt,
                    const std::function<bool(const std::vector<Bits>&)>& visit) {
  const Bits members = Bits{1} << atoms;
  const Bits full = members - 1;
  if (members <= opt.exhaustive_member_limit) {
    std::vector<Bits> chain;
    std::function<bool()> extend = [&]() {
      if (chain.size() >= 2 && !visit(chain)) return false;
      if (chain.size() == opt.max_chain_length) return true;
      const Bits last = chain.back();
      // Strict supersets of `last`: enumerate nonempty subsets of the complement.
      const Bits rest = full & ~last;
      for (Bits add = rest; add != 0; add = (add - 1) & rest) {
        chain.push_back(last | add);
        if (!extend()) return false;
        chain.pop_back();
      }
      return true;
    };
    for (Bits start = 0; start < members; ++start) {
      chain.assign(1, start);
      if (!extend()) return;
    }
    return;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Bits> any(0, full);
  std::uniform_int_distribution<std::size_t> len(2, std::max<std::size_t>(2, opt.max_chain_length));
  for (std::size_t n = 0; n < opt.random_chains; ++n) {
    std::vector<Bits> chain{any(rng) & any(rng)};
    const std::size_t target = len(rng);
    while (chain.size() < target && chain.back() != full) {
      Bits add = any(rng) & ~chain.back();
      if (add == 0) add = Bits{1} << std::countr_zero(~chain.back() & full);
      chain.push_back(chain.back() | add);
    }
    if (chain.size() >= 2 && !visit(chain)) return;
  }
}

}  // namespace

AuditReport audit_measure(const MeasureTable& t, const MeasureAuditOptions& options) {
  const SigmaAlgebra& sigma = t.sigma();
  const std::size_t k = sigma.atom_count();
  if (k > kMaxMaterializedAtoms) throw KernelError(ErrorCode::CapacityExceeded, "measure audit on too many atoms");
  const Bits n = Bits{1} << k;
  std::vector<XReal> value(static_cast<std::size_t>(n));
  for (Bits sel = 0; sel < n; ++sel) value[sel] = t.at(sigma.union_of_atoms(sel));
  auto name = [&](Bits sel) { return sigma.union_of_atoms(sel).str(); };

  AuditReport report;

  {
    std::optional<Bits> bad;
    for (Bits sel = 0; sel < n && !bad; ++sel) {
      if (!value[sel].is_nonneg()) bad = sel;
    }
    report.add("nonnegative", !bad, bad ? name(*bad) : "");
  }

  report.add("empty-zero", value[0].is_zero(), "{}");

  {
    std::optional<std::pair<Bits, Bits>> bad;
    auto check = [&](Bits a, Bits b) {
      XReal sum;
      try {
        sum = value[a] + value[b];
      } catch (const KernelError&) {
        bad = {a, b};
        return;
      }
      if (!(sum == value[a | b])) bad = {a, b};
    };
    if (k <= 10) {
      for (Bits a = 0; a < n && !bad; ++a) {
        const Bits rest = (n - 1) & ~a;
        for (Bits b = rest;; b = (b - 1) & rest) {
          check(a, b);
          if (bad || b == 0) break;
        }
      }
    } else {
      std::mt19937_64 rng(options.seed);
      std::uniform_int_distribution<Bits> any(0, n - 1);
      for (int i = 0; i < 20000 && !bad; ++i) {
        const Bits a = any(rng);
        check(a, any(rng) & ~a);
      }
    }
    report.add("finite-additivity", !bad,
               bad ? "(" + name(bad->first) + ", " + name(bad->second) + ")" : "");
  }

  {
    std::optional<std::vector<Bits>> bad;
    std::size_t chains = 0;
    for_each_chain(k, options, [&](const std::vector<Bits>& chain) {
      ++chains;
      std::vector<XReal> terms;
      for (Bits b : chain) terms.push_back(value[b]);
      const XReal sup = xr_sup(XRealSeq::stabilized(terms, terms.size() - 1));
      if (!(sup == value[chain.back()])) {
        bad = chain;
        return false;
      }
      return true;
    });
    report.add("continuity-from-below", !bad, bad ? chain_str(*bad, sigma) : "",
               std::to_string(chains) + " chains");
  }

  {
    std::optional<std::vector<Bits>> bad;
    std::size_t chains = 0;
    std::size_t skipped = 0;
    for_each_chain(k, options, [&](const std::vector<Bits>& increasing) {
      const std::vector<Bits> chain(increasing.rbegin(), increasing.rend());
      bool has_finite = false;
      XReal inf = value[chain.front()];
      for (Bits b : chain) {
        has_finite = has_finite || value[b].is_finite();
        inf = xr_min(inf, value[b]);
      }
      if (!has_finite) {
        ++skipped;
        return true;
      }
      ++chains;
      if (!(inf == value[chain.back()])) {
        bad = chain;
        return false;
      }
      return true;
    });
    report.add("continuity-from-above", !bad, bad ? chain_str(*bad, sigma) : "",
               std::to_string(chains) + " chains, " + std::to_string(skipped) + " not applicable");
  }

  return report;
}

AtomicMeasure restrict(const AtomicMeasure& m, const Subset& b) {
  const Bits inside = m.sigma().atoms_in(b);
  std::vector<XReal> w = m.weights();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (((inside >> k) & 1U) == 0) w[k] = XReal(0);
  }
  return AtomicMeasure(m.sigma(), std::move(w));
}

namespace {

void require_map_domain(const AtomicMeasure& m, const PointMap& h, const SigmaAlgebra& sigma_y) {
  require_same_carrier(m.carrier(), h.domain, "image measure domain");
  require_same_carrier(sigma_y.carrier(), h.codomain, "image measure codomain");
  if (h.image.size() != h.domain.size()) throw KernelError(ErrorCode::InvalidArgument, "point map has wrong length");
  for (std::size_t y : h.image) {
    if (y >= h.codomain.size()) throw KernelError(ErrorCode::InvalidArgument, "point map image out of range");
  }
}

}  // namespace

MeasureTable image_measure(const AtomicMeasure& m, const PointMap& h, const SigmaAlgebra& sigma_y) {
  require_map_domain(m, h, sigma_y);
  MeasureTable t(sigma_y);
  for (const Subset& b : sigma_y.members()) {
    const Subset pre = h.preimage(b);
    if (!m.sigma().contains(pre)) {
      throw KernelError(ErrorCode::NotMeasurableMap, "preimage of " + b.str() + " is " + pre.str());
    }
    t.set(b, measure_of(m, pre));
  }
  return t;
}

AtomicMeasure image_measure_atomic(const AtomicMeasure& m, const PointMap& h, const SigmaAlgebra& sigma_y) {
  require_map_domain(m, h, sigma_y);
  std::vector<XReal> w;
  for (const Subset& atom : sigma_y.atoms()) {
    const Subset pre = h.preimage(atom);
    if (!m.sigma().contains(pre)) {
      throw KernelError(ErrorCode::NotMeasurableMap, "preimage of " + atom.str() + " is " + pre.str());
    }
    w.push_back(measure_of(m, pre));
  }
  return AtomicMeasure(sigma_y, std::move(w));
}

AtomicMeasure to_atomic(const MeasureTable& t) {
  std::vector<XReal> w;
  for (const Subset& atom : t.sigma().atoms()) w.push_back(t.at(atom));
  return AtomicMeasure(t.sigma(), std::move(w));
}

bool is_finite(const AtomicMeasure& m) { return total_mass(m).is_finite(); }

std::optional<std::string> sigma_finite_violation(const AtomicMeasure& m, const SigmaFiniteWitness& w) {
  if (w.chain.empty()) return "empty witness chain";
  for (std::size_t n = 0; n < w.chain.size(); ++n) {
    const Subset& b = w.chain[n];
    if (!(b.carrier() == m.carrier())) return "witness set " + std::to_string(n) + " lives on another carrier";
    if (!m.sigma().contains(b)) return "witness set " + b.str() + " is not measurable";
    if (n > 0 && !w.chain[n - 1].subset_of(b)) return "witness chain is not nondecreasing at " + b.str();
    const XReal mass = measure_of(m, b);
    if (!mass.is_finite()) return "witness set " + b.str() + " has infinite measure";
  }
  if (!(w.chain.back() == Subset::full(m.carrier()))) return "witness chain does not exhaust the carrier";
  return std::nullopt;
}

bool is_sigma_finite(const AtomicMeasure& m, const SigmaFiniteWitness& w) { return !sigma_finite_violation(m, w); }

}  // namespace lebesgue
