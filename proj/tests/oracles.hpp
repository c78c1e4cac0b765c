#pragma once

// Brute-force reference computations. Nothing here goes through atoms,
// folds or the product measure construction of the library.

#include <set>
#include <vector>

#include "lebesgue/product.hpp"

namespace oracle {

using lebesgue::Bits;
using lebesgue::XReal;

// Smallest family containing gen, empty and full, closed under complement and union.
inline std::set<Bits> sigma_closure(const std::vector<Bits>& gen, Bits full) {
  std::set<Bits> s{0, full};
  s.insert(gen.begin(), gen.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Bits> cur(s.begin(), s.end());
    for (Bits a : cur) {
      grew |= s.insert(full & ~a).second;
      for (Bits b : cur) grew |= s.insert(a | b).second;
    }
  }
  return s;
}

inline std::vector<Bits> bits_of(const lebesgue::SetCollection& c) {
  std::vector<Bits> out;
  for (const auto& s : c) out.push_back(s.bits());
  return out;
}

inline Bits section_bits(std::size_t x1, Bits a, std::size_t n1, std::size_t n2) {
  Bits out = 0;
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      if (i1 == x1 && ((a >> (i1 * n2 + i2)) & 1U)) out |= Bits{1} << i2;
  return out;
}

// Measure of a set as the sum of weights of the points it contains, each
// atom weight charged once through its lowest point.
inline XReal measure_by_points(const lebesgue::AtomicMeasure& m, Bits a) {
  XReal total(0);
  const auto& atoms = m.sigma().atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto pts = atoms[k].points();
    bool all = true, any = false;
    for (auto p : pts) {
      const bool in = (a >> p) & 1U;
      all = all && in;
      any = any || in;
    }
    if (any && !all) throw std::runtime_error("oracle: set splits an atom");
    if (all) total = total + m.atom_weight(k);
  }
  return total;
}

// Double integral as a sum over pairs of factor atoms: f(rep) * w1 * w2.
inline XReal double_integral(const lebesgue::AtomicMeasure& m1, const lebesgue::AtomicMeasure& m2,
                             const lebesgue::PointwiseFn& f, const lebesgue::ProductSpace& ps) {
  XReal total(0);
  const auto& a1 = m1.sigma().atoms();
  const auto& a2 = m2.sigma().atoms();
  for (std::size_t k1 = 0; k1 < a1.size(); ++k1)
    for (std::size_t k2 = 0; k2 < a2.size(); ++k2) {
      const std::size_t rep = ps.product_carrier().index(a1[k1].points().front(), a2[k2].points().front());
      total = total + f(rep) * (m1.atom_weight(k1) * m2.atom_weight(k2));
    }
  return total;
}

// All sets in the collection, enumerated as subsets of a full mask.
inline std::vector<Bits> all_subsets(Bits full) {
  std::vector<Bits> out;
  for (Bits s = full;; s = (s - 1) & full) {
    out.push_back(s);
    if (s == 0) break;
  }
  return out;
}

}  // namespace oracle
