#include "lebesgue/product.hpp"

#include <bit>
#include <random>

namespace lebesgue {

ProductSpace::ProductSpace(SetCollection gen1, SetCollection gen2)
    : ProductSpace(gen1, gen2, ProductCarrier(gen1.carrier(), gen2.carrier()), generate_sigma(gen1),
                   generate_sigma(gen2)) {}

ProductSpace::ProductSpace(SetCollection gen1, SetCollection gen2, ProductCarrier pc, SigmaAlgebra s1,
                           SigmaAlgebra s2)
    : gen1_(std::move(gen1)),
      gen2_(std::move(gen2)),
      pc_(std::move(pc)),
      sigma1_(std::move(s1)),
      sigma2_(std::move(s2)),
      sigma_(generate_sigma(gen_product(gen1_, gen2_, pc_))) {}

ProductSpace ProductSpace::swapped() const {
  return ProductSpace(gen2_, gen1_, pc_.swapped(), sigma2_, sigma1_);
}

namespace {

std::vector<Subset> intersection_closure(const SetCollection& gen) {
  SetCollection out(gen.carrier());
  out.insert(Subset::full(gen.carrier()));
  for (const Subset& g : gen) out.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Subset> snapshot = out.members();
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) grew = out.insert(snapshot[i] & snapshot[j]) || grew;
    }
  }
  return out.members();
}

void require_factor(const AtomicMeasure& m, const SigmaAlgebra& sigma, const char* which) {
  if (!(m.sigma() == sigma)) {
    throw KernelError(ErrorCode::CarrierMismatch, std::string(which) + " measure is not defined on the factor sigma-algebra");
  }
}

}  // namespace

std::vector<Subset> ProductSpace::generator_boxes() const {
  std::vector<Subset> boxes;
  for (const Subset& a1 : intersection_closure(gen1_)) {
    for (const Subset& a2 : intersection_closure(gen2_)) boxes.push_back(pc_.box(a1, a2));
  }
  return boxes;
}

PointwiseFn meas_section(const AtomicMeasure& m2, const Subset& a, const ProductSpace& ps) {
  require_factor(m2, ps.sigma2(), "second");
  if (!ps.sigma().contains(a)) throw KernelError(ErrorCode::NotMeasurable, a.str());
  std::vector<XReal> v;
  for (std::size_t x1 = 0; x1 < ps.x1().size(); ++x1) {
    v.push_back(measure_of(m2, section_set(x1, a, ps.product_carrier())));
  }
  return PointwiseFn(ps.x1(), std::move(v));
}

AtomicMeasure prod_measure(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                           const SigmaFiniteWitness& w2, const ProductSpace& ps) {
  require_factor(m1, ps.sigma1(), "first");
  require_factor(m2, ps.sigma2(), "second");
  if (auto why = sigma_finite_violation(m1, w1)) throw KernelError(ErrorCode::NotSigmaFinite, "first factor: " + *why);
  if (auto why = sigma_finite_violation(m2, w2)) throw KernelError(ErrorCode::NotSigmaFinite, "second factor: " + *why);
  std::vector<XReal> w;
  w.reserve(ps.sigma().atom_count());
  for (const Subset& atom : ps.sigma().atoms()) w.push_back(integrate_oracle(m1, meas_section(m2, atom, ps)));
  return AtomicMeasure(ps.sigma(), std::move(w));
}

AtomicMeasure prod_measure(const AtomicMeasure& m1, const AtomicMeasure& m2, const ProductSpace& ps) {
  return prod_measure(m1, SigmaFiniteWitness::whole(m1.carrier()), m2, SigmaFiniteWitness::whole(m2.carrier()), ps);
}

AuditReport uniqueness_check(const MeasureTable& a, const MeasureTable& b, const ProductSpace& ps) {
  if (!(a.sigma() == ps.sigma()) || !(b.sigma() == ps.sigma())) {
    throw KernelError(ErrorCode::CarrierMismatch, "uniqueness check needs tables on the product sigma-algebra");
  }
  AuditReport report;
  std::optional<Subset> bad_box;
  for (const Subset& box : ps.generator_boxes()) {
    if (!(a.at(box) == b.at(box))) {
      bad_box = box;
      break;
    }
  }
  report.add("box-agreement", !bad_box, bad_box ? bad_box->str() : "");

  std::optional<Subset> bad;
  for (const auto& [bits, value] : a.values()) {
    if (!(value == b.values().at(bits))) {
      bad = Subset(ps.carrier(), bits);
      break;
    }
  }
  report.add("sigma-agreement", !bad, bad ? bad->str() : "");
  return report;
}

AuditReport box_property_audit(const AtomicMeasure& m, const AtomicMeasure& m1, const AtomicMeasure& m2,
                               const ProductSpace& ps) {
  require_factor(m1, ps.sigma1(), "first");
  require_factor(m2, ps.sigma2(), "second");
  if (!(m.sigma() == ps.sigma())) throw KernelError(ErrorCode::CarrierMismatch, "product measure sigma-algebra");
  const std::size_t k1 = ps.sigma1().atom_count();
  const std::size_t k2 = ps.sigma2().atom_count();
  std::optional<Subset> bad;
  std::size_t checked = 0;
  auto check = [&](Bits s1, Bits s2, const XReal& v1, const XReal& v2) {
    const Subset box = ps.box(ps.sigma1().union_of_atoms(s1), ps.sigma2().union_of_atoms(s2));
    ++checked;
    if (!(measure_of(m, box) == v1 * v2)) bad = box;
  };
  auto mass = [](const AtomicMeasure& mu, Bits s) { return measure_of(mu, mu.sigma().union_of_atoms(s)); };
  if (k1 + k2 <= 16) {
    std::vector<XReal> v2;
    for (Bits s2 = 0; s2 < (Bits{1} << k2); ++s2) v2.push_back(mass(m2, s2));
    for (Bits s1 = 0; s1 < (Bits{1} << k1) && !bad; ++s1) {
      const XReal v1 = mass(m1, s1);
      for (Bits s2 = 0; s2 < (Bits{1} << k2) && !bad; ++s2) check(s1, s2, v1, v2[s2]);
    }
  } else {
    std::mt19937_64 rng(0xb0c5);
    std::uniform_int_distribution<Bits> d1(0, (Bits{1} << k1) - 1);
    std::uniform_int_distribution<Bits> d2(0, (Bits{1} << k2) - 1);
    for (int i = 0; i < 4096 && !bad; ++i) {
      const Bits s1 = d1(rng);
      const Bits s2 = d2(rng);
      check(s1, s2, mass(m1, s1), mass(m2, s2));
    }
  }
  AuditReport report;
  report.add("box-property", !bad, bad ? bad->str() : "", std::to_string(checked) + " boxes");
  return report;
}

MpExpr section_fun(std::size_t x1, const MpExpr& e, const ProductSpace& ps) {
  require_same_carrier(e.carrier(), ps.carrier(), "section of a function");
  const ProductCarrier& pc = ps.product_carrier();
  return map_sets(e, [&](const Subset& a) { return section_set(x1, a, pc); });
}

PointwiseFn lint_p_section_fun(const AtomicMeasure& m2, const MpExpr& e, const ProductSpace& ps) {
  require_factor(m2, ps.sigma2(), "second");
  std::vector<XReal> v;
  for (std::size_t x1 = 0; x1 < ps.x1().size(); ++x1) v.push_back(integrate(m2, section_fun(x1, e, ps)));
  return PointwiseFn(ps.x1(), std::move(v));
}

MpExpr swap_expr(const MpExpr& e, const ProductSpace& ps) {
  require_same_carrier(e.carrier(), ps.carrier(), "swap of a function");
  const ProductCarrier& pc = ps.product_carrier();
  return map_sets(e, [&](const Subset& a) { return pc.swap(a); });
}

AuditReport change_of_measure_check(const PointMap& h, const AtomicMeasure& m, const SigmaAlgebra& sigma_y,
                                    const MpExpr& g) {
  AuditReport report;
  const AtomicMeasure image = image_measure_atomic(m, h, sigma_y);
  if (sigma_y.atom_count() <= 10) {
    const MeasureTable table = image_measure(m, h, sigma_y);
    const AtomicMeasure from_table = to_atomic(table);
    report.add("image-routes-agree", from_table.weights() == image.weights(), "atom weights");
    const AuditReport axioms = audit_measure(table);
    const AuditCheck* first_bad = nullptr;
    for (const auto& c : axioms.checks) {
      if (c.verdict == Verdict::Fail && first_bad == nullptr) first_bad = &c;
    }
    report.add("image-is-measure", first_bad == nullptr,
               first_bad ? first_bad->name + " " + first_bad->witness.value_or("") : "");
  }
  check_well_formed(g, sigma_y);
  const XReal lhs = integrate(image, g);
  const MpExpr composed = map_sets(g, [&](const Subset& b) { return h.preimage(b); });
  const XReal rhs = integrate(m, composed);
  report.add("change-of-measure", lhs == rhs, "image side " + lhs.str() + ", composed side " + rhs.str());
  return report;
}

TonelliVerifier::TonelliVerifier(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                                 const SigmaFiniteWitness& w2, const ProductSpace& ps)
    : m1_(m1),
      m2_(m2),
      ps_(ps),
      swapped_(ps.swapped()),
      prod_(prod_measure(m1, w1, m2, w2, ps)),
      prod21_(prod_measure(m2, w2, m1, w1, swapped_)),
      box_audit_(box_property_audit(prod_, m1, m2, ps)) {
  const AtomicMeasure pushed = image_measure_atomic(prod21_, PointMap::swap(swapped_.product_carrier()), ps.sigma());
  swap_image_ok_ = pushed.weights() == prod_.weights();
}

TonelliReport TonelliVerifier::run(const MpExpr& e) const {
  check_well_formed(e, ps_.sigma());
  const MpExpr es = swap_expr(e, ps_);

  TonelliReport r;
  r.double_integral = integrate(prod_, e);

  const PointwiseFn i_f = lint_p_section_fun(m2_, e, ps_);
  r.iterated_12 = integrate_oracle(m1_, i_f);
  const PointwiseFn j_f = lint_p_section_fun(m1_, es, swapped_);
  r.iterated_21 = integrate_oracle(m2_, j_f);

  r.mplus_i_f = mplus_check(i_f, ps_.sigma1());
  r.mplus_j_f = mplus_check(j_f, ps_.sigma2());
  r.sections_measurable = true;
  for (std::size_t x1 = 0; x1 < ps_.x1().size() && r.sections_measurable; ++x1) {
    r.sections_measurable = mplus_check(pointwise(section_fun(x1, e, ps_)), ps_.sigma2());
  }
  for (std::size_t x2 = 0; x2 < ps_.x2().size() && r.sections_measurable; ++x2) {
    r.sections_measurable = mplus_check(pointwise(section_fun(x2, es, swapped_)), ps_.sigma1());
  }

  r.box_audit = box_audit_;
  r.swap_audit.add("swap-image-equals-product", swap_image_ok_, "atom weights differ");
  const XReal double_21 = integrate(prod21_, es);
  r.swap_audit.add("swapped-double-integral", double_21 == r.double_integral,
                   double_21.str() + " vs " + r.double_integral.str());

  const bool equal = r.double_integral == r.iterated_12 && r.iterated_12 == r.iterated_21;
  const bool attested = r.mplus_i_f && r.mplus_j_f && r.sections_measurable;
  r.verdict = equal && attested ? Verdict::Pass : Verdict::Fail;
  return r;
}

TonelliReport tonelli(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                      const SigmaFiniteWitness& w2, const MpExpr& e, const ProductSpace& ps) {
  return TonelliVerifier(m1, w1, m2, w2, ps).run(e);
}

}  // namespace lebesgue
