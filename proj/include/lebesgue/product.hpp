#pragma once

#include <vector>

#include "lebesgue/measure.hpp"
#include "lebesgue/mp.hpp"

namespace lebesgue {

/// (X1 x X2, Sigma1 (x) Sigma2) built from generators of the two factors.
class ProductSpace {
 public:
  ProductSpace(SetCollection gen1, SetCollection gen2);

  const ProductCarrier& product_carrier() const { return pc_; }
  const Carrier& x1() const { return pc_.x1(); }
  const Carrier& x2() const { return pc_.x2(); }
  const Carrier& carrier() const { return pc_.carrier(); }

  const SetCollection& gen1() const { return gen1_; }
  const SetCollection& gen2() const { return gen2_; }
  const SigmaAlgebra& sigma1() const { return sigma1_; }
  const SigmaAlgebra& sigma2() const { return sigma2_; }
  /// Generated by gen_product(gen1, gen2).
  const SigmaAlgebra& sigma() const { return sigma_; }

  /// The space X2 x X1.
  ProductSpace swapped() const;

  Subset box(const Subset& a1, const Subset& a2) const { return pc_.box(a1, a2); }

  /// Boxes A1 x A2 where A1 and A2 range over the intersection closures of
  /// gen1 + {X1} and gen2 + {X2}. This pi-system generates sigma().
  std::vector<Subset> generator_boxes() const;

 private:
  ProductSpace(SetCollection gen1, SetCollection gen2, ProductCarrier pc, SigmaAlgebra s1, SigmaAlgebra s2);

  SetCollection gen1_;
  SetCollection gen2_;
  ProductCarrier pc_;
  SigmaAlgebra sigma1_;
  SigmaAlgebra sigma2_;
  SigmaAlgebra sigma_;
};

/// x1 -> m2(section of A at x1). Throws NotMeasurable for A outside the
/// product sigma-algebra.
PointwiseFn meas_section(const AtomicMeasure& m2, const Subset& a, const ProductSpace& ps);

/// The measure A -> integral over X1 of m2(section of A at x1) dm1. Throws
/// NotSigmaFinite when a witness does not validate.
AtomicMeasure prod_measure(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                           const SigmaFiniteWitness& w2, const ProductSpace& ps);
/// Same, with the whole-space witnesses (valid exactly for finite measures).
AtomicMeasure prod_measure(const AtomicMeasure& m1, const AtomicMeasure& m2, const ProductSpace& ps);

/// Checks "box-agreement" on generator_boxes() and "sigma-agreement" on every
/// member of the product sigma-algebra.
AuditReport uniqueness_check(const MeasureTable& a, const MeasureTable& b, const ProductSpace& ps);

/// Checks "box-property": m(A1 x A2) = m1(A1) m2(A2) over measurable boxes.
/// Exhaustive up to 2^16 boxes, sampled beyond.
AuditReport box_property_audit(const AtomicMeasure& m, const AtomicMeasure& m1, const AtomicMeasure& m2,
                               const ProductSpace& ps);

/// x2 -> e(x1, x2), as an expression on X2.
MpExpr section_fun(std::size_t x1, const MpExpr& e, const ProductSpace& ps);

/// x1 -> integral of the section of e at x1 against m2.
PointwiseFn lint_p_section_fun(const AtomicMeasure& m2, const MpExpr& e, const ProductSpace& ps);

/// (x2, x1) -> e(x1, x2), as an expression on X2 x X1.
MpExpr swap_expr(const MpExpr& e, const ProductSpace& ps);

/// Compares the integral of g against the image of m under h with the
/// integral of g o h against m ("change-of-measure"). Also audits the image
/// table as a measure when it is small enough to tabulate. Throws
/// NotMeasurableMap for a non-measurable h.
AuditReport change_of_measure_check(const PointMap& h, const AtomicMeasure& m, const SigmaAlgebra& sigma_y,
                                    const MpExpr& g);

struct TonelliReport {
  XReal double_integral;
  XReal iterated_12;
  XReal iterated_21;
  bool mplus_i_f = false;
  bool mplus_j_f = false;
  bool sections_measurable = false;
  Verdict verdict = Verdict::Fail;
  AuditReport box_audit;
  /// Agreement of the swapped product pushed forward with the product, and
  /// of the double integral computed on X2 x X1.
  AuditReport swap_audit;
};

/// Tonelli checks for many integrands over one pair of measures. The product
/// measures and the box and swap audits are built once, on construction.
class TonelliVerifier {
 public:
  /// Throws NotSigmaFinite.
  TonelliVerifier(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                  const SigmaFiniteWitness& w2, const ProductSpace& ps);

  /// Throws NotMeasurable for an integrand outside the product sigma-algebra.
  TonelliReport run(const MpExpr& e) const;

  const AtomicMeasure& product() const { return prod_; }

 private:
  AtomicMeasure m1_;
  AtomicMeasure m2_;
  ProductSpace ps_;
  ProductSpace swapped_;
  AtomicMeasure prod_;
  AtomicMeasure prod21_;
  AuditReport box_audit_;
  bool swap_image_ok_ = false;
};

/// Double integral against the product measure and both iterated integrals,
/// compared exactly. Throws NotSigmaFinite or NotMeasurable.
TonelliReport tonelli(const AtomicMeasure& m1, const SigmaFiniteWitness& w1, const AtomicMeasure& m2,
                      const SigmaFiniteWitness& w2, const MpExpr& e, const ProductSpace& ps);

}  // namespace lebesgue
