#include <doctest.h>

#include "lebesgue/product.hpp"
#include "lebesgue/random.hpp"
#include "oracles.hpp"

using namespace lebesgue;

namespace {

const XReal inf = XReal::pos_inf();

// X1 = {a,b} with mu1 = {a:1, b:2}; X2 = {u,v,w} with mu2 = {u:1/2, v:1, w:0}.
struct Running {
  Carrier x1{{"a", "b"}};
  Carrier x2{{"u", "v", "w"}};
  ProductSpace ps{SetCollection(x1, {Subset::of_labels(x1, {"a"})}),
                  SetCollection(x2, {Subset::of_labels(x2, {"u"}), Subset::of_labels(x2, {"v"})})};
  AtomicMeasure m1{ps.sigma1(), {1, 2}};
  AtomicMeasure m2{ps.sigma2(), {XReal::fin(1, 2), 1, 0}};

  Subset s1(std::initializer_list<std::string> l) const { return Subset::of_labels(ps.x1(), l); }
  Subset s2(std::initializer_list<std::string> l) const { return Subset::of_labels(ps.x2(), l); }
  MpExpr example() const {
    return MpExpr::add(MpExpr::charac(ps.box(s1({"a"}), s2({"u", "v"}))),
                       MpExpr::scal(3, MpExpr::charac(ps.box(s1({"b"}), s2({"w"})))));
  }
};

}  // namespace

TEST_CASE_FIXTURE(Running, "product sigma-algebra atoms are atom products") {
  CHECK(ps.sigma().atom_count() == ps.sigma1().atom_count() * ps.sigma2().atom_count());
  for (const auto& p1 : ps.sigma1().atoms())
    for (const auto& p2 : ps.sigma2().atoms()) CHECK(ps.sigma().contains(ps.box(p1, p2)));
}

TEST_CASE_FIXTURE(Running, "meas_section") {
  const PointwiseFn f = meas_section(m2, ps.box(s1({"b"}), s2({"u", "v"})), ps);
  CHECK(f.values == std::vector<XReal>{0, XReal::fin(3, 2)});
  CHECK(meas_section(m2, Subset::empty(ps.carrier()), ps) == PointwiseFn::constant(x1, 0));

  random::Generator g(5);
  for (int t = 0; t < 200; ++t) {
    const ProductSpace sp = g.product_space(3);
    const AtomicMeasure mm = g.finite_measure(sp.sigma2());
    const Subset a = g.measurable_set(sp.sigma());
    const PointwiseFn sec = meas_section(mm, a, sp);
    for (std::size_t x = 0; x < sp.x1().size(); ++x)
      CHECK(sec(x) == oracle::measure_by_points(mm, oracle::section_bits(x, a.bits(), sp.x1().size(), sp.x2().size())));
    CHECK(mplus_check(sec, sp.sigma1()));
  }
  const Subset bad = Subset::of_labels(ps.carrier(), {"(a,u)", "(b,v)"});
  const ProductSpace coarse{SetCollection(x1), SetCollection(x2)};
  CHECK_THROWS_AS(meas_section(AtomicMeasure(coarse.sigma2(), {1}), bad, coarse), KernelError);
}

TEST_CASE_FIXTURE(Running, "prod_measure") {
  const AtomicMeasure m = prod_measure(m1, m2, ps);
  CHECK(measure_of(m, ps.box(s1({"a"}), s2({"u", "v"}))) == XReal::fin(3, 2));
  CHECK(total_mass(m) == XReal::fin(9, 2));
  CHECK(box_property_audit(m, m1, m2, ps).passed());
  CHECK(audit_measure(MeasureTable::from_measure(m)).passed());
  CHECK(total_mass(prod_measure(AtomicMeasure::zero(ps.sigma1()), m2, ps)) == XReal(0));

  const AtomicMeasure m1_inf(ps.sigma1(), {inf, 1});
  try {
    prod_measure(m1_inf, SigmaFiniteWitness::whole(x1), m2, SigmaFiniteWitness::whole(x2), ps);
    FAIL("expected NotSigmaFinite");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrorCode::NotSigmaFinite);
  }

  random::Generator g(15);
  for (int t = 0; t < 100; ++t) {
    const ProductSpace sp = g.product_space(4);
    const AtomicMeasure a = g.finite_measure(sp.sigma1()), b = g.finite_measure(sp.sigma2());
    const AtomicMeasure pm = prod_measure(a, b, sp);
    CHECK(is_finite(pm));
    const Subset s = g.measurable_set(sp.sigma());
    CHECK(measure_of(pm, s) == integrate_oracle(a, meas_section(b, s, sp)));
  }
}

TEST_CASE_FIXTURE(Running, "uniqueness") {
  const MeasureTable t = MeasureTable::from_measure(prod_measure(m1, m2, ps));
  CHECK(uniqueness_check(t, t, ps).passed());

  // Weight inf on (p,u) hides every other atom from the generator boxes.
  const Carrier y1({"p", "q"}), y2({"u", "v"});
  const ProductSpace sp(SetCollection(y1, {Subset::of_labels(y1, {"p"})}), SetCollection(y2, {Subset::of_labels(y2, {"u"})}));
  const Subset pu = Subset::of_labels(sp.carrier(), {"(p,u)"});
  std::vector<XReal> w1, w2;
  for (const auto& atom : sp.sigma().atoms()) {
    w1.push_back(atom == pu ? inf : XReal(1));
    w2.push_back(atom == pu ? inf : XReal(2));
  }
  const AuditReport r = uniqueness_check(MeasureTable::from_measure(AtomicMeasure(sp.sigma(), w1)),
                                         MeasureTable::from_measure(AtomicMeasure(sp.sigma(), w2)), sp);
  CHECK(r.verdict("box-agreement") == Verdict::Pass);
  CHECK(r.verdict("sigma-agreement") == Verdict::Fail);
  CHECK(r.find("sigma-agreement")->witness);
}

TEST_CASE_FIXTURE(Running, "section_fun") {
  CHECK(pointwise(section_fun(0, MpExpr::charac(ps.box(s1({"a"}), s2({"u", "v"}))), ps)) ==
        pointwise(MpExpr::charac(s2({"u", "v"}))));
  CHECK(pointwise(section_fun(1, MpExpr::scal(3, MpExpr::charac(Subset::empty(ps.carrier()))), ps)) ==
        PointwiseFn::constant(x2, 0));

  random::Generator g(25);
  for (int t = 0; t < 200; ++t) {
    const ProductSpace sp = g.product_space(3);
    const MpExpr e = g.expr(sp.sigma(), 3);
    const PointwiseFn full = pointwise(e);
    for (std::size_t x = 0; x < sp.x1().size(); ++x) {
      const MpExpr sec = section_fun(x, e, sp);
      CHECK_NOTHROW(check_well_formed(sec, sp.sigma2()));
      for (std::size_t y = 0; y < sp.x2().size(); ++y) CHECK(eval(sec, y) == full(sp.product_carrier().index(x, y)));
    }
  }
}

TEST_CASE_FIXTURE(Running, "lint_p_section_fun") {
  const Subset a = ps.box(s1({"b"}), s2({"u"})) | ps.box(s1({"a"}), s2({"v", "w"}));
  CHECK(lint_p_section_fun(m2, MpExpr::charac(a), ps) == meas_section(m2, a, ps));
  CHECK(lint_p_section_fun(m2, MpExpr::scal(0, example()), ps) == PointwiseFn::constant(x1, 0));

  random::Generator g(35);
  for (int t = 0; t < 200; ++t) {
    const ProductSpace sp = g.product_space(3);
    const AtomicMeasure mm = g.finite_measure(sp.sigma2());
    const MpExpr e = g.expr(sp.sigma(), 3);
    const PointwiseFn full = pointwise(e);
    const PointwiseFn i_f = lint_p_section_fun(mm, e, sp);
    CHECK(mplus_check(i_f, sp.sigma1()));
    for (std::size_t x = 0; x < sp.x1().size(); ++x) {
      std::vector<XReal> row;
      for (std::size_t y = 0; y < sp.x2().size(); ++y) row.push_back(full(sp.product_carrier().index(x, y)));
      XReal sum(0);
      for (std::size_t k = 0; k < mm.sigma().atom_count(); ++k)
        sum = sum + row[mm.sigma().atoms()[k].points().front()] * mm.atom_weight(k);
      CHECK(i_f(x) == sum);
    }
  }
}

TEST_CASE_FIXTURE(Running, "swap_expr") {
  const ProductSpace sw = ps.swapped();
  const MpExpr box = MpExpr::charac(ps.box(s1({"a"}), s2({"u", "w"})));
  CHECK(pointwise(swap_expr(box, ps)) == pointwise(MpExpr::charac(sw.box(s2({"u", "w"}), s1({"a"})))));

  random::Generator g(45);
  for (int t = 0; t < 200; ++t) {
    const ProductSpace sp = g.product_space(3);
    const MpExpr e = g.expr(sp.sigma(), 3);
    const MpExpr s = swap_expr(e, sp);
    const PointwiseFn f = pointwise(e), fs = pointwise(s);
    for (std::size_t x = 0; x < sp.x1().size(); ++x)
      for (std::size_t y = 0; y < sp.x2().size(); ++y)
        CHECK(fs(sp.swapped().product_carrier().index(y, x)) == f(sp.product_carrier().index(x, y)));
    CHECK(pointwise(swap_expr(s, sp.swapped())) == f);
  }
}

TEST_CASE_FIXTURE(Running, "change of measure") {
  const MpExpr g0 = example();
  CHECK(change_of_measure_check(PointMap::identity(ps.carrier()), prod_measure(m1, m2, ps), ps.sigma(), g0).passed());

  // swap, indicator of a box: both routes give mu2(A2) mu1(A1)
  const ProductSpace sw = ps.swapped();
  const AtomicMeasure m21 = prod_measure(m2, m1, sw);
  const PointMap h = PointMap::swap(sw.product_carrier());
  const MpExpr box = MpExpr::charac(ps.box(s1({"b"}), s2({"u", "v"})));
  const AuditReport r = change_of_measure_check(h, m21, ps.sigma(), box);
  CHECK(r.passed());
  CHECK(integrate(image_measure_atomic(m21, h, ps.sigma()), box) == XReal(3));

  random::Generator g(55);
  for (int t = 0; t < 200; ++t) {
    const Carrier y = g.carrier(g.uniform(1, 6), "y");
    const SigmaAlgebra sy = generate_sigma(g.generators(y, 3));
    const Carrier x = g.carrier(g.uniform(1, 6), "x");
    const PointMap hx = g.point_map(x, y);
    SetCollection gx = g.generators(x, 2);
    for (const auto& atom : sy.atoms()) gx.insert(hx.preimage(atom));
    const AtomicMeasure m = g.finite_measure(generate_sigma(gx));
    CHECK(change_of_measure_check(hx, m, sy, g.expr(sy, 3)).passed());
  }
}

TEST_CASE_FIXTURE(Running, "tonelli") {
  const auto w1 = SigmaFiniteWitness::whole(x1), w2 = SigmaFiniteWitness::whole(x2);
  const TonelliReport r = tonelli(m1, w1, m2, w2, example(), ps);
  CHECK(r.double_integral == XReal::fin(3, 2));
  CHECK(r.iterated_12 == XReal::fin(3, 2));
  CHECK(r.iterated_21 == XReal::fin(3, 2));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.mplus_i_f);
  CHECK(r.mplus_j_f);
  CHECK(r.sections_measurable);

  const TonelliReport empty = tonelli(m1, w1, m2, w2, MpExpr::charac(Subset::empty(ps.carrier())), ps);
  CHECK(empty.double_integral == XReal(0));
  CHECK(empty.iterated_21 == XReal(0));

  const TonelliReport whole = tonelli(m1, w1, m2, w2, MpExpr::charac(Subset::full(ps.carrier())), ps);
  CHECK(whole.double_integral == XReal::fin(9, 2));
  CHECK(whole.iterated_12 == XReal::fin(9, 2));
  CHECK(whole.iterated_21 == XReal::fin(9, 2));

  CHECK_THROWS_AS(tonelli(AtomicMeasure(ps.sigma1(), {inf, 1}), w1, m2, w2, example(), ps), KernelError);

  random::Generator g(65);
  for (int t = 0; t < 200; ++t) {
    const ProductSpace sp = g.product_space(4);
    const AtomicMeasure a = g.finite_measure(sp.sigma1()), b = g.finite_measure(sp.sigma2());
    const MpExpr e = g.expr(sp.sigma(), 4);
    const TonelliReport tr = tonelli(a, SigmaFiniteWitness::whole(sp.x1()), b, SigmaFiniteWitness::whole(sp.x2()), e, sp);
    CHECK(tr.verdict == Verdict::Pass);
    CHECK(tr.double_integral == oracle::double_integral(a, b, pointwise(e), sp));
  }
}

TEST_CASE_FIXTURE(Running, "a reused verifier matches one-off runs") {
  const auto w1 = SigmaFiniteWitness::whole(x1), w2 = SigmaFiniteWitness::whole(x2);
  const TonelliVerifier v(m1, w1, m2, w2, ps);
  CHECK(v.product().weights() == prod_measure(m1, m2, ps).weights());
  random::Generator g(75);
  for (int t = 0; t < 100; ++t) {
    const MpExpr e = g.expr(ps.sigma(), 3);
    const TonelliReport a = v.run(e), b = tonelli(m1, w1, m2, w2, e, ps);
    CHECK(a.double_integral == b.double_integral);
    CHECK(a.iterated_12 == b.iterated_12);
    CHECK(a.iterated_21 == b.iterated_21);
    CHECK(a.verdict == b.verdict);
  }
  CHECK_THROWS_AS(TonelliVerifier(AtomicMeasure(ps.sigma1(), {inf, 1}), w1, m2, w2, ps), KernelError);
}
