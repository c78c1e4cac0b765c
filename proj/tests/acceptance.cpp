// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "lebesgue/product.hpp"
#include "lebesgue/random.hpp"
#include "oracles.hpp"

using namespace lebesgue;

namespace {

const XReal inf = XReal::pos_inf();

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
};

bool report(int id, const std::string& title, const Tally& t, double seconds) {
  const bool ok = t.failures == 0 && t.cases > 0;
  std::printf("%s [%d] %s: %zu checks, %zu failed, %.2fs%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), t.cases,
              t.failures, seconds, t.note.empty() ? "" : "; ", t.note.c_str());
  if (!ok && !t.first.empty()) std::printf("       first failure: %s\n", t.first.c_str());
  std::fflush(stdout);
  return ok;
}

template <class F>
bool criterion(int id, const std::string& title, F body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.expect(false, [&] { return std::string("exception: ") + e.what(); });
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report(id, title, t, secs);
}

// --- criterion 1 and 3 corpus ----------------------------------------------

// Every expression of depth <= 2 over a grammar with all indicator sets,
// coefficients {0, 1/2, 2}, sums, and suprema of two-term monotone sequences
// (both tails).
std::vector<MpExpr> grow(const std::vector<MpExpr>& lower, const std::vector<MpExpr>& all_below,
                         const std::vector<PointwiseFn>& values_below) {
  std::vector<MpExpr> out;
  const std::size_t top = depth(lower.front());
  const Rational coeffs[] = {Rational(0), Rational(1, 2), Rational(2)};
  for (const auto& e : lower)
    for (const auto& q : coeffs) out.push_back(MpExpr::scal(q, e));
  for (std::size_t i = 0; i < all_below.size(); ++i)
    for (std::size_t j = 0; j < all_below.size(); ++j) {
      // pairs strictly below the top layer were produced one level down
      if (depth(all_below[i]) < top && depth(all_below[j]) < top) continue;
      out.push_back(MpExpr::add(all_below[i], all_below[j]));
      bool monotone = true;
      for (std::size_t x = 0; x < values_below[i].values.size(); ++x)
        monotone = monotone && values_below[i](x) <= values_below[j](x);
      if (!monotone) continue;
      out.push_back(MpExpr::sup(MpSeq::stabilized({all_below[i], all_below[j]}, 1)));
      bool finite_growth = true;
      for (std::size_t x = 0; x < values_below[i].values.size(); ++x)
        if (values_below[i](x) < values_below[j](x) && !values_below[j](x).is_finite()) finite_growth = false;
      if (finite_growth) out.push_back(MpExpr::sup(MpSeq::diverging({all_below[i], all_below[j]})));
    }
  return out;
}

void tonelli_case(Tally& t, Tally& oracle_t, const TonelliVerifier& v, const AtomicMeasure& m1,
                  const AtomicMeasure& m2, const MpExpr& e, const ProductSpace& ps) {
  const TonelliReport r = v.run(e);
  const AtomicMeasure& prod = v.product();
  t.expect(r.verdict == Verdict::Pass && r.double_integral == r.iterated_12 && r.iterated_12 == r.iterated_21,
           [&] { return e.str() + ": " + r.double_integral.str() + " / " + r.iterated_12.str() + " / " + r.iterated_21.str(); });
  const PointwiseFn f = pointwise(e);
  const XReal by_fold = integrate(prod, e);
  const XReal by_atoms = integrate_oracle(prod, f);
  const XReal by_pairs = oracle::double_integral(m1, m2, f, ps);
  oracle_t.expect(by_fold == by_atoms && by_atoms == by_pairs && by_fold == r.double_integral,
                  [&] { return e.str() + ": fold " + by_fold.str() + ", atom sum " + by_atoms.str() + ", pair sum " + by_pairs.str(); });
}

// --- criterion 9 ------------------------------------------------------------

// Rank over the rationals of the generator-box / product-atom incidence matrix.
std::size_t box_rank(const ProductSpace& ps) {
  const auto& atoms = ps.sigma().atoms();
  std::vector<std::vector<Rational>> rows;
  for (const auto& box : ps.generator_boxes()) {
    std::vector<Rational> row(atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k) row[k] = atoms[k].subset_of(box) ? 1 : 0;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < atoms.size() && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < atoms.size(); ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int main() {
  bool all = true;
  random::Generator g(20240601);

  // The criterion 1 corpus is kept for criterion 3.
  Tally oracle_tally;

  all &= criterion(1, "Tonelli equality", [&](Tally& t) {
    for (int i = 0; i < 1000; ++i) {
      const ProductSpace ps = g.product_space(5);
      const AtomicMeasure m1 = g.finite_measure(ps.sigma1()), m2 = g.finite_measure(ps.sigma2());
      const MpExpr e = g.expr(ps.sigma(), g.uniform(0, 5), 4);
      const TonelliVerifier v(m1, SigmaFiniteWitness::whole(ps.x1()), m2, SigmaFiniteWitness::whole(ps.x2()), ps);
      tonelli_case(t, oracle_tally, v, m1, m2, e, ps);
    }
    const std::size_t randomized = t.cases;

    const Carrier x1({"a", "b"}), x2({"u", "v"});
    const ProductSpace ps(SetCollection(x1, {Subset::of_labels(x1, {"a"})}), SetCollection(x2, {Subset::of_labels(x2, {"u"})}));
    std::vector<MpExpr> d0;
    for (Bits b = 0; b < 16; ++b) d0.push_back(MpExpr::charac(Subset(ps.carrier(), b)));
    auto values_of = [](const std::vector<MpExpr>& es) {
      std::vector<PointwiseFn> v;
      for (const auto& e : es) v.push_back(pointwise(e));
      return v;
    };
    std::vector<MpExpr> d1 = grow(d0, d0, values_of(d0));
    std::vector<MpExpr> upto1 = d0;
    upto1.insert(upto1.end(), d1.begin(), d1.end());
    std::vector<MpExpr> d2 = grow(d1, upto1, values_of(upto1));

    const std::pair<std::vector<XReal>, std::vector<XReal>> measures[] = {
        {{XReal::fin(1, 2), 3}, {2, XReal::fin(1, 3)}},
        {{0, 1}, {XReal::fin(7, 2), 0}},
    };
    std::size_t exprs = 0;
    for (const auto& [w1, w2] : measures) {
      const AtomicMeasure m1(ps.sigma1(), w1), m2(ps.sigma2(), w2);
      const TonelliVerifier v(m1, SigmaFiniteWitness::whole(x1), m2, SigmaFiniteWitness::whole(x2), ps);
      for (const auto* layer : {&d0, &d1, &d2})
        for (const auto& e : *layer) {
          tonelli_case(t, oracle_tally, v, m1, m2, e, ps);
          ++exprs;
        }
    }
    t.note = std::to_string(randomized) + " random cases, " + std::to_string(d0.size() + d1.size() + d2.size()) +
             " exhaustive depth<=2 expressions on 2x2 under " + std::to_string(std::size(measures)) + " measure pairs";
  });

  all &= criterion(2, "Box property", [&](Tally& t) {
    for (int i = 0; i < 100; ++i) {
      const ProductSpace ps = g.product_space(5);
      const AtomicMeasure m1 = g.finite_measure(ps.sigma1()), m2 = g.finite_measure(ps.sigma2());
      const AtomicMeasure m = prod_measure(m1, m2, ps);
      for (const auto& a1 : ps.sigma1().members())
        for (const auto& a2 : ps.sigma2().members()) {
          const XReal lhs = oracle::measure_by_points(m, ps.box(a1, a2).bits());
          const XReal rhs = measure_of(m1, a1) * measure_of(m2, a2);
          t.expect(lhs == rhs, [&] { return a1.str() + " x " + a2.str() + ": " + lhs.str() + " vs " + rhs.str(); });
        }
      t.expect(box_property_audit(m, m1, m2, ps).passed(), [] { return std::string("box_property_audit"); });
    }
  });

  all &= criterion(3, "Oracle equivalence", [&](Tally& t) {
    t = oracle_tally;
    t.note = "fold, atom sum and factor-atom pair sum on the criterion 1 corpus";
  });

  all &= criterion(4, "Mp_correct roundtrip", [&](Tally& t) {
    std::size_t with_inf = 0;
    for (int i = 0; i < 500; ++i) {
      const SigmaAlgebra s = generate_sigma(g.generators(g.carrier(g.uniform(1, 8), "x"), 4));
      const PointwiseFn f = g.measurable_fn(s, true);
      for (const auto& v : f.values) with_inf += v.is_pos_inf() ? 1 : 0;
      const MpExpr e = from_pointwise(f, s);
      t.expect(pointwise(e) == f, [&] { return "from_pointwise " + f.str() + " -> " + e.str(); });
    }
    for (int i = 0; i < 500; ++i) {
      const SigmaAlgebra s = generate_sigma(g.generators(g.carrier(g.uniform(1, 8), "x"), 4));
      const MpExpr e = g.expr(s, g.uniform(0, 4));
      t.expect(mplus_check(pointwise(e), s), [&] { return "mplus_check " + e.str(); });
    }
    t.note = std::to_string(with_inf) + " infinite values";
  });

  all &= criterion(5, "SF_aux_cons", [&](Tally& t) {
    for (int i = 0; i < 500; ++i) {
      const SigmaAlgebra s = generate_sigma(g.generators(g.carrier(g.uniform(2, 6), "x"), 4));
      const SigmaAlgebra sg = s.atom_count() >= 2 ? s : SigmaAlgebra::discrete(s.carrier());
      const SimpleFn f = g.simple_fn(sg, 2);
      const ConsReduction r = sf_cons_reduce(f);
      std::vector<Rational> expected{f.values()[0]};
      expected.insert(expected.end(), f.values().begin() + 2, f.values().end());
      t.expect(r.g.values() == expected, [&] { return std::string("values of g"); });
      t.expect(r.gap == f.values()[1] - f.values()[0] && r.d == f.preimages()[1], [] { return std::string("gap or D"); });
      for (std::size_t x = 0; x < sg.carrier().size(); ++x) {
        t.expect(r.g(x) <= f(x), [&] { return "g > f at " + sg.carrier().label(x); });
        t.expect(r.g(x) + (r.d.contains(x) ? r.gap : Rational(0)) == f(x), [&] { return "f != g + gap chi_D"; });
      }
    }
  });

  all &= criterion(6, "Adapted sequences", [&](Tally& t) {
    for (int i = 0; i < 500; ++i) {
      const SigmaAlgebra s = generate_sigma(g.generators(g.carrier(g.uniform(1, 6), "x"), 3));
      const PointwiseFn f = g.measurable_fn(s, true);
      for (unsigned n = 0; n <= 8; ++n) {
        const SimpleFn phi = mk_adapted_seq(f, s, n), next = mk_adapted_seq(f, s, n + 1);
        const Rational eps = Rational(1) / Rational(mpz_class(1) << n);
        for (std::size_t x = 0; x < f.values.size(); ++x) {
          auto where = [&] { return f.str() + ", n = " + std::to_string(n) + ", x = " + s.carrier().label(x); };
          t.expect(phi(x) <= next(x), where);
          t.expect(XReal(next(x)) <= f(x), where);
          t.expect(phi(x) <= n, where);
          if (f(x) <= XReal(static_cast<long>(n))) t.expect(f(x).value() - phi(x) < eps, where);
        }
      }
    }
  });

  all &= criterion(7, "Beppo Levi", [&](Tally& t) {
    std::size_t diverging = 0;
    for (int i = 0; i < 500; ++i) {
      const SigmaAlgebra s = generate_sigma(g.generators(g.carrier(g.uniform(1, 6), "x"), 3));
      const AtomicMeasure m = g.finite_measure(s);
      const MpSeq sq = g.seq(s, g.uniform(0, 3));
      diverging += sq.tail() == MpSeq::Tail::Diverging ? 1 : 0;
      std::vector<XReal> ints;
      for (const auto& term : sq.terms()) ints.push_back(integrate(m, term));
      const MpExpr e = MpExpr::sup(sq);
      const XReal lhs = integrate(m, e), sup = sup_of_prefix(ints, sq), orc = integrate_oracle(m, pointwise(e));
      t.expect(lhs == sup && sup == orc, [&] { return e.str() + ": " + lhs.str() + ", " + sup.str() + ", " + orc.str(); });
    }
    t.note = std::to_string(diverging) + " diverging tails";
  });

  all &= criterion(8, "Change of measure", [&](Tally& t) {
    for (int i = 0; i < 500; ++i) {
      const Carrier y = g.carrier(g.uniform(1, 6), "y");
      const SigmaAlgebra sy = generate_sigma(g.generators(y, 3));
      const Carrier x = g.carrier(g.uniform(1, 6), "x");
      const PointMap h = g.point_map(x, y);
      SetCollection gx = g.generators(x, 2);
      for (const auto& atom : sy.atoms()) gx.insert(h.preimage(atom));
      const AtomicMeasure m = g.finite_measure(generate_sigma(gx));
      const MpExpr e = g.expr(sy, g.uniform(0, 4));
      const AuditReport r = change_of_measure_check(h, m, sy, e);
      t.expect(r.passed(), [&] { return "g = " + e.str(); });
    }
  });

  all &= criterion(9, "Uniqueness and its failure mode", [&](Tally& t) {
    std::size_t agreeing = 0;
    for (int i = 0; i < 500; ++i) {
      const ProductSpace ps = g.product_space(4);
      const AtomicMeasure m1 = g.finite_measure(ps.sigma1()), m2 = g.finite_measure(ps.sigma2());
      const MeasureTable p = MeasureTable::from_measure(prod_measure(m1, m2, ps));
      // full rank: box values pin down every atom, so no differing table agrees on boxes
      t.expect(box_rank(ps) == ps.sigma().atom_count(), [&] { return "box values do not determine the atoms"; });
      // random candidates, one of them the product built on the swapped space
      const AtomicMeasure cand = g.finite_measure(ps.sigma());
      const ProductSpace sw = ps.swapped();
      const MeasureTable pushed =
          image_measure(prod_measure(m2, m1, sw), PointMap::swap(sw.product_carrier()), ps.sigma());
      for (const MeasureTable* c : {&pushed, static_cast<const MeasureTable*>(nullptr)}) {
        const MeasureTable other = c ? *c : MeasureTable::from_measure(cand);
        const AuditReport r = uniqueness_check(p, other, ps);
        const bool boxes = r.verdict("box-agreement") == Verdict::Pass;
        agreeing += boxes ? 1 : 0;
        t.expect(!boxes || r.verdict("sigma-agreement") == Verdict::Pass,
                 [&] { return "box-agreeing finite tables differ on " + r.find("sigma-agreement")->witness.value_or("?"); });
      }
    }

    const Carrier y1({"p", "q"}), y2({"u", "v"});
    const ProductSpace sp(SetCollection(y1, {Subset::of_labels(y1, {"p"})}),
                          SetCollection(y2, {Subset::of_labels(y2, {"u"})}));
    const Subset pu = Subset::of_labels(sp.carrier(), {"(p,u)"});
    std::vector<XReal> wa, wb;
    for (const auto& atom : sp.sigma().atoms()) {
      wa.push_back(atom == pu ? inf : XReal(1));
      wb.push_back(atom == pu ? inf : XReal(2));
    }
    const AtomicMeasure ma(sp.sigma(), wa), mb(sp.sigma(), wb);
    const AuditReport r = uniqueness_check(MeasureTable::from_measure(ma), MeasureTable::from_measure(mb), sp);
    t.expect(r.verdict("box-agreement") == Verdict::Pass, [] { return std::string("counterexample boxes disagree"); });
    t.expect(r.verdict("sigma-agreement") == Verdict::Fail, [] { return std::string("counterexample not detected"); });
    t.expect(!is_sigma_finite(ma, SigmaFiniteWitness::whole(sp.carrier())), [] { return std::string("counterexample is sigma-finite"); });
    t.note = std::to_string(agreeing) + " box-agreeing candidates, infinite counterexample differs on " +
             r.find("sigma-agreement")->witness.value_or("?");
  });

  all &= criterion(10, "Sections on 4x4 carriers", [&](Tally& t) {
    const Carrier x1({"a", "b", "c", "d"}), x2({"u", "v", "w", "z"});
    const ProductCarrier pc(x1, x2);
    const Bits full = pc.carrier().full_bits();
    const Bits full2 = x2.full_bits();
    auto sec = [&](std::size_t x, Bits a) { return section_set(x, Subset(pc.carrier(), a), pc).bits(); };

    // commutation identities; every set, with partners drawn per set
    std::mt19937_64& rng = g.engine();
    for (Bits a = 0; a <= full; ++a) {
      const Bits b = rng() & full, c = rng() & full;
      for (std::size_t x = 0; x < 4; ++x) {
        const Bits sa = sec(x, a), sb = sec(x, b);
        t.expect(sa == oracle::section_bits(x, a, 4, 4), [&] { return "section of " + std::to_string(a); });
        t.expect(sec(x, full & ~a) == (full2 & ~sa), [&] { return "complement " + std::to_string(a); });
        t.expect(sec(x, a | b) == (sa | sb) && sec(x, a & b) == (sa & sb), [&] { return "union/intersection"; });
        t.expect((sec(x, a | b) & ~sec(x, a | b | c)) == 0, [&] { return "monotone"; });
        // chain a & b & c within a & b within a, and its union
        const Bits c0 = a & b & c, c1 = a & b, c2 = a;
        t.expect(sec(x, c0 | c1 | c2) == (sec(x, c0) | sec(x, c1) | sec(x, c2)) &&
                     sec(x, c0 & c1 & c2) == (sec(x, c0) & sec(x, c1) & sec(x, c2)),
                 [&] { return "chain"; });
      }
      if (a == full) break;
    }
    for (std::size_t x = 0; x < 4; ++x) t.expect(sec(x, 0) == 0, [] { return "empty"; });

    // measurability, mplus of meas_section, restricted sup identity
    std::vector<std::pair<SetCollection, SetCollection>> gens;
    SetCollection disc1(x1), disc2(x2);
    for (std::size_t i = 0; i < 4; ++i) {
      disc1.insert(Subset(x1, Bits{1} << i));
      disc2.insert(Subset(x2, Bits{1} << i));
    }
    gens.emplace_back(disc1, disc2);
    for (int i = 0; i < 24; ++i) gens.emplace_back(g.generators(x1, 3), g.generators(x2, 3));
    std::size_t members = 0;
    for (const auto& [g1, g2] : gens) {
      const ProductSpace ps(g1, g2);
      const AtomicMeasure m2 = g.finite_measure(ps.sigma2());
      SigmaFiniteWitness w;
      Subset b = Subset::empty(x2);
      while (!(b == Subset::full(x2))) {
        b = b | g.measurable_set(ps.sigma2());
        w.chain.push_back(b);
      }
      std::vector<AtomicMeasure> restricted;
      for (const auto& bn : w.chain) restricted.push_back(restrict(m2, bn));
      for (const auto& a : ps.sigma().members()) {
        ++members;
        for (std::size_t x = 0; x < 4; ++x) {
          const Subset s = section_set(x, a, ps.product_carrier());
          t.expect(ps.sigma2().contains(s), [&] { return "section of " + a.str() + " not measurable"; });
        }
        const PointwiseFn ms = meas_section(m2, a, ps);
        t.expect(mplus_check(ms, ps.sigma1()), [&] { return "meas_section of " + a.str(); });
        std::vector<XReal> sup(4, XReal(0));
        for (const auto& mr : restricted) {
          const PointwiseFn f = meas_section(mr, a, ps);
          for (std::size_t x = 0; x < 4; ++x) sup[x] = xr_max(sup[x], f(x));
        }
        t.expect(sup == ms.values, [&] { return "restricted sup at " + a.str(); });
      }
    }
    t.note = "all 65536 subsets for the commutation identities, " + std::to_string(members) + " product-sigma members over " +
             std::to_string(gens.size()) + " generator pairs";
  });

  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILURES");
  return all ? 0 : 1;
}
