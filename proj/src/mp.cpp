#include "lebesgue/mp.hpp"

#include <algorithm>
#include <set>

namespace lebesgue {

struct MpExpr::Node {
  Kind kind;
  Carrier carrier;
  std::optional<Subset> set;
  Rational coefficient;
  std::vector<MpExpr> children;
  std::optional<MpSeq> seq;
};

MpExpr MpExpr::charac(Subset a) {
  Carrier c = a.carrier();
  return MpExpr(std::make_shared<const Node>(Node{Kind::Charac, std::move(c), std::move(a), {}, {}, std::nullopt}));
}

MpExpr MpExpr::scal(Rational a, MpExpr e) {
  a.canonicalize();
  if (sgn(a) < 0) throw KernelError(ErrorCode::NegativeValue, "scaling coefficient " + a.get_str());
  Carrier c = e.carrier();
  return MpExpr(std::make_shared<const Node>(Node{Kind::Scal, std::move(c), std::nullopt, std::move(a), {std::move(e)}, std::nullopt}));
}

MpExpr MpExpr::add(MpExpr e1, MpExpr e2) {
  require_same_carrier(e1.carrier(), e2.carrier(), "sum of expressions");
  Carrier c = e1.carrier();
  return MpExpr(std::make_shared<const Node>(
      Node{Kind::Add, std::move(c), std::nullopt, {}, {std::move(e1), std::move(e2)}, std::nullopt}));
}

MpExpr MpExpr::sup(MpSeq s) {
  Carrier c = s.carrier();
  return MpExpr(std::make_shared<const Node>(Node{Kind::Sup, std::move(c), std::nullopt, {}, {}, std::move(s)}));
}

MpExpr::Kind MpExpr::kind() const { return node().kind; }
const Carrier& MpExpr::carrier() const { return node().carrier; }

namespace {
void expect_kind(MpExpr::Kind actual, MpExpr::Kind wanted) {
  if (actual != wanted) throw KernelError(ErrorCode::InvalidArgument, "expression accessor used on the wrong node kind");
}
}  // namespace

const Subset& MpExpr::set() const {
  expect_kind(kind(), Kind::Charac);
  return *node().set;
}
const Rational& MpExpr::coefficient() const {
  expect_kind(kind(), Kind::Scal);
  return node().coefficient;
}
const MpExpr& MpExpr::child() const {
  expect_kind(kind(), Kind::Scal);
  return node().children[0];
}
const MpExpr& MpExpr::left() const {
  expect_kind(kind(), Kind::Add);
  return node().children[0];
}
const MpExpr& MpExpr::right() const {
  expect_kind(kind(), Kind::Add);
  return node().children[1];
}
const MpSeq& MpExpr::seq() const {
  expect_kind(kind(), Kind::Sup);
  return *node().seq;
}

std::string MpExpr::str() const {
  return lebesgue_fold<std::string>(
      {
          [](const Subset& a) { return "charac" + a.str(); },
          [](const Rational& a, const std::string& r) { return "scal(" + a.get_str() + ", " + r + ")"; },
          [](const std::string& l, const std::string& r) { return "add(" + l + ", " + r + ")"; },
          [](const std::vector<std::string>& ts, const MpSeq& s) {
            std::string out = "sup[";
            for (std::size_t i = 0; i < ts.size(); ++i) out += (i > 0 ? ", " : "") + ts[i];
            out += "]";
            if (s.tail() == MpSeq::Tail::Stabilized) return out + "@" + std::to_string(s.stable_at());
            return out + "^inf" + s.divergence_set().str();
          },
      },
      *this);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<PointwiseFn> evaluate_terms(const std::vector<MpExpr>& terms) {
  if (terms.empty()) throw KernelError(ErrorCode::InvalidArgument, "sequence with no terms");
  std::vector<PointwiseFn> values;
  values.reserve(terms.size());
  for (const MpExpr& t : terms) {
    require_same_carrier(terms.front().carrier(), t.carrier(), "sequence terms");
    values.push_back(pointwise(t));
  }
  return values;
}

void require_nondecreasing(const std::vector<PointwiseFn>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    for (std::size_t x = 0; x < values[i].values.size(); ++x) {
      if (values[i](x) < values[i - 1](x)) {
        throw KernelError(ErrorCode::NonMonotoneSequence, "term " + std::to_string(i) + " decreases at " +
                                                              values[i].carrier.label(x));
      }
    }
  }
}

Subset derived_divergence(const std::vector<PointwiseFn>& values) {
  if (values.size() < 2) throw KernelError(ErrorCode::NonMonotoneSequence, "a diverging sequence needs two terms");
  const PointwiseFn& prev = values[values.size() - 2];
  const PointwiseFn& last = values.back();
  Bits d = 0;
  for (std::size_t x = 0; x < last.values.size(); ++x) {
    if (prev(x) < last(x)) {
      if (!last(x).is_finite()) {
        throw KernelError(ErrorCode::NonMonotoneSequence,
                          "last term is infinite where the sequence still grows, at " + last.carrier.label(x));
      }
      d |= Bits{1} << x;
    }
  }
  return Subset(last.carrier, d);
}

}  // namespace

MpSeq MpSeq::stabilized(std::vector<MpExpr> terms, std::size_t stable_at) {
  const auto values = evaluate_terms(terms);
  if (stable_at >= terms.size()) {
    throw KernelError(ErrorCode::InvalidArgument, "stabilization index " + std::to_string(stable_at) +
                                                      " outside a prefix of " + std::to_string(terms.size()));
  }
  require_nondecreasing(values);
  for (std::size_t i = stable_at + 1; i < values.size(); ++i) {
    if (!(values[i] == values[stable_at])) {
      throw KernelError(ErrorCode::NonMonotoneSequence,
                        "term " + std::to_string(i) + " differs from the declared stable term " + std::to_string(stable_at));
    }
  }
  Subset none = Subset::empty(values.front().carrier);
  return MpSeq(std::move(terms), Tail::Stabilized, stable_at, std::move(none));
}

MpSeq MpSeq::diverging(std::vector<MpExpr> terms) {
  const auto values = evaluate_terms(terms);
  require_nondecreasing(values);
  Subset d = derived_divergence(values);
  const std::size_t last = terms.size() - 1;
  return MpSeq(std::move(terms), Tail::Diverging, last, std::move(d));
}

MpSeq MpSeq::diverging(std::vector<MpExpr> terms, const Subset& d) {
  MpSeq s = diverging(std::move(terms));
  require_same_carrier(s.carrier(), d.carrier(), "divergence set");
  if (!(s.divergence_set() == d)) {
    throw KernelError(ErrorCode::NonMonotoneSequence,
                      "declared divergence set " + d.str() + " differs from " + s.divergence_set().str());
  }
  return s;
}

// ---------------------------------------------------------------------------

XReal sup_of_prefix(const std::vector<XReal>& prefix, const MpSeq& seq) {
  if (seq.tail() == MpSeq::Tail::Stabilized) return xr_sup(XRealSeq::stabilized(prefix, seq.stable_at()));
  const XReal& last = prefix.back();
  const XReal& prev = prefix[prefix.size() - 2];
  if (last.is_pos_inf() || prev < last) return XReal::pos_inf();
  return last;
}

XReal eval(const MpExpr& e, std::size_t x) {
  if (x >= e.carrier().size()) throw KernelError(ErrorCode::InvalidArgument, "evaluation point out of range");
  return lebesgue_fold<XReal>(
      {
          [x](const Subset& a) { return XReal(a.contains(x) ? 1 : 0); },
          [](const Rational& a, const XReal& r) { return XReal(a) * r; },
          [](const XReal& l, const XReal& r) { return l + r; },
          [](const std::vector<XReal>& ts, const MpSeq& s) { return sup_of_prefix(ts, s); },
      },
      e);
}

PointwiseFn pointwise(const MpExpr& e) {
  using Values = std::vector<XReal>;
  Values v = lebesgue_fold<Values>(
      {
          [](const Subset& a) {
            Values out(a.carrier().size(), XReal(0));
            for (std::size_t x : a.points()) out[x] = XReal(1);
            return out;
          },
          [](const Rational& a, const Values& r) {
            Values out;
            out.reserve(r.size());
            for (const auto& v : r) out.push_back(XReal(a) * v);
            return out;
          },
          [](const Values& l, const Values& r) {
            Values out;
            out.reserve(l.size());
            for (std::size_t x = 0; x < l.size(); ++x) out.push_back(l[x] + r[x]);
            return out;
          },
          [](const std::vector<Values>& ts, const MpSeq& s) {
            Values out;
            std::vector<XReal> column(ts.size());
            for (std::size_t x = 0; x < ts.front().size(); ++x) {
              for (std::size_t i = 0; i < ts.size(); ++i) column[i] = ts[i][x];
              out.push_back(sup_of_prefix(column, s));
            }
            return out;
          },
      },
      e);
  return PointwiseFn(e.carrier(), std::move(v));
}

std::size_t depth(const MpExpr& e) {
  return lebesgue_fold<std::size_t>(
      {
          [](const Subset&) { return std::size_t{0}; },
          [](const Rational&, std::size_t r) { return r + 1; },
          [](std::size_t l, std::size_t r) { return std::max(l, r) + 1; },
          [](const std::vector<std::size_t>& ts, const MpSeq&) { return *std::max_element(ts.begin(), ts.end()) + 1; },
      },
      e);
}

std::size_t node_count(const MpExpr& e) {
  return lebesgue_fold<std::size_t>(
      {
          [](const Subset&) { return std::size_t{1}; },
          [](const Rational&, std::size_t r) { return r + 1; },
          [](std::size_t l, std::size_t r) { return l + r + 1; },
          [](const std::vector<std::size_t>& ts, const MpSeq&) {
            std::size_t n = 1;
            for (std::size_t t : ts) n += t;
            return n;
          },
      },
      e);
}

void check_well_formed(const MpExpr& e, const SigmaAlgebra& sigma) {
  require_same_carrier(e.carrier(), sigma.carrier(), "expression and sigma-algebra");
  lebesgue_fold<int>(
      {
          [&sigma](const Subset& a) {
            if (!sigma.contains(a)) throw KernelError(ErrorCode::NotMeasurable, "indicator of " + a.str());
            return 0;
          },
          [](const Rational&, int) { return 0; },
          [](int, int) { return 0; },
          [](const std::vector<int>&, const MpSeq&) { return 0; },
      },
      e);
}

MpExpr map_sets(const MpExpr& e, const std::function<Subset(const Subset&)>& f) {
  return lebesgue_fold<MpExpr>(
      {
          [&f](const Subset& a) { return MpExpr::charac(f(a)); },
          [](const Rational& a, const MpExpr& r) { return MpExpr::scal(a, r); },
          [](const MpExpr& l, const MpExpr& r) { return MpExpr::add(l, r); },
          [](const std::vector<MpExpr>& ts, const MpSeq& s) {
            if (s.tail() == MpSeq::Tail::Stabilized) return MpExpr::sup(MpSeq::stabilized(ts, s.stable_at()));
            return MpExpr::sup(MpSeq::diverging(ts));
          },
      },
      e);
}

XReal integrate(const AtomicMeasure& m, const MpExpr& e) {
  require_same_carrier(m.carrier(), e.carrier(), "integrand and measure");
  return lebesgue_fold<XReal>(
      {
          [&m](const Subset& a) {
            if (!m.sigma().contains(a)) throw KernelError(ErrorCode::NotMeasurable, "indicator of " + a.str());
            return measure_of(m, a);
          },
          [](const Rational& a, const XReal& r) { return XReal(a) * r; },
          [](const XReal& l, const XReal& r) { return l + r; },
          [](const std::vector<XReal>& ts, const MpSeq& s) { return sup_of_prefix(ts, s); },
      },
      e);
}

namespace {

// Throws NotMeasurablePointwise unless f is constant on every atom.
void require_atom_constant(const PointwiseFn& f, const SigmaAlgebra& sigma) {
  require_same_carrier(f.carrier, sigma.carrier(), "function and sigma-algebra");
  for (const Subset& atom : sigma.atoms()) {
    const auto pts = atom.points();
    for (std::size_t x : pts) {
      if (!(f(x) == f(pts.front()))) {
        throw KernelError(ErrorCode::NotMeasurablePointwise,
                          "function takes different values on atom " + atom.str());
      }
    }
  }
}

}  // namespace

XReal integrate_oracle(const AtomicMeasure& m, const PointwiseFn& f) {
  require_atom_constant(f, m.sigma());
  if (!f.is_nonneg()) throw KernelError(ErrorCode::NegativeValue, "integrand " + f.str());
  XReal sum(0);
  const auto& atoms = m.sigma().atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    sum = sum + f(atoms[k].points().front()) * m.atom_weight(k);
  }
  return sum;
}

SimpleFn mk_adapted_seq(const PointwiseFn& f, const SigmaAlgebra& sigma, unsigned n) {
  require_atom_constant(f, sigma);
  if (!f.is_nonneg()) throw KernelError(ErrorCode::NegativeValue, "function " + f.str());
  const Rational cap(static_cast<unsigned long>(n));
  mpz_class scale(1);
  scale <<= n;
  std::vector<Rational> phi;
  phi.reserve(f.values.size());
  for (const XReal& v : f.values) {
    if (v.is_pos_inf()) {
      phi.push_back(cap);
      continue;
    }
    mpz_class floored;
    const mpz_class numerator = v.value().get_num() * scale;
    mpz_fdiv_q(floored.get_mpz_t(), numerator.get_mpz_t(), v.value().get_den_mpz_t());
    Rational truncated(floored, scale);
    truncated.canonicalize();
    phi.push_back(truncated < cap ? truncated : cap);
  }
  return canonicalize(phi, sigma);
}

bool mplus_check(const PointwiseFn& f, const SigmaAlgebra& sigma) {
  if (!(f.carrier == sigma.carrier())) return false;
  if (!f.is_nonneg()) return false;
  std::set<XReal> range(f.values.begin(), f.values.end());
  return std::all_of(range.begin(), range.end(),
                     [&](const XReal& a) { return sigma.contains(f.upper_level_set(a)); });
}

MpExpr from_simple(const SimpleFn& f) {
  std::vector<std::pair<Rational, Subset>> steps;
  SimpleFn current = f;
  while (current.values().size() >= 2) {
    ConsReduction r = sf_cons_reduce(current);
    steps.emplace_back(r.gap, r.d);
    current = r.g;
  }
  MpExpr e = MpExpr::scal(current.values().front(), MpExpr::charac(Subset::full(f.carrier())));
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    e = MpExpr::add(e, MpExpr::scal(it->first, MpExpr::charac(it->second)));
  }
  return e;
}

MpExpr from_pointwise(const PointwiseFn& f, const SigmaAlgebra& sigma) {
  if (!mplus_check(f, sigma)) {
    require_same_carrier(f.carrier, sigma.carrier(), "function and sigma-algebra");
    throw KernelError(ErrorCode::NotMeasurablePointwise, "function " + f.str() + " is not in M+");
  }
  const Subset infinite = f.upper_level_set(XReal::pos_inf());
  if (infinite.is_empty()) {
    std::vector<Rational> values;
    for (const XReal& v : f.values) values.push_back(v.value());
    return from_simple(canonicalize(values, sigma));
  }
  // Off the infinite set the terms equal f; on it they follow the adapted
  // sequence, which is n there.
  std::vector<MpExpr> terms;
  for (unsigned n : {1U, 2U}) {
    const SimpleFn phi = mk_adapted_seq(f, sigma, n);
    std::vector<Rational> psi;
    for (std::size_t x = 0; x < f.values.size(); ++x) psi.push_back(f(x).is_finite() ? f(x).value() : phi(x));
    terms.push_back(from_simple(canonicalize(psi, sigma)));
  }
  return MpExpr::sup(MpSeq::diverging(std::move(terms), infinite));
}

}  // namespace lebesgue
