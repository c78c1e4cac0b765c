#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lebesgue/measure.hpp"
#include "lebesgue/pointwise.hpp"
#include "lebesgue/simplefn.hpp"

namespace lebesgue {

class MpSeq;

/// Expression for a nonnegative measurable function, built from indicators
/// by nonnegative scaling, addition and suprema of nondecreasing sequences.
/// Immutable; copies share structure.
class MpExpr {
 public:
  enum class Kind { Charac, Scal, Add, Sup };

  static MpExpr charac(Subset a);
  /// Throws NegativeValue for a < 0.
  static MpExpr scal(Rational a, MpExpr e);
  /// Throws CarrierMismatch when the operands live on different carriers.
  static MpExpr add(MpExpr e1, MpExpr e2);
  static MpExpr sup(MpSeq s);

  Kind kind() const;
  const Carrier& carrier() const;

  const Subset& set() const;             // Charac
  const Rational& coefficient() const;   // Scal
  const MpExpr& child() const;           // Scal
  const MpExpr& left() const;            // Add
  const MpExpr& right() const;           // Add
  const MpSeq& seq() const;              // Sup

  std::string str() const;

 private:
  struct Node;
  explicit MpExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }

  std::shared_ptr<const Node> node_;
};

/// A nondecreasing sequence of expressions known through a finite prefix.
///
/// Two tails are supported:
///  - stabilized at k: every term past k equals term k;
///  - diverging on D: past the prefix the sequence continues as
///    f_last + j * (f_last - f_prev), where D = {f_prev < f_last} and f_last is
///    finite on D. Its supremum is +inf on D and f_last elsewhere.
///
/// Monotonicity and the tail declaration are validated on construction by
/// evaluating the prefix on the whole carrier; violations throw
/// NonMonotoneSequence.
class MpSeq {
 public:
  enum class Tail { Stabilized, Diverging };

  static MpSeq stabilized(std::vector<MpExpr> terms, std::size_t stable_at);
  /// Divergence set derived from the last two terms.
  static MpSeq diverging(std::vector<MpExpr> terms);
  /// Checks that `d` is exactly the derived divergence set.
  static MpSeq diverging(std::vector<MpExpr> terms, const Subset& d);

  const std::vector<MpExpr>& terms() const { return terms_; }
  Tail tail() const { return tail_; }
  std::size_t stable_at() const { return stable_at_; }
  /// Empty for stabilized sequences.
  const Subset& divergence_set() const { return divergence_; }
  const Carrier& carrier() const { return terms_.front().carrier(); }

 private:
  MpSeq(std::vector<MpExpr> terms, Tail tail, std::size_t stable_at, Subset divergence)
      : terms_(std::move(terms)), tail_(tail), stable_at_(stable_at), divergence_(std::move(divergence)) {}

  std::vector<MpExpr> terms_;
  Tail tail_;
  std::size_t stable_at_;
  Subset divergence_;
};

/// Handlers of the Lebesgue induction principle: one per constructor.
template <class T>
struct FoldHandlers {
  std::function<T(const Subset&)> on_charac;
  std::function<T(const Rational&, const T&)> on_scal;
  std::function<T(const T&, const T&)> on_add;
  std::function<T(const std::vector<T>&, const MpSeq&)> on_sup;
};

/// Structural recursion over an expression: every constructor is handed the
/// results already computed for its children.
template <class T>
T lebesgue_fold(const FoldHandlers<T>& h, const MpExpr& e) {
  switch (e.kind()) {
    case MpExpr::Kind::Charac:
      return h.on_charac(e.set());
    case MpExpr::Kind::Scal:
      return h.on_scal(e.coefficient(), lebesgue_fold(h, e.child()));
    case MpExpr::Kind::Add: {
      T l = lebesgue_fold(h, e.left());
      T r = lebesgue_fold(h, e.right());
      return h.on_add(l, r);
    }
    case MpExpr::Kind::Sup: {
      std::vector<T> rs;
      rs.reserve(e.seq().terms().size());
      for (const MpExpr& t : e.seq().terms()) rs.push_back(lebesgue_fold(h, t));
      return h.on_sup(rs, e.seq());
    }
  }
  throw KernelError(ErrorCode::InvalidArgument, "unknown expression kind");
}

/// Supremum of a nondecreasing sequence described by `seq`'s tail, given the
/// values of its prefix terms.
XReal sup_of_prefix(const std::vector<XReal>& prefix, const MpSeq& seq);

XReal eval(const MpExpr& e, std::size_t x);
PointwiseFn pointwise(const MpExpr& e);

std::size_t depth(const MpExpr& e);
std::size_t node_count(const MpExpr& e);

/// Throws NotMeasurable naming the first indicator set outside `sigma`.
void check_well_formed(const MpExpr& e, const SigmaAlgebra& sigma);

/// Rebuilds `e` with every indicator set passed through `f`. The sets
/// returned by `f` must all share one carrier.
MpExpr map_sets(const MpExpr& e, const std::function<Subset(const Subset&)>& f);

/// Integral by structural recursion: measure of the set for an indicator,
/// linearity for scaling and sums, and monotone convergence for suprema.
XReal integrate(const AtomicMeasure& m, const MpExpr& e);

/// Integral of an atom-constant function as the sum of value times atom
/// weight. Throws NotMeasurablePointwise when f splits an atom.
XReal integrate_oracle(const AtomicMeasure& m, const PointwiseFn& f);

/// Dyadic truncation min(floor(2^n f) / 2^n, n), with n where f = +inf.
SimpleFn mk_adapted_seq(const PointwiseFn& f, const SigmaAlgebra& sigma, unsigned n);

/// Nonnegative, and every upper level set {f >= a} is measurable.
bool mplus_check(const PointwiseFn& f, const SigmaAlgebra& sigma);

/// f = c + sum of gap_i * indicator(D_i), built by repeated sf_cons_reduce.
MpExpr from_simple(const SimpleFn& f);

/// An expression evaluating to f everywhere. Finite functions go through
/// their canonical simple form; +inf values produce a diverging supremum.
MpExpr from_pointwise(const PointwiseFn& f, const SigmaAlgebra& sigma);

}  // namespace lebesgue
