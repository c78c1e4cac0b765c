#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lebesgue/error.hpp"

namespace lebesgue {

using Rational = mpq_class;

/// Extended real number: -inf, an exact rational, or +inf.
///
/// Arithmetic follows the conventions of nonnegative integration: infinities
/// absorb finite summands, 0 * (+-inf) = 0, and inf - inf is rejected.
class XReal {
 public:
  enum class Kind { NegInf, Fin, PosInf };

  XReal() : kind_(Kind::Fin) {}
  XReal(const Rational& q) : kind_(Kind::Fin), value_(q) { value_.canonicalize(); }  // NOLINT
  XReal(long n) : kind_(Kind::Fin), value_(n) {}                                    // NOLINT
  XReal(int n) : kind_(Kind::Fin), value_(n) {}                                     // NOLINT

  static XReal pos_inf() { return XReal(Kind::PosInf); }
  static XReal neg_inf() { return XReal(Kind::NegInf); }
  static XReal fin(long num, long den = 1);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Fin; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_zero() const { return kind_ == Kind::Fin && sgn(value_) == 0; }
  bool is_nonneg() const { return kind_ == Kind::PosInf || (kind_ == Kind::Fin && sgn(value_) >= 0); }

  // Precondition: is_finite().
  const Rational& value() const;

  std::string str() const;

  friend bool operator==(const XReal& x, const XReal& y);
  friend std::strong_ordering operator<=>(const XReal& x, const XReal& y);

 private:
  explicit XReal(Kind k) : kind_(k) {}

  Kind kind_;
  Rational value_;
};

/// Sum; throws IndeterminateSum on +inf + -inf.
XReal xr_add(const XReal& x, const XReal& y);
/// Product with 0 * (+-inf) = 0.
XReal xr_mult(const XReal& x, const XReal& y);

inline XReal operator+(const XReal& x, const XReal& y) { return xr_add(x, y); }
inline XReal operator*(const XReal& x, const XReal& y) { return xr_mult(x, y); }

XReal xr_max(const XReal& x, const XReal& y);
XReal xr_min(const XReal& x, const XReal& y);

std::ostream& operator<<(std::ostream& os, const XReal& x);

/// A sequence known through a finite prefix. `stable_at = k` declares that
/// every term past index k equals terms[k]; an empty optional marks a sequence
/// with no such declaration.
struct XRealSeq {
  std::vector<XReal> terms;
  std::optional<std::size_t> stable_at;

  static XRealSeq stabilized(std::vector<XReal> terms, std::size_t k) { return {std::move(terms), k}; }
  static XRealSeq unbounded(std::vector<XReal> terms) { return {std::move(terms), std::nullopt}; }
};

/// Supremum of a stabilized sequence: the max of terms[0..k].
/// Throws UnboundedSequence when no stabilization index is declared.
XReal xr_sup(const XRealSeq& s);

namespace mutation {

enum class ZeroTimesInfinity { Zero, Infinity };

ZeroTimesInfinity zero_times_infinity();

// Overrides the 0 * inf convention on the current thread. Only the selftest
// mutation smoke-test uses this.
class ScopedZeroTimesInfinity {
 public:
  explicit ScopedZeroTimesInfinity(ZeroTimesInfinity rule);
  ~ScopedZeroTimesInfinity();
  ScopedZeroTimesInfinity(const ScopedZeroTimesInfinity&) = delete;
  ScopedZeroTimesInfinity& operator=(const ScopedZeroTimesInfinity&) = delete;

 private:
  ZeroTimesInfinity previous_;
};

}  // namespace mutation

}  // namespace lebesgue
