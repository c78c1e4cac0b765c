#include "lebesgue/xreal.hpp"

#include <sstream>

namespace lebesgue {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndeterminateSum: return "IndeterminateSum";
    case ErrorCode::UnboundedSequence: return "UnboundedSequence";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::NotMeasurable: return "NotMeasurable";
    case ErrorCode::NotMeasurableMap: return "NotMeasurableMap";
    case ErrorCode::NotMeasurablePointwise: return "NotMeasurablePointwise";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::NonMeasurableLevelSet: return "NonMeasurableLevelSet";
    case ErrorCode::TooFewValues: return "TooFewValues";
    case ErrorCode::NonMonotoneSequence: return "NonMonotoneSequence";
    case ErrorCode::NotSigmaFinite: return "NotSigmaFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace mutation {
namespace {
thread_local ZeroTimesInfinity g_zero_times_infinity = ZeroTimesInfinity::Zero;
}

ZeroTimesInfinity zero_times_infinity() { return g_zero_times_infinity; }

ScopedZeroTimesInfinity::ScopedZeroTimesInfinity(ZeroTimesInfinity rule)
    : previous_(g_zero_times_infinity) {
  g_zero_times_infinity = rule;
}

ScopedZeroTimesInfinity::~ScopedZeroTimesInfinity() { g_zero_times_infinity = previous_; }

}  // namespace mutation

XReal XReal::fin(long num, long den) {
  if (den == 0) throw KernelError(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return XReal(q);
}

const Rational& XReal::value() const {
  if (kind_ != Kind::Fin) throw KernelError(ErrorCode::InvalidArgument, "value() of an infinite XReal");
  return value_;
}

std::string XReal::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Fin: break;
  }
  return value_.get_str();
}

bool operator==(const XReal& x, const XReal& y) {
  if (x.kind_ != y.kind_) return false;
  return x.kind_ != XReal::Kind::Fin || x.value_ == y.value_;
}

std::strong_ordering operator<=>(const XReal& x, const XReal& y) {
  if (x.kind_ != y.kind_) return static_cast<int>(x.kind_) <=> static_cast<int>(y.kind_);
  if (x.kind_ != XReal::Kind::Fin) return std::strong_ordering::equal;
  const int c = cmp(x.value_, y.value_);
  return c <=> 0;
}

XReal xr_add(const XReal& x, const XReal& y) {
  if ((x.is_pos_inf() && y.is_neg_inf()) || (x.is_neg_inf() && y.is_pos_inf())) {
    throw KernelError(ErrorCode::IndeterminateSum, "inf + -inf");
  }
  if (!x.is_finite()) return x;
  if (!y.is_finite()) return y;
  return XReal(Rational(x.value() + y.value()));
}

XReal xr_mult(const XReal& x, const XReal& y) {
  if (x.is_finite() && y.is_finite()) return XReal(Rational(x.value() * y.value()));
  if (x.is_zero() || y.is_zero()) {
    if (mutation::zero_times_infinity() == mutation::ZeroTimesInfinity::Zero) return XReal(0);
    return XReal::pos_inf();
  }
  const int sx = x.is_finite() ? sgn(x.value()) : (x.is_pos_inf() ? 1 : -1);
  const int sy = y.is_finite() ? sgn(y.value()) : (y.is_pos_inf() ? 1 : -1);
  return sx * sy > 0 ? XReal::pos_inf() : XReal::neg_inf();
}

XReal xr_max(const XReal& x, const XReal& y) { return x < y ? y : x; }
XReal xr_min(const XReal& x, const XReal& y) { return y < x ? y : x; }

std::ostream& operator<<(std::ostream& os, const XReal& x) { return os << x.str(); }

XReal xr_sup(const XRealSeq& s) {
  if (!s.stable_at) throw KernelError(ErrorCode::UnboundedSequence, "sequence has no stabilization index");
  const std::size_t k = *s.stable_at;
  if (k >= s.terms.size()) {
    std::ostringstream msg;
    msg << "stabilization index " << k << " outside a prefix of length " << s.terms.size();
    throw KernelError(ErrorCode::InvalidArgument, msg.str());
  }
  XReal best = s.terms[0];
  for (std::size_t i = 1; i <= k; ++i) best = xr_max(best, s.terms[i]);
  return best;
}

}  // namespace lebesgue
