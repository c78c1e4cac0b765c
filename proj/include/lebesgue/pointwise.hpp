#pragma once

#include <string>
#include <vector>

#include "lebesgue/setalg.hpp"
#include "lebesgue/xreal.hpp"

namespace lebesgue {

/// A function X -> extended reals, tabulated on every point of a finite carrier.
struct PointwiseFn {
  Carrier carrier;
  std::vector<XReal> values;

  PointwiseFn(Carrier c, std::vector<XReal> v) : carrier(std::move(c)), values(std::move(v)) {
    if (values.size() != carrier.size()) {
      throw KernelError(ErrorCode::InvalidArgument, "pointwise function length differs from its carrier");
    }
  }

  static PointwiseFn constant(const Carrier& c, const XReal& v) { return {c, std::vector<XReal>(c.size(), v)}; }

  const XReal& operator()(std::size_t x) const { return values.at(x); }

  bool is_nonneg() const {
    for (const auto& v : values) {
      if (!v.is_nonneg()) return false;
    }
    return true;
  }

  /// {x | f(x) >= a}.
  Subset upper_level_set(const XReal& a) const {
    Bits b = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= a) b |= Bits{1} << i;
    }
    return Subset(carrier, b);
  }

  friend bool operator==(const PointwiseFn& f, const PointwiseFn& g) {
    return f.carrier == g.carrier && f.values == g.values;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) s += ", ";
      s += carrier.label(i) + ": " + values[i].str();
    }
    return s + "}";
  }
};

}  // namespace lebesgue
