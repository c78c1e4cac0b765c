#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lebesgue/measure.hpp"
#include "lebesgue/mp.hpp"
#include "lebesgue/product.hpp"
#include "lebesgue/simplefn.hpp"

namespace lebesgue::io {

// Ordered so that reports serialize with a fixed key order.
using Json = nlohmann::ordered_json;

// Every parse function throws KernelError(ParseError) with a message naming
// the offending value. Measurability and sequence validation keep their own
// codes (NotMeasurable, NonMonotoneSequence, ...).

/// "inf", "-inf", or {"num": n, "den": d} with d > 0.
Json to_json(const XReal& x);
XReal xreal_from_json(const Json& j);
Json to_json(const Rational& q);
/// {"num", "den"}, a bare integer, or a "p/q" string.
Rational rational_from_json(const Json& j);

Carrier carrier_from_json(const Json& j);
Json to_json(const Subset& s);
Subset subset_from_json(const Json& j, const Carrier& c);
/// A subset of X1 x X2: an array whose items are [l1, l2] pairs or "(l1,l2)"
/// labels, or {"box": [[labels of X1], [labels of X2]]}.
Subset product_subset_from_json(const Json& j, const ProductCarrier& pc);
SetCollection collection_from_json(const Json& j, const Carrier& c);
Json to_json(const SetCollection& c);

/// {"a,b": weight, ...}: one key per atom, naming its points.
AtomicMeasure measure_from_json(const Json& j, const SigmaAlgebra& sigma);
Json to_json(const AtomicMeasure& m);
SigmaFiniteWitness witness_from_json(const Json& j, const Carrier& c);

using SubsetParser = std::function<Subset(const Json&)>;
/// {"charac": subset} | {"scal": [rational, expr]} | {"add": [expr, expr]} |
/// {"sup": {"terms": [...], "stable_at": k}} | {"sup": {"terms": [...], "diverges_at": subset}}
MpExpr expr_from_json(const Json& j, const SubsetParser& parse_subset);
Json to_json(const MpExpr& e);

/// {"values": [rational...], "preimages": [[labels]...]}
SimpleFn simplefn_from_json(const Json& j, const SigmaAlgebra& sigma);
Json to_json(const SimpleFn& f);

Json to_json(const AuditReport& r);
Json to_json(const TonelliReport& r);

/// One run of the checker, as read from a spec file.
struct ProblemSpec {
  ProductSpace space;
  AtomicMeasure m1;
  AtomicMeasure m2;
  SigmaFiniteWitness w1;
  SigmaFiniteWitness w2;
  MpExpr expr;
  std::vector<std::string> audits;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& known_audits() {
  static const std::vector<std::string> names{"tonelli", "box", "swap", "measure",
                                              "uniqueness", "change_of_measure", "monotone_class"};
  return names;
}

ProblemSpec parse_problem_spec(const Json& j);
ProblemSpec load_problem_spec(const std::string& path);

}  // namespace lebesgue::io
