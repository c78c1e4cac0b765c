#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lebesgue/audit.hpp"
#include "lebesgue/setalg.hpp"
#include "lebesgue/xreal.hpp"

namespace lebesgue {

/// A measure given by nonnegative weights on the atoms of its sigma-algebra.
/// Additivity holds by construction.
class AtomicMeasure {
 public:
  /// Throws NegativeValue on a negative weight and InvalidArgument when the
  /// weight count differs from the atom count.
  AtomicMeasure(SigmaAlgebra sigma, std::vector<XReal> weights);

  static AtomicMeasure zero(const SigmaAlgebra& sigma);
  static AtomicMeasure counting(const SigmaAlgebra& sigma);

  const SigmaAlgebra& sigma() const { return sigma_; }
  const Carrier& carrier() const { return sigma_.carrier(); }
  const std::vector<XReal>& weights() const { return weights_; }
  const XReal& atom_weight(std::size_t k) const { return weights_.at(k); }

 private:
  SigmaAlgebra sigma_;
  std::vector<XReal> weights_;
};

/// An arbitrary set function on the members of a sigma-algebra. Candidate
/// measures live here so that audits can see them violate the axioms.
class MeasureTable {
 public:
  explicit MeasureTable(SigmaAlgebra sigma);
  static MeasureTable from_measure(const AtomicMeasure& m);

  const SigmaAlgebra& sigma() const { return sigma_; }

  /// Throws NotMeasurable for a set outside the sigma-algebra.
  void set(const Subset& a, const XReal& value);
  const XReal& at(const Subset& a) const;

  /// Values keyed by bit pattern; every member of the sigma-algebra is present.
  const std::map<Bits, XReal>& values() const { return values_; }

 private:
  SigmaAlgebra sigma_;
  std::map<Bits, XReal> values_;
};

/// Chain B_0 within B_1 within ... within B_k = X of finite-measure sets.
struct SigmaFiniteWitness {
  std::vector<Subset> chain;

  static SigmaFiniteWitness whole(const Carrier& c) { return {{Subset::full(c)}}; }
};

/// A map between finite carriers: point i of the domain goes to image[i].
struct PointMap {
  Carrier domain;
  Carrier codomain;
  std::vector<std::size_t> image;

  static PointMap identity(const Carrier& c);
  static PointMap constant(const Carrier& domain, const Carrier& codomain, std::size_t target);
  static PointMap swap(const ProductCarrier& pc);

  Subset preimage(const Subset& b) const;
};

XReal measure_of(const AtomicMeasure& m, const Subset& a);
XReal total_mass(const AtomicMeasure& m);

struct MeasureAuditOptions {
  // Chains up to this length are enumerated exhaustively when the
  // sigma-algebra has at most `exhaustive_member_limit` members.
  std::size_t max_chain_length = 4;
  std::size_t exhaustive_member_limit = 64;
  std::size_t random_chains = 2000;
  std::uint64_t seed = 0x5eed;
};

/// Checks "nonnegative", "empty-zero", "finite-additivity",
/// "continuity-from-below" and "continuity-from-above". The last one only
/// considers nonincreasing chains with a finite-measure element.
AuditReport audit_measure(const MeasureTable& t, const MeasureAuditOptions& options = {});

/// A -> m(A intersect B). Throws NotMeasurable when B is not measurable.
AtomicMeasure restrict(const AtomicMeasure& m, const Subset& b);

/// B -> m(h^-1(B)) on every member of sigma_y, computed set by set. Throws
/// NotMeasurableMap naming a set of sigma_y whose preimage is not measurable.
MeasureTable image_measure(const AtomicMeasure& m, const PointMap& h, const SigmaAlgebra& sigma_y);
/// Same measure, built from the preimages of the atoms of sigma_y only.
AtomicMeasure image_measure_atomic(const AtomicMeasure& m, const PointMap& h, const SigmaAlgebra& sigma_y);

/// Reads the atom weights of an (assumed additive) table.
AtomicMeasure to_atomic(const MeasureTable& t);

bool is_finite(const AtomicMeasure& m);
bool is_sigma_finite(const AtomicMeasure& m, const SigmaFiniteWitness& w);
/// Describes why a witness is invalid, or nullopt when it is valid.
std::optional<std::string> sigma_finite_violation(const AtomicMeasure& m, const SigmaFiniteWitness& w);

}  // namespace lebesgue
