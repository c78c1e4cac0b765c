#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lebesgue/audit.hpp"
#include "lebesgue/error.hpp"

namespace lebesgue {

using Bits = std::uint64_t;

inline constexpr std::size_t kMaxCarrierSize = 64;
// Largest atom count for which the full member list of a sigma-algebra is built.
inline constexpr std::size_t kMaxMaterializedAtoms = 20;

/// A finite, nonempty set of distinctly labeled points.
///
/// Copies share the label table, so comparing two copies of the same carrier
/// is a pointer test.
class Carrier {
 public:
  explicit Carrier(std::vector<std::string> labels);

  std::size_t size() const;
  const std::vector<std::string>& labels() const;
  const std::string& label(std::size_t i) const;
  std::optional<std::size_t> index_of(std::string_view label) const;
  Bits full_bits() const;

  friend bool operator==(const Carrier& a, const Carrier& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// A subset of a carrier stored as a bit mask (bit i set iff point i is in).
class Subset {
 public:
  Subset(Carrier carrier, Bits bits);

  static Subset empty(const Carrier& c) { return Subset(c, 0); }
  static Subset full(const Carrier& c) { return Subset(c, c.full_bits()); }
  static Subset of_points(const Carrier& c, std::initializer_list<std::size_t> points);
  // Throws InvalidArgument naming the first unknown label.
  static Subset of_labels(const Carrier& c, const std::vector<std::string>& labels);

  const Carrier& carrier() const { return carrier_; }
  Bits bits() const { return bits_; }

  bool contains(std::size_t point) const { return ((bits_ >> point) & 1U) != 0; }
  bool is_empty() const { return bits_ == 0; }
  std::size_t count() const;
  std::vector<std::size_t> points() const;
  std::vector<std::string> labels() const;

  Subset complement() const { return Subset(carrier_, ~bits_ & carrier_.full_bits()); }
  bool subset_of(const Subset& other) const;

  /// "{a,b}" in carrier order.
  std::string str() const;

  friend Subset operator|(const Subset& a, const Subset& b);
  friend Subset operator&(const Subset& a, const Subset& b);
  friend Subset operator-(const Subset& a, const Subset& b);
  friend bool operator==(const Subset& a, const Subset& b);

 private:
  Carrier carrier_;
  Bits bits_;
};

void require_same_carrier(const Carrier& a, const Carrier& b, std::string_view what);

/// Deduplicated collection of subsets of one carrier, kept sorted by bit pattern.
class SetCollection {
 public:
  explicit SetCollection(Carrier carrier) : carrier_(std::move(carrier)) {}
  SetCollection(Carrier carrier, const std::vector<Subset>& members);

  const Carrier& carrier() const { return carrier_; }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(const Subset& s) const;
  /// Returns false when the set was already present.
  bool insert(const Subset& s);
  bool includes(const SetCollection& other) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const SetCollection& a, const SetCollection& b);

 private:
  Carrier carrier_;
  std::vector<Subset> members_;
};

/// A sigma-algebra on a finite carrier, represented by its atoms: the
/// partition of the carrier into minimal nonempty members. A subset is a
/// member iff it is a union of atoms.
class SigmaAlgebra {
 public:
  /// Throws InvalidArgument unless `atoms` partition the carrier.
  SigmaAlgebra(Carrier carrier, std::vector<Subset> atoms);

  static SigmaAlgebra discrete(const Carrier& c);
  static SigmaAlgebra trivial(const Carrier& c);

  const Carrier& carrier() const { return carrier_; }
  const std::vector<Subset>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t atom_of(std::size_t point) const { return atom_of_[point]; }

  bool contains(const Subset& s) const;
  /// Union of the atoms whose indices are set in `selection`.
  Subset union_of_atoms(Bits selection) const;
  /// Indices of the atoms inside a measurable set.
  Bits atoms_in(const Subset& s) const;

  /// Every member, in increasing order of atom selection. Throws
  /// CapacityExceeded past kMaxMaterializedAtoms atoms.
  std::vector<Subset> members() const;
  SetCollection member_collection() const;

  friend bool operator==(const SigmaAlgebra& a, const SigmaAlgebra& b);

 private:
  Carrier carrier_;
  std::vector<Subset> atoms_;
  std::vector<std::size_t> atom_of_;
};

SigmaAlgebra generate_sigma(const SetCollection& gen);
SetCollection algebra_closure(const SetCollection& gen);
SetCollection monotone_class_closure(const SetCollection& coll);
bool is_monotone_class(const SetCollection& coll);
bool is_measurable(const SigmaAlgebra& sigma, const Subset& a);

/// Audits the monotone class theorem instance "algebra(gen) within P implies
/// sigma(gen) within P". The report holds the checks "monotone-class",
/// "algebra-in-P", "sigma-in-P" and the implication "monotone-class-theorem".
AuditReport check_monotone_class_theorem(const SetCollection& gen, const SetCollection& p);

/// X1 x X2 with point (i1, i2) at flat index i1 * |X2| + i2.
///
/// A product carrier and its swap X2 x X1 share one label table, so
/// swapping twice gives back the identical carrier.
class ProductCarrier {
 public:
  ProductCarrier(Carrier x1, Carrier x2);

  const Carrier& x1() const;
  const Carrier& x2() const;
  const Carrier& carrier() const;

  std::size_t index(std::size_t i1, std::size_t i2) const { return i1 * x2().size() + i2; }
  std::pair<std::size_t, std::size_t> split(std::size_t i) const { return {i / x2().size(), i % x2().size()}; }

  Subset box(const Subset& a1, const Subset& a2) const;
  /// The carrier X2 x X1.
  ProductCarrier swapped() const;
  /// Image of a subset of X1 x X2 under (x1, x2) -> (x2, x1).
  Subset swap(const Subset& a) const;

  static std::string product_label(const std::string& l1, const std::string& l2);

  friend bool operator==(const ProductCarrier& a, const ProductCarrier& b) {
    return a.x1() == b.x1() && a.x2() == b.x2();
  }

 private:
  struct Shared;
  std::shared_ptr<const Shared> shared_;
  bool flipped_ = false;
};

/// All boxes A1 x A2 with A1 in gen1 or X1 and A2 in gen2 or X2.
SetCollection gen_product(const SetCollection& gen1, const SetCollection& gen2, const ProductCarrier& pc);

/// {x2 | (x1, x2) in A}.
Subset section_set(std::size_t x1, const Subset& a, const ProductCarrier& pc);

}  // namespace lebesgue
