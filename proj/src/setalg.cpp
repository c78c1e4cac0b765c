#include "lebesgue/setalg.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace lebesgue {

struct Carrier::Data {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
};

Carrier::Carrier(std::vector<std::string> labels) {
  if (labels.empty()) throw KernelError(ErrorCode::InvalidArgument, "carrier must have at least one point");
  if (labels.size() > kMaxCarrierSize) {
    throw KernelError(ErrorCode::CapacityExceeded,
                      "carrier of " + std::to_string(labels.size()) + " points exceeds " +
                          std::to_string(kMaxCarrierSize));
  }
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!data->index.emplace(labels[i], i).second) {
      throw KernelError(ErrorCode::InvalidArgument, "duplicate carrier label '" + labels[i] + "'");
    }
  }
  data->labels = std::move(labels);
  data_ = std::move(data);
}

std::size_t Carrier::size() const { return data_->labels.size(); }
const std::vector<std::string>& Carrier::labels() const { return data_->labels; }
const std::string& Carrier::label(std::size_t i) const { return data_->labels.at(i); }

std::optional<std::size_t> Carrier::index_of(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Bits Carrier::full_bits() const {
  return size() == 64 ? ~Bits{0} : ((Bits{1} << size()) - 1);
}

bool operator==(const Carrier& a, const Carrier& b) {
  return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
}

void require_same_carrier(const Carrier& a, const Carrier& b, std::string_view what) {
  if (!(a == b)) throw KernelError(ErrorCode::CarrierMismatch, std::string(what));
}

// ---------------------------------------------------------------------------

Subset::Subset(Carrier carrier, Bits bits) : carrier_(std::move(carrier)), bits_(bits) {
  if ((bits_ & ~carrier_.full_bits()) != 0) {
    throw KernelError(ErrorCode::InvalidArgument, "subset bits outside its carrier");
  }
}

Subset Subset::of_points(const Carrier& c, std::initializer_list<std::size_t> points) {
  Bits b = 0;
  for (std::size_t p : points) {
    if (p >= c.size()) throw KernelError(ErrorCode::InvalidArgument, "point index out of range");
    b |= Bits{1} << p;
  }
  return Subset(c, b);
}

Subset Subset::of_labels(const Carrier& c, const std::vector<std::string>& labels) {
  Bits b = 0;
  for (const auto& l : labels) {
    auto i = c.index_of(l);
    if (!i) throw KernelError(ErrorCode::InvalidArgument, "unknown label '" + l + "'");
    b |= Bits{1} << *i;
  }
  return Subset(c, b);
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> Subset::points() const {
  std::vector<std::size_t> out;
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::vector<std::string> Subset::labels() const {
  std::vector<std::string> out;
  for (std::size_t p : points()) out.push_back(carrier_.label(p));
  return out;
}

bool Subset::subset_of(const Subset& other) const {
  require_same_carrier(carrier_, other.carrier_, "subset_of");
  return (bits_ & ~other.bits_) == 0;
}

std::string Subset::str() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t p : points()) {
    if (!first) s += ",";
    s += carrier_.label(p);
    first = false;
  }
  return s + "}";
}

Subset operator|(const Subset& a, const Subset& b) {
  require_same_carrier(a.carrier_, b.carrier_, "union");
  return Subset(a.carrier_, a.bits_ | b.bits_);
}

Subset operator&(const Subset& a, const Subset& b) {
  require_same_carrier(a.carrier_, b.carrier_, "intersection");
  return Subset(a.carrier_, a.bits_ & b.bits_);
}

Subset operator-(const Subset& a, const Subset& b) {
  require_same_carrier(a.carrier_, b.carrier_, "difference");
  return Subset(a.carrier_, a.bits_ & ~b.bits_);
}

bool operator==(const Subset& a, const Subset& b) { return a.bits_ == b.bits_ && a.carrier_ == b.carrier_; }

// ---------------------------------------------------------------------------

namespace {

bool bits_less(const Subset& a, const Subset& b) { return a.bits() < b.bits(); }

}  // namespace

SetCollection::SetCollection(Carrier carrier, const std::vector<Subset>& members) : carrier_(std::move(carrier)) {
  for (const auto& m : members) insert(m);
}

bool SetCollection::contains(const Subset& s) const {
  require_same_carrier(carrier_, s.carrier(), "collection membership");
  return std::binary_search(members_.begin(), members_.end(), s, bits_less);
}

bool SetCollection::insert(const Subset& s) {
  require_same_carrier(carrier_, s.carrier(), "collection insert");
  auto it = std::lower_bound(members_.begin(), members_.end(), s, bits_less);
  if (it != members_.end() && it->bits() == s.bits()) return false;
  members_.insert(it, s);
  return true;
}

bool SetCollection::includes(const SetCollection& other) const {
  return std::all_of(other.begin(), other.end(), [&](const Subset& s) { return contains(s); });
}

bool operator==(const SetCollection& a, const SetCollection& b) {
  return a.carrier_ == b.carrier_ && a.members_ == b.members_;
}

// ---------------------------------------------------------------------------

SigmaAlgebra::SigmaAlgebra(Carrier carrier, std::vector<Subset> atoms)
    : carrier_(std::move(carrier)), atoms_(std::move(atoms)), atom_of_(carrier_.size(), 0) {
  Bits seen = 0;
  for (const auto& a : atoms_) {
    require_same_carrier(carrier_, a.carrier(), "sigma-algebra atom");
    if (a.is_empty()) throw KernelError(ErrorCode::InvalidArgument, "empty atom");
    if ((seen & a.bits()) != 0) throw KernelError(ErrorCode::InvalidArgument, "overlapping atoms");
    seen |= a.bits();
  }
  if (seen != carrier_.full_bits()) throw KernelError(ErrorCode::InvalidArgument, "atoms do not cover the carrier");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Subset& a, const Subset& b) { return std::countr_zero(a.bits()) < std::countr_zero(b.bits()); });
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    for (std::size_t p : atoms_[k].points()) atom_of_[p] = k;
  }
}

SigmaAlgebra SigmaAlgebra::discrete(const Carrier& c) {
  std::vector<Subset> atoms;
  for (std::size_t i = 0; i < c.size(); ++i) atoms.emplace_back(c, Bits{1} << i);
  return SigmaAlgebra(c, std::move(atoms));
}

SigmaAlgebra SigmaAlgebra::trivial(const Carrier& c) { return SigmaAlgebra(c, {Subset::full(c)}); }

bool SigmaAlgebra::contains(const Subset& s) const {
  require_same_carrier(carrier_, s.carrier(), "measurability test");
  return std::all_of(atoms_.begin(), atoms_.end(), [&](const Subset& a) {
    const Bits inter = a.bits() & s.bits();
    return inter == 0 || inter == a.bits();
  });
}

Subset SigmaAlgebra::union_of_atoms(Bits selection) const {
  Bits b = 0;
  for (Bits s = selection; s != 0; s &= s - 1) b |= atoms_.at(static_cast<std::size_t>(std::countr_zero(s))).bits();
  return Subset(carrier_, b);
}

Bits SigmaAlgebra::atoms_in(const Subset& s) const {
  if (!contains(s)) throw KernelError(ErrorCode::NotMeasurable, s.str());
  Bits sel = 0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if ((atoms_[k].bits() & s.bits()) != 0) sel |= Bits{1} << k;
  }
  return sel;
}

std::vector<Subset> SigmaAlgebra::members() const {
  if (atoms_.size() > kMaxMaterializedAtoms) {
    throw KernelError(ErrorCode::CapacityExceeded,
                      "sigma-algebra with " + std::to_string(atoms_.size()) + " atoms is too large to enumerate");
  }
  std::vector<Subset> out;
  const Bits n = Bits{1} << atoms_.size();
  out.reserve(static_cast<std::size_t>(n));
  for (Bits sel = 0; sel < n; ++sel) out.push_back(union_of_atoms(sel));
  return out;
}

SetCollection SigmaAlgebra::member_collection() const { return SetCollection(carrier_, members()); }

bool operator==(const SigmaAlgebra& a, const SigmaAlgebra& b) {
  return a.carrier_ == b.carrier_ && a.atoms_ == b.atoms_;
}

// ---------------------------------------------------------------------------

SigmaAlgebra generate_sigma(const SetCollection& gen) {
  const Carrier& c = gen.carrier();
  std::vector<Bits> atoms{c.full_bits()};
  for (const Subset& g : gen) {
    std::vector<Bits> next;
    next.reserve(atoms.size() * 2);
    for (Bits a : atoms) {
      const Bits in = a & g.bits();
      const Bits out = a & ~g.bits();
      if (in != 0) next.push_back(in);
      if (out != 0) next.push_back(out);
    }
    atoms = std::move(next);
  }
  std::vector<Subset> subsets;
  subsets.reserve(atoms.size());
  for (Bits a : atoms) subsets.emplace_back(c, a);
  return SigmaAlgebra(c, std::move(subsets));
}

SetCollection algebra_closure(const SetCollection& gen) {
  const Carrier& c = gen.carrier();
  const Bits full = c.full_bits();
  std::unordered_set<Bits> seen;
  std::vector<Bits> members;
  std::deque<Bits> work;
  auto push = [&](Bits b) {
    if (seen.insert(b).second) work.push_back(b);
  };
  push(0);
  for (const Subset& g : gen) push(g.bits());
  while (!work.empty()) {
    const Bits b = work.front();
    work.pop_front();
    members.push_back(b);
    push(~b & full);
    // Unions with everything settled so far; later arrivals pair with b when they settle.
    const std::size_t settled = members.size();
    for (std::size_t i = 0; i < settled; ++i) push(members[i] | b);
  }
  SetCollection out(c);
  for (Bits b : members) out.insert(Subset(c, b));
  return out;
}

SetCollection monotone_class_closure(const SetCollection& coll) {
  // A chain of members of a finite collection stabilizes at its last element,
  // so closing under chain unions and intersections only ever adds the
  // extreme element of a comparable pair.
  const Carrier& c = coll.carrier();
  std::vector<Bits> members;
  for (const Subset& s : coll) members.push_back(s.bits());
  std::unordered_set<Bits> seen(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Bits a = members[i];
      const Bits b = members[j];
      if ((a & ~b) != 0) continue;
      for (Bits candidate : {a | b, a & b}) {
        if (seen.insert(candidate).second) members.push_back(candidate);
      }
    }
  }
  SetCollection out(c);
  for (Bits b : members) out.insert(Subset(c, b));
  return out;
}

bool is_monotone_class(const SetCollection& coll) { return monotone_class_closure(coll) == coll; }

bool is_measurable(const SigmaAlgebra& sigma, const Subset& a) { return sigma.contains(a); }

namespace {

std::optional<Subset> first_missing(const std::vector<Subset>& wanted, const SetCollection& p) {
  for (const auto& s : wanted) {
    if (!p.contains(s)) return s;
  }
  return std::nullopt;
}

}  // namespace

AuditReport check_monotone_class_theorem(const SetCollection& gen, const SetCollection& p) {
  require_same_carrier(gen.carrier(), p.carrier(), "monotone class theorem");
  AuditReport report;

  const bool mc = is_monotone_class(p);
  if (mc) {
    report.pass("monotone-class");
  } else {
    const SetCollection closure = monotone_class_closure(p);
    auto w = first_missing(closure.members(), p);
    report.fail("monotone-class", w ? w->str() : "?", "P is not closed under monotone limits");
  }

  const SetCollection algebra = algebra_closure(gen);
  const auto missing_algebra = first_missing(algebra.members(), p);
  report.add("algebra-in-P", !missing_algebra, missing_algebra ? missing_algebra->str() : "");

  const SigmaAlgebra sigma = generate_sigma(gen);
  const auto missing_sigma = first_missing(sigma.members(), p);
  report.add("sigma-in-P", !missing_sigma, missing_sigma ? missing_sigma->str() : "");

  const bool premise = mc && !missing_algebra;
  const bool holds = !premise || !missing_sigma;
  report.add("monotone-class-theorem", holds, missing_sigma ? missing_sigma->str() : "",
             premise ? "premise holds" : "premise fails; implication holds vacuously");
  return report;
}

// ---------------------------------------------------------------------------

struct ProductCarrier::Shared {
  Carrier x1;
  Carrier x2;
  Carrier c12;
  Carrier c21;
};

namespace {

Carrier make_product_labels(const Carrier& x1, const Carrier& x2) {
  if (x1.size() * x2.size() > kMaxCarrierSize) {
    throw KernelError(ErrorCode::CapacityExceeded, "product carrier of " + std::to_string(x1.size()) + "x" +
                                                       std::to_string(x2.size()) + " points is too large");
  }
  std::vector<std::string> labels;
  labels.reserve(x1.size() * x2.size());
  for (const auto& l1 : x1.labels()) {
    for (const auto& l2 : x2.labels()) labels.push_back(ProductCarrier::product_label(l1, l2));
  }
  return Carrier(std::move(labels));
}

}  // namespace

ProductCarrier::ProductCarrier(Carrier x1, Carrier x2) {
  Carrier c12 = make_product_labels(x1, x2);
  Carrier c21 = make_product_labels(x2, x1);
  shared_ = std::make_shared<const Shared>(Shared{std::move(x1), std::move(x2), std::move(c12), std::move(c21)});
}

const Carrier& ProductCarrier::x1() const { return flipped_ ? shared_->x2 : shared_->x1; }
const Carrier& ProductCarrier::x2() const { return flipped_ ? shared_->x1 : shared_->x2; }
const Carrier& ProductCarrier::carrier() const { return flipped_ ? shared_->c21 : shared_->c12; }

std::string ProductCarrier::product_label(const std::string& l1, const std::string& l2) {
  return "(" + l1 + "," + l2 + ")";
}

Subset ProductCarrier::box(const Subset& a1, const Subset& a2) const {
  require_same_carrier(a1.carrier(), x1(), "box first factor");
  require_same_carrier(a2.carrier(), x2(), "box second factor");
  Bits b = 0;
  for (std::size_t i1 : a1.points()) b |= a2.bits() << (i1 * x2().size());
  return Subset(carrier(), b);
}

ProductCarrier ProductCarrier::swapped() const {
  ProductCarrier out = *this;
  out.flipped_ = !flipped_;
  return out;
}

Subset ProductCarrier::swap(const Subset& a) const {
  require_same_carrier(a.carrier(), carrier(), "swap");
  const ProductCarrier other = swapped();
  Bits b = 0;
  for (std::size_t p : a.points()) {
    auto [i1, i2] = split(p);
    b |= Bits{1} << other.index(i2, i1);
  }
  return Subset(other.carrier(), b);
}

SetCollection gen_product(const SetCollection& gen1, const SetCollection& gen2, const ProductCarrier& pc) {
  require_same_carrier(gen1.carrier(), pc.x1(), "gen_product first factor");
  require_same_carrier(gen2.carrier(), pc.x2(), "gen_product second factor");
  std::vector<Subset> f1(gen1.members());
  f1.push_back(Subset::full(pc.x1()));
  std::vector<Subset> f2(gen2.members());
  f2.push_back(Subset::full(pc.x2()));
  SetCollection out(pc.carrier());
  for (const auto& a1 : f1) {
    for (const auto& a2 : f2) out.insert(pc.box(a1, a2));
  }
  return out;
}

Subset section_set(std::size_t x1, const Subset& a, const ProductCarrier& pc) {
  require_same_carrier(a.carrier(), pc.carrier(), "section of a set");
  if (x1 >= pc.x1().size()) throw KernelError(ErrorCode::InvalidArgument, "section point out of range");
  const std::size_t n2 = pc.x2().size();
  const Bits row = (a.bits() >> (x1 * n2)) & pc.x2().full_bits();
  return Subset(pc.x2(), row);
}

}  // namespace lebesgue
