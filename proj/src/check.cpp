#include "lebesgue/check.hpp"

#include <sstream>

namespace lebesgue {

namespace {

// Table-based audits enumerate every member of the product sigma-algebra.
constexpr std::size_t kTableAtomLimit = 12;

io::Json audit_entry(const std::string& name, const AuditReport& r) {
  io::Json j = io::Json::object();
  j["name"] = name;
  j["verdict"] = to_string(r.passed() ? Verdict::Pass : Verdict::Fail);
  j["checks"] = io::to_json(r);
  return j;
}

void merge(AuditReport& into, const std::string& prefix, const AuditReport& from) {
  for (AuditCheck c : from.checks) {
    c.name = prefix + "/" + c.name;
    into.checks.push_back(std::move(c));
  }
}

AuditReport skipped(const std::string& check, std::size_t atoms) {
  AuditReport r;
  r.pass(check, "skipped: " + std::to_string(atoms) + " product atoms exceed the tabulation limit of " +
                    std::to_string(kTableAtomLimit));
  return r;
}

}  // namespace

CheckOutcome run_check(const io::ProblemSpec& spec) {
  const ProductSpace& ps = spec.space;
  const TonelliReport t = tonelli(spec.m1, spec.w1, spec.m2, spec.w2, spec.expr, ps);
  const std::size_t atoms = ps.sigma().atom_count();

  io::Json verdicts = io::Json::object();
  io::Json audits = io::Json::array();
  bool all = true;
  auto record = [&](const std::string& name, const AuditReport& r) {
    verdicts[name] = to_string(r.passed() ? Verdict::Pass : Verdict::Fail);
    audits.push_back(audit_entry(name, r));
    all = all && r.passed();
  };

  verdicts["tonelli"] = to_string(t.verdict);
  all = all && t.verdict == Verdict::Pass;

  for (const std::string& name : spec.audits) {
    if (name == "tonelli") continue;
    if (name == "box") {
      record(name, t.box_audit);
    } else if (name == "swap") {
      record(name, t.swap_audit);
    } else if (name == "measure") {
      MeasureAuditOptions opt;
      opt.seed = spec.seed;
      AuditReport r;
      merge(r, "space1", audit_measure(MeasureTable::from_measure(spec.m1), opt));
      merge(r, "space2", audit_measure(MeasureTable::from_measure(spec.m2), opt));
      if (atoms <= kTableAtomLimit) {
        merge(r, "product", audit_measure(MeasureTable::from_measure(prod_measure(spec.m1, spec.w1, spec.m2, spec.w2, ps)), opt));
      } else {
        merge(r, "product", skipped("axioms", atoms));
      }
      record(name, r);
    } else if (name == "uniqueness" || name == "monotone_class") {
      if (atoms > kTableAtomLimit) {
        record(name, skipped(name, atoms));
        continue;
      }
      const ProductSpace swapped = ps.swapped();
      const MeasureTable direct = MeasureTable::from_measure(prod_measure(spec.m1, spec.w1, spec.m2, spec.w2, ps));
      const AtomicMeasure prod21 = prod_measure(spec.m2, spec.w2, spec.m1, spec.w1, swapped);
      const MeasureTable pushed = image_measure(prod21, PointMap::swap(swapped.product_carrier()), ps.sigma());
      if (name == "uniqueness") {
        record(name, uniqueness_check(direct, pushed, ps));
      } else {
        // The sets where the two product constructions agree.
        SetCollection agree(ps.carrier());
        for (const auto& [bits, value] : direct.values()) {
          if (value == pushed.values().at(bits)) agree.insert(Subset(ps.carrier(), bits));
        }
        record(name, check_monotone_class_theorem(gen_product(ps.gen1(), ps.gen2(), ps.product_carrier()), agree));
      }
    } else if (name == "change_of_measure") {
      const AtomicMeasure prod = prod_measure(spec.m1, spec.w1, spec.m2, spec.w2, ps);
      record(name, change_of_measure_check(PointMap::swap(ps.product_carrier()), prod, ps.swapped().sigma(),
                                           swap_expr(spec.expr, ps)));
    }
  }

  io::Json values = io::Json::object();
  values["double"] = io::to_json(t.double_integral);
  values["iterated_12"] = io::to_json(t.iterated_12);
  values["iterated_21"] = io::to_json(t.iterated_21);

  io::Json attest = io::Json::object();
  attest["mplus_I_f"] = t.mplus_i_f;
  attest["mplus_J_f"] = t.mplus_j_f;
  attest["sections_measurable"] = t.sections_measurable;

  CheckOutcome out;
  out.passed = all;
  out.report = io::Json::object();
  out.report["version"] = kReportVersion;
  out.report["verdicts"] = verdicts;
  out.report["values"] = values;
  out.report["attestations"] = attest;
  out.report["audits"] = audits;

  std::ostringstream s;
  s << "Tonelli check: " << to_string(t.verdict) << "\n";
  s << "  double integral        " << t.double_integral << "\n";
  s << "  iterated (x1 then x2) " << t.iterated_12 << "\n";
  s << "  iterated (x2 then x1) " << t.iterated_21 << "\n";
  s << "  I_f in M+: " << (t.mplus_i_f ? "yes" : "no") << ", J_f in M+: " << (t.mplus_j_f ? "yes" : "no")
    << ", sections in M+: " << (t.sections_measurable ? "yes" : "no") << "\n";
  for (const auto& a : audits) {
    s << "audit " << a["name"].get<std::string>() << ": " << a["verdict"].get<std::string>() << "\n";
    for (const auto& c : a["checks"]) {
      if (c["verdict"] == "fail") s << "  FAIL " << c["name"].get<std::string>() << " witness " << c["witness"].get<std::string>() << "\n";
      const std::string detail = c.value("detail", "");
      if (detail.rfind("skipped", 0) == 0) s << "  " << c["name"].get<std::string>() << " " << detail << "\n";
    }
  }
  s << "overall: " << (all ? "pass" : "fail") << "\n";
  out.summary = s.str();
  return out;
}

}  // namespace lebesgue
