#include "lebesgue/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lebesgue::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw KernelError(ErrorCode::ParseError, what); }

const Json& member(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) parse_fail(context + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string string_of(const Json& j, const std::string& context) {
  if (!j.is_string()) parse_fail(context + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<std::string> labels_of(const Json& j, const std::string& context) {
  if (!j.is_array()) parse_fail(context + ": expected an array of labels, got " + j.dump());
  std::vector<std::string> out;
  for (const Json& l : j) out.push_back(string_of(l, context));
  return out;
}

Subset checked_subset(const Carrier& c, const std::vector<std::string>& labels, const std::string& context) {
  for (const auto& l : labels) {
    if (!c.index_of(l)) parse_fail(context + ": unknown label '" + l + "'");
  }
  return Subset::of_labels(c, labels);
}

std::vector<std::string> split_labels(const std::string& key) {
  std::vector<std::string> out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(item);
  }
  return out;
}

}  // namespace

Json to_json(const XReal& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return to_json(x.value());
}

Json to_json(const Rational& q) {
  Json j = Json::object();
  j["num"] = Json::parse(q.get_num().get_str());
  j["den"] = Json::parse(q.get_den().get_str());
  return j;
}

Rational rational_from_json(const Json& j) {
  // Integers go through their decimal text so that big values stay exact.
  auto integer = [](const Json& v, const char* what) {
    if (!v.is_number_integer()) parse_fail(std::string(what) + " must be an integer, got " + v.dump());
    return mpz_class(v.dump());
  };
  if (j.is_number_integer()) return Rational(integer(j, "value"));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) parse_fail("bad rational " + j.dump());
    q.canonicalize();
    return q;
  }
  if (!j.is_object()) parse_fail("expected a rational, got " + j.dump());
  const mpz_class num = integer(member(j, "num", "rational"), "num");
  const mpz_class den = integer(member(j, "den", "rational"), "den");
  if (den <= 0) parse_fail("den must be positive in " + j.dump());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

XReal xreal_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return XReal::pos_inf();
    if (s == "-inf") return XReal::neg_inf();
  }
  return XReal(rational_from_json(j));
}

Carrier carrier_from_json(const Json& j) {
  auto labels = labels_of(j, "carrier");
  if (labels.empty()) parse_fail("carrier: must have at least one label");
  for (const auto& l : labels) {
    if (l.empty() || l.find_first_of(",()") != std::string::npos) {
      parse_fail("carrier: label '" + l + "' must be nonempty and free of ',', '(' and ')'");
    }
  }
  try {
    return Carrier(std::move(labels));
  } catch (const KernelError& e) {
    parse_fail(std::string("carrier: ") + e.what());
  }
}

Json to_json(const Subset& s) {
  Json j = Json::array();
  for (const auto& l : s.labels()) j.push_back(l);
  return j;
}

Subset subset_from_json(const Json& j, const Carrier& c) { return checked_subset(c, labels_of(j, "subset"), "subset"); }

Subset product_subset_from_json(const Json& j, const ProductCarrier& pc) {
  if (j.is_object()) {
    const Json& box = member(j, "box", "product subset");
    if (!box.is_array() || box.size() != 2) parse_fail("box: expected [[labels], [labels]]");
    return pc.box(subset_from_json(box[0], pc.x1()), subset_from_json(box[1], pc.x2()));
  }
  if (!j.is_array()) parse_fail("product subset: expected an array, got " + j.dump());
  Bits bits = 0;
  for (const Json& item : j) {
    std::size_t index = 0;
    if (item.is_array()) {
      if (item.size() != 2) parse_fail("product point must be a [x1, x2] pair, got " + item.dump());
      const auto l1 = string_of(item[0], "product point");
      const auto l2 = string_of(item[1], "product point");
      const auto i1 = pc.x1().index_of(l1);
      const auto i2 = pc.x2().index_of(l2);
      if (!i1 || !i2) parse_fail("unknown product point " + item.dump());
      index = pc.index(*i1, *i2);
    } else {
      const auto l = string_of(item, "product point");
      const auto i = pc.carrier().index_of(l);
      if (!i) parse_fail("unknown product point '" + l + "'");
      index = *i;
    }
    bits |= Bits{1} << index;
  }
  return Subset(pc.carrier(), bits);
}

SetCollection collection_from_json(const Json& j, const Carrier& c) {
  if (!j.is_array()) parse_fail("generators: expected an array of subsets");
  SetCollection out(c);
  for (const Json& s : j) out.insert(subset_from_json(s, c));
  return out;
}

Json to_json(const SetCollection& c) {
  Json j = Json::array();
  for (const Subset& s : c) j.push_back(to_json(s));
  return j;
}

AtomicMeasure measure_from_json(const Json& j, const SigmaAlgebra& sigma) {
  if (!j.is_object()) parse_fail("measure: expected an object mapping atoms to weights");
  const Carrier& c = sigma.carrier();
  std::vector<std::optional<XReal>> weights(sigma.atom_count());
  for (const auto& [key, value] : j.items()) {
    const Subset s = checked_subset(c, split_labels(key), "measure key '" + key + "'");
    auto it = std::find(sigma.atoms().begin(), sigma.atoms().end(), s);
    if (it == sigma.atoms().end()) parse_fail("measure key '" + key + "' is not an atom of the generated sigma-algebra");
    const auto k = static_cast<std::size_t>(it - sigma.atoms().begin());
    if (weights[k]) parse_fail("measure: atom '" + key + "' given twice");
    weights[k] = xreal_from_json(value);
    if (!weights[k]->is_nonneg()) parse_fail("measure: negative weight on '" + key + "'");
  }
  std::vector<XReal> w;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!weights[k]) parse_fail("measure: no weight for atom " + sigma.atoms()[k].str());
    w.push_back(*weights[k]);
  }
  return AtomicMeasure(sigma, std::move(w));
}

Json to_json(const AtomicMeasure& m) {
  Json j = Json::object();
  for (std::size_t k = 0; k < m.sigma().atom_count(); ++k) {
    std::string key;
    for (const auto& l : m.sigma().atoms()[k].labels()) key += (key.empty() ? "" : ",") + l;
    j[key] = to_json(m.atom_weight(k));
  }
  return j;
}

SigmaFiniteWitness witness_from_json(const Json& j, const Carrier& c) {
  if (!j.is_array()) parse_fail("witness: expected an array of subsets");
  SigmaFiniteWitness w;
  for (const Json& s : j) w.chain.push_back(subset_from_json(s, c));
  return w;
}

MpExpr expr_from_json(const Json& j, const SubsetParser& parse_subset) {
  if (!j.is_object() || j.size() != 1) parse_fail("expression: expected a one-key object, got " + j.dump());
  const auto& [key, body] = *j.items().begin();
  if (key == "charac") return MpExpr::charac(parse_subset(body));
  if (key == "scal") {
    if (!body.is_array() || body.size() != 2) parse_fail("scal: expected [rational, expr]");
    const Rational a = rational_from_json(body[0]);
    if (sgn(a) < 0) parse_fail("scal: negative coefficient " + a.get_str());
    return MpExpr::scal(a, expr_from_json(body[1], parse_subset));
  }
  if (key == "add") {
    if (!body.is_array() || body.size() != 2) parse_fail("add: expected [expr, expr]");
    return MpExpr::add(expr_from_json(body[0], parse_subset), expr_from_json(body[1], parse_subset));
  }
  if (key == "sup") {
    const Json& terms_json = member(body, "terms", "sup");
    if (!terms_json.is_array() || terms_json.empty()) parse_fail("sup: terms must be a nonempty array");
    std::vector<MpExpr> terms;
    for (const Json& t : terms_json) terms.push_back(expr_from_json(t, parse_subset));
    if (body.contains("diverges_at")) return MpExpr::sup(MpSeq::diverging(std::move(terms), parse_subset(body["diverges_at"])));
    const Json& k = member(body, "stable_at", "sup");
    if (!k.is_number_unsigned()) parse_fail("sup: stable_at must be a nonnegative integer");
    return MpExpr::sup(MpSeq::stabilized(std::move(terms), k.get<std::size_t>()));
  }
  parse_fail("expression: unknown constructor '" + key + "'");
}

Json to_json(const MpExpr& e) {
  return lebesgue_fold<Json>(
      {
          [](const Subset& a) { return Json{{"charac", to_json(a)}}; },
          [](const Rational& a, const Json& r) { return Json{{"scal", Json::array({to_json(a), r})}}; },
          [](const Json& l, const Json& r) { return Json{{"add", Json::array({l, r})}}; },
          [](const std::vector<Json>& ts, const MpSeq& s) {
            Json body = Json::object();
            body["terms"] = Json(ts);
            if (s.tail() == MpSeq::Tail::Stabilized) {
              body["stable_at"] = s.stable_at();
            } else {
              body["diverges_at"] = to_json(s.divergence_set());
            }
            return Json{{"sup", body}};
          },
      },
      e);
}

SimpleFn simplefn_from_json(const Json& j, const SigmaAlgebra& sigma) {
  const Json& values = member(j, "values", "simple function");
  const Json& preimages = member(j, "preimages", "simple function");
  if (!values.is_array() || !preimages.is_array()) parse_fail("simple function: values and preimages must be arrays");
  std::vector<Rational> v;
  for (const Json& q : values) v.push_back(rational_from_json(q));
  std::vector<Subset> p;
  for (const Json& s : preimages) p.push_back(subset_from_json(s, sigma.carrier()));
  return SimpleFn(sigma, std::move(v), std::move(p));
}

Json to_json(const SimpleFn& f) {
  Json j = Json::object();
  j["values"] = Json::array();
  for (const auto& v : f.values()) j["values"].push_back(to_json(v));
  j["preimages"] = Json::array();
  for (const auto& p : f.preimages()) j["preimages"].push_back(to_json(p));
  return j;
}

Json to_json(const AuditReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc = Json::object();
    jc["name"] = c.name;
    jc["verdict"] = to_string(c.verdict);
    if (c.witness) jc["witness"] = *c.witness;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  return checks;
}

Json to_json(const TonelliReport& r) {
  Json j = Json::object();
  j["double"] = to_json(r.double_integral);
  j["iterated_12"] = to_json(r.iterated_12);
  j["iterated_21"] = to_json(r.iterated_21);
  j["mplus_I_f"] = r.mplus_i_f;
  j["mplus_J_f"] = r.mplus_j_f;
  j["sections_measurable"] = r.sections_measurable;
  j["verdict"] = to_string(r.verdict);
  j["box_audit"] = to_json(r.box_audit);
  j["swap_audit"] = to_json(r.swap_audit);
  return j;
}

namespace {

struct FactorSpec {
  SetCollection generators;
  Json measure;
  std::optional<Json> witness;
};

FactorSpec factor_from_json(const Json& j, const std::string& name) {
  if (!j.is_object()) parse_fail(name + ": expected an object");
  const Carrier c = carrier_from_json(member(j, "carrier", name));
  SetCollection gen(c);
  if (j.contains("generators")) gen = collection_from_json(j["generators"], c);
  FactorSpec f{gen, member(j, "measure", name), std::nullopt};
  if (j.contains("witness")) f.witness = j["witness"];
  return f;
}

}  // namespace

ProblemSpec parse_problem_spec(const Json& j) {
  if (!j.is_object()) parse_fail("spec: expected a JSON object");
  FactorSpec f1 = factor_from_json(member(j, "space1", "spec"), "space1");
  FactorSpec f2 = factor_from_json(member(j, "space2", "spec"), "space2");
  ProductSpace space(f1.generators, f2.generators);
  AtomicMeasure m1 = measure_from_json(f1.measure, space.sigma1());
  AtomicMeasure m2 = measure_from_json(f2.measure, space.sigma2());
  SigmaFiniteWitness w1 = f1.witness ? witness_from_json(*f1.witness, space.x1()) : SigmaFiniteWitness::whole(space.x1());
  SigmaFiniteWitness w2 = f2.witness ? witness_from_json(*f2.witness, space.x2()) : SigmaFiniteWitness::whole(space.x2());

  const ProductCarrier& pc = space.product_carrier();
  MpExpr expr = expr_from_json(member(j, "expr", "spec"), [&](const Json& s) { return product_subset_from_json(s, pc); });
  check_well_formed(expr, space.sigma());

  std::vector<std::string> audits{"tonelli"};
  std::uint64_t seed = 0;
  if (j.contains("options")) {
    const Json& opt = j["options"];
    if (!opt.is_object()) parse_fail("options: expected an object");
    if (opt.contains("audits")) {
      audits.clear();
      for (const auto& name : labels_of(opt["audits"], "options.audits")) {
        const auto& known = known_audits();
        if (std::find(known.begin(), known.end(), name) == known.end()) parse_fail("options.audits: unknown audit '" + name + "'");
        if (std::find(audits.begin(), audits.end(), name) == audits.end()) audits.push_back(name);
      }
    }
    if (opt.contains("seed")) {
      if (!opt["seed"].is_number_unsigned()) parse_fail("options.seed: expected a nonnegative integer");
      seed = opt["seed"].get<std::uint64_t>();
    }
  }
  return ProblemSpec{std::move(space), std::move(m1), std::move(m2), std::move(w1), std::move(w2),
                     std::move(expr), std::move(audits), seed};
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read spec file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_problem_spec(j);
}

}  // namespace lebesgue::io
