#include "cli/spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "subzeta/arith.hpp"
#include "subzeta/error.hpp"

namespace subzeta::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SpecError(where + ": unknown field \"" + key + "\"");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(where + ": missing field \"" + key + "\"");
  return *it;
}

u64 as_uint(const json& v, const std::string& name, u64 lo = 0, u64 hi = ~u64{0}) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
    throw SpecError(name + ": expected a non-negative integer");
  }
  u64 x = v.get<u64>();
  if (x < lo || x > hi) {
    throw SpecError(name + ": value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  return x;
}

std::string as_string(const json& v, const std::string& name) {
  if (!v.is_string()) throw SpecError(name + ": expected a string");
  return v.get<std::string>();
}

SupportSpec parse_support(const json& v) {
  if (!v.is_object()) throw SpecError("support: expected an object");
  SupportSpec s;
  std::string kind = as_string(require(v, "kind", "support"), "support.kind");
  if (kind == "unit_polydisc") {
    reject_unknown(v, {"kind"}, "support");
    return s;
  }
  if (kind != "cosets") throw SpecError("support.kind: expected \"unit_polydisc\" or \"cosets\"");
  reject_unknown(v, {"kind", "level", "centers"}, "support");
  s.kind = Support::Kind::Cosets;
  s.level = static_cast<unsigned>(as_uint(require(v, "level", "support"), "support.level", 1, 30));
  const json& centers = require(v, "centers", "support");
  if (!centers.is_array() || centers.empty()) throw SpecError("support.centers: expected a non-empty array");
  for (const json& c : centers) {
    if (!c.is_array()) throw SpecError("support.centers: each center must be an array of residues");
    std::vector<u64> point;
    for (const json& x : c) point.push_back(as_uint(x, "support.centers"));
    s.centers.push_back(std::move(point));
  }
  return s;
}

RegularizationSpec parse_regularization(const json& v) {
  if (!v.is_object()) throw SpecError("regularization: expected an object");
  reject_unknown(v, {"s", "chi_level", "chi_index", "r_min", "r_max", "scan_depth"}, "regularization");
  RegularizationSpec r;
  auto get = [&](const char* key, unsigned& out, u64 lo, u64 hi) {
    if (v.contains(key)) out = static_cast<unsigned>(as_uint(v[key], std::string("regularization.") + key, lo, hi));
  };
  get("s", r.s, 1, 64);
  get("chi_level", r.chi_level, 0, 8);
  get("chi_index", r.chi_index, 0, 1'000'000);
  get("r_min", r.r_min, 0, 30);
  get("r_max", r.r_max, 0, 30);
  get("scan_depth", r.scan_depth, 1, 30);
  if (r.r_min > r.r_max) throw SpecError("regularization: r_min exceeds r_max");
  if (r.scan_depth <= r.r_max) throw SpecError("regularization: scan_depth must exceed r_max");
  return r;
}

}  // namespace

ProblemSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec: expected a JSON object");
  reject_unknown(doc,
                 {"schema", "p", "n", "constraints", "target", "support", "max_level", "character_conductor_cap",
                  "resolution_data", "budgets", "regularization"},
                 "spec");
  ProblemSpec spec;
  spec.schema = static_cast<int>(as_uint(require(doc, "schema", "spec"), "schema"));
  if (spec.schema != 1) throw SpecError("schema: unsupported version " + std::to_string(spec.schema));
  spec.p = as_uint(require(doc, "p", "spec"), "p", 2, 1'000'000);
  if (!is_prime(spec.p)) throw SpecError("p: " + std::to_string(spec.p) + " is not prime");
  spec.n = static_cast<unsigned>(as_uint(require(doc, "n", "spec"), "n", 1, 8));

  const json& cons = require(doc, "constraints", "spec");
  if (!cons.is_array()) throw SpecError("constraints: expected an array of polynomial strings");
  for (const json& c : cons) spec.constraints.push_back(as_string(c, "constraints"));
  spec.target = as_string(require(doc, "target", "spec"), "target");

  if (doc.contains("support")) spec.support = parse_support(doc["support"]);
  if (doc.contains("max_level")) spec.max_level = static_cast<unsigned>(as_uint(doc["max_level"], "max_level", 1, 40));

  spec.conductor_cap = spec.p == 2 ? 0 : 2;
  if (doc.contains("character_conductor_cap")) {
    spec.conductor_cap =
        static_cast<unsigned>(as_uint(doc["character_conductor_cap"], "character_conductor_cap", 0, 8));
  }
  if (spec.p == 2 && spec.conductor_cap > 0) {
    throw SpecError("character_conductor_cap: twisted characters are not supported for p = 2");
  }
  if (spec.conductor_cap > 0) {
    u64 mod = 1;
    for (unsigned i = 0; i < spec.conductor_cap; ++i) {
      mod *= spec.p;
      if (mod > 1'000'000) throw SpecError("character_conductor_cap: p^cap exceeds 10^6");
    }
  }

  if (doc.contains("resolution_data")) {
    const json& rd = doc["resolution_data"];
    if (!rd.is_array()) throw SpecError("resolution_data: expected an array of [N, v] pairs");
    for (const json& pair : rd) {
      if (!pair.is_array() || pair.size() != 2) throw SpecError("resolution_data: expected [N, v] pairs");
      ResolutionDatum d;
      d.N = static_cast<unsigned>(as_uint(pair[0], "resolution_data.N", 1, 1000));
      d.v = static_cast<unsigned>(as_uint(pair[1], "resolution_data.v", 1, 1000));
      spec.resolution_data.push_back(d);
    }
  }

  if (doc.contains("budgets")) {
    const json& b = doc["budgets"];
    if (!b.is_object()) throw SpecError("budgets: expected an object");
    reject_unknown(b, {"points"}, "budgets");
    if (b.contains("points")) spec.budget = as_uint(b["points"], "budgets.points", 1);
  }

  if (doc.contains("regularization")) {
    spec.regularization = parse_regularization(doc["regularization"]);
    if (spec.regularization->chi_level > spec.conductor_cap) {
      throw SpecError("regularization.chi_level: exceeds character_conductor_cap");
    }
  }
  return spec;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": invalid JSON: " + e.what());
  }
  return parse_spec(doc);
}

namespace {

std::string annotate(const std::string& label, const std::string& text, const ParseError& e) {
  std::ostringstream msg;
  msg << label << " \"" << text << "\": " << e.what() << "\n  " << text << "\n  "
      << std::string(std::min(e.position(), text.size()), ' ') << "^";
  return msg.str();
}

MPoly parse_one(const std::string& label, const std::string& text, unsigned n) {
  try {
    return parse_polynomial(text, n);
  } catch (const ParseError& e) {
    throw SpecError(annotate(label, text, e));
  }
}

}  // namespace

PolySystem build_system(const ProblemSpec& spec) {
  std::vector<MPoly> cons;
  for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
    cons.push_back(parse_one("constraint " + std::to_string(i + 1), spec.constraints[i], spec.n));
  }
  MPoly target = parse_one("target", spec.target, spec.n);
  try {
    return PolySystem(spec.p, spec.n, std::move(cons), std::move(target), spec.resolution_data);
  } catch (const Error& e) {
    throw SpecError(std::string("system: ") + e.what());
  }
}

Support build_support(const ProblemSpec& spec) {
  if (spec.support.kind == Support::Kind::UnitPolydisc) return Support::unit_polydisc();
  try {
    return Support::cosets(spec.p, spec.n, spec.support.level, spec.support.centers);
  } catch (const Error& e) {
    throw SpecError(std::string("support: ") + e.what());
  }
}

}  // namespace subzeta::cli
