#include "cfx/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cfx {
namespace {

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        write(j[i], out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      // Keep the value recognizably floating point.
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      return;
    }
    default:
      out += j.dump();
  }
}

Json complex_entry(long long k, cplx v) { return Json::array({k, v.real(), v.imag()}); }

std::string end_text(const std::optional<Rational>& e) {
  return e ? format_rational(*e) : std::string();
}

std::optional<Rational> end_from_json(const Json& j, bool lower) {
  if (j.is_null()) return std::nullopt;
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw std::invalid_argument("omega: interval ends must be strings \"p/q\"");
  const std::string s = j.get<std::string>();
  if (s == "-inf" || s == "inf" || s == "+inf") {
    if ((s == "-inf") != lower) throw std::invalid_argument("omega: reversed infinite end \"" + s + "\"");
    return std::nullopt;
  }
  return parse_rational(s);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("coordinates must be integers or \"p/q\" strings, got " + j.dump());
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const SeqZ& s) {
  Json j;
  j["domain"] = "Z";
  Json entries = Json::array();
  for (const auto& [k, v] : s.entries()) entries.push_back(complex_entry(k, v));
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const SeqZm& s) {
  Json j;
  j["domain"] = "Zm";
  j["modulus"] = s.modulus();
  Json entries = Json::array();
  for (int k = 0; k < s.modulus(); ++k) entries.push_back(complex_entry(k, s[k]));
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const GroupFunction& f) {
  Json j;
  j["domain"] = "group";
  j["moduli"] = f.group.moduli();
  Json entries = Json::array();
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    if (std::abs(f.values[x]) <= kDropTol) continue;
    entries.push_back(Json::array({f.group.coords(x), f.values[x].real(), f.values[x].imag()}));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const Extremal& e) {
  return std::visit([](const auto& v) { return to_json(v); }, e);
}

Json to_json(const SupportZ& h) {
  Json j;
  j["half"] = h.half();
  return j;
}

Json to_json(const SupportZm& h) {
  Json j;
  j["modulus"] = h.modulus();
  j["half"] = h.half();
  return j;
}

Json to_json(const PdCertificate& c) {
  Json j;
  j["isPd"] = c.is_pd;
  j["minValue"] = c.min_value;
  j["minLocation"] = c.min_location;
  j["tolerance"] = c.tolerance;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  j["value"] = r.value;
  j["enclosure"] = Json::array({r.lower, r.upper});
  j["extremal"] = to_json(r.extremal);
  j["certificate"] = to_json(r.certificate);
  Json meta;
  meta["iterations"] = r.meta.iterations;
  meta["lpSolves"] = r.meta.lp_solves;
  meta["formulation"] = r.meta.formulation;
  meta["converged"] = r.meta.converged;
  j["meta"] = std::move(meta);
  if (!r.grid_sequence.empty()) {
    Json grid = Json::array();
    for (const auto& [m, v] : r.grid_sequence) grid.push_back(Json::array({m, v}));
    j["gridSequence"] = std::move(grid);
  }
  return j;
}

Json to_json(const Factorization& f) {
  Json j;
  j["theta"] = std::visit([](const auto& v) { return to_json(v); }, f.theta);
  j["residual"] = f.residual;
  j["method"] = to_string(f.method);
  return j;
}

Json to_json(const GroupDescriptor& g) {
  Json factors = Json::array();
  for (const GroupFactor& f : g.factors()) {
    Json e;
    switch (f.kind) {
      case FactorKind::Integers: e["kind"] = "integers"; break;
      case FactorKind::Reals: e["kind"] = "reals"; break;
      case FactorKind::Torus: e["kind"] = "torus"; break;
      case FactorKind::Cyclic:
        e["kind"] = "cyclic";
        e["m"] = f.modulus;
        break;
    }
    factors.push_back(std::move(e));
  }
  Json j;
  j["factors"] = std::move(factors);
  return j;
}

Json to_json(const GroupElement& x) {
  Json j = Json::array();
  for (const Rational& c : x.coords) j.push_back(format_rational(c));
  return j;
}

Json to_json(const OmegaDescriptor& omega) {
  Json j;
  if (omega.points) {
    Json pts = Json::array();
    for (const GroupElement& p : *omega.points) pts.push_back(to_json(p));
    j["explicit"] = std::move(pts);
    return j;
  }
  Json boxes = Json::array();
  for (const Box& b : omega.boxes) {
    Json sides = Json::array();
    for (const Interval& iv : b.sides)
      sides.push_back(Json::array({iv.lo ? end_text(iv.lo) : "-inf", iv.hi ? end_text(iv.hi) : "inf"}));
    boxes.push_back(std::move(sides));
  }
  j["boxes"] = std::move(boxes);
  return j;
}

Json to_json(const ReducedProblem& p) {
  Json j;
  if (p.order)
    j["order"] = *p.order;
  else
    j["order"] = "infinite";
  j["support"] = std::visit([](const auto& h) { return to_json(h); }, p.support);
  Json prov = Json::array();
  for (const auto& [k, x] : p.provenance) prov.push_back(Json::array({k, to_json(x)}));
  j["provenance"] = std::move(prov);
  j["bound"] = p.bound;
  j["exhausted"] = p.exhausted;
  j["truncated"] = p.truncated;
  return j;
}

std::variant<SeqZ, SeqZm> seq_from_json(const Json& j) {
  const std::string domain = j.at("domain").get<std::string>();
  const Json& entries = j.at("entries");
  auto value = [](const Json& e) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3)
      throw std::invalid_argument("sequence entries must be [k, re] or [k, re, im]");
    return cplx(e[1].get<double>(), e.size() == 3 ? e[2].get<double>() : 0.0);
  };
  if (domain == "Z") {
    SeqZ s;
    for (const Json& e : entries) s.set(e.at(0).get<int>(), value(e));
    return s;
  }
  if (domain == "Zm") {
    const int m = j.at("modulus").get<int>();
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    SeqZm s(m);
    for (const Json& e : entries) s[mod_floor(e.at(0).get<long long>(), m)] = value(e);
    return s;
  }
  throw std::invalid_argument("unknown sequence domain \"" + domain + "\"");
}

SupportZ support_z_from_json(const Json& j) { return SupportZ(j.at("half").get<std::vector<int>>()); }

SupportZm support_zm_from_json(const Json& j) {
  const int m = j.at("modulus").get<int>();
  std::vector<int> residues{0};
  for (int k : j.at("half").get<std::vector<int>>()) {
    residues.push_back(k);
    residues.push_back(-k);
  }
  return SupportZm(m, residues);
}

GroupDescriptor group_from_json(const Json& j) {
  if (j.is_string()) return GroupDescriptor::parse(j.get<std::string>());
  std::vector<GroupFactor> factors;
  for (const Json& f : j.at("factors")) {
    const std::string kind = f.at("kind").get<std::string>();
    if (kind == "integers")
      factors.push_back({FactorKind::Integers, 0});
    else if (kind == "reals")
      factors.push_back({FactorKind::Reals, 0});
    else if (kind == "torus")
      factors.push_back({FactorKind::Torus, 0});
    else if (kind == "cyclic")
      factors.push_back({FactorKind::Cyclic, f.at("m").get<int>()});
    else
      throw std::invalid_argument("unknown factor kind \"" + kind + "\"");
  }
  return GroupDescriptor(std::move(factors));
}

GroupElement element_from_json(const GroupDescriptor& g, const Json& j) {
  if (j.is_string()) return parse_element(g, j.get<std::string>());
  if (!j.is_array()) throw std::invalid_argument("element must be an array of coordinates");
  std::vector<Rational> coords;
  for (const Json& c : j) coords.push_back(rational_from_json(c));
  return make_element(g, std::move(coords));
}

OmegaDescriptor omega_from_json(const GroupDescriptor& g, const Json& j) {
  OmegaDescriptor omega;
  if (j.contains("explicit")) {
    std::vector<GroupElement> pts;
    for (const Json& p : j.at("explicit")) pts.push_back(element_from_json(g, p));
    omega.points = std::move(pts);
  }
  if (j.contains("boxes")) {
    for (const Json& b : j.at("boxes")) {
      Box box;
      for (const Json& side : b) {
        if (!side.is_array() || side.size() != 2)
          throw std::invalid_argument("omega: each box side is [lo, hi]");
        box.sides.push_back({end_from_json(side[0], true), end_from_json(side[1], false)});
      }
      omega.boxes.push_back(std::move(box));
    }
  }
  if (!omega.points && omega.boxes.empty())
    throw std::invalid_argument("omega: expected \"explicit\" or \"boxes\"");
  return omega;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: \"" + part + "\"");
    }
    if (part.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("not an integer: \"" + part + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int_list(text).at(0);
    return {v, v};
  }
  const int lo = parse_int_list(text.substr(0, dots)).at(0);
  const int hi = parse_int_list(text.substr(dots + 2)).at(0);
  if (hi < lo) throw std::invalid_argument("empty range \"" + text + "\"");
  return {lo, hi};
}

}  // namespace cfx
