#include "lienard/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lienard/error.hpp"

namespace lienard {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        os << (first ? "" : ",") << pad << Json(key).dump() << sep;
        write(os, value, indent, depth + 1);
        first = false;
      }
      os << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Flat numeric arrays stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_primitive();
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        os << (first ? "" : (flat ? ", " : ",")) << (flat ? "" : pad);
        write(os, v, indent, depth + 1);
        first = false;
      }
      os << (flat ? "" : close) << ']';
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double as_double(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw DomainError(std::string("system file: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> as_doubles(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw DomainError(std::string("system file: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw DomainError(std::string("system file: '") + key + "' holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

Provenance provenance_from_json(const Json& j) {
  Provenance p;
  const std::string kind = j.value("kind", "seed");
  if (kind == "seed") p.kind = Provenance::Kind::seed;
  else if (kind == "registry") p.kind = Provenance::Kind::registry;
  else if (kind == "doubled") p.kind = Provenance::Kind::doubled;
  else if (kind == "composed") p.kind = Provenance::Kind::composed;
  else if (kind == "weakened") p.kind = Provenance::Kind::weakened;
  else throw DomainError("system file: unknown provenance kind '" + kind + "'");
  p.label = j.value("label", "");
  if (j.contains("parity") && j.at("parity").is_string()) p.parity = parse_parity(j.at("parity").get<std::string>());
  if (j.contains("x0") && j.at("x0").is_number()) p.x0 = j.at("x0").get<double>();
  if (j.contains("parent") && j.at("parent").is_object())
    p.parent = std::make_shared<const Provenance>(provenance_from_json(j.at("parent")));
  return p;
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (double c : p.coeffs()) out.push_back(c);
  return out;
}

Json to_json(const PeriodAnnulus& a) {
  return {{"id", a.id}, {"kind", to_string(a.kind)}, {"center_x", a.center_x}, {"h_min", a.h_min},
          {"h_max", number(a.h_max)}};
}

Json to_json(const Provenance& p) {
  Json out = {{"kind", to_string(p.kind)}};
  if (!p.label.empty()) out["label"] = p.label;
  if (p.parity) out["parity"] = to_string(*p.parity);
  if (p.x0) out["x0"] = *p.x0;
  if (p.parent) out["parent"] = to_json(*p.parent);
  return out;
}

Json to_json(const ZCertificate& c) {
  Json windows = Json::array();
  for (const auto& w : c.windows) {
    Json zeros = Json::array();
    for (double z : w.zeros) zeros.push_back(z);
    windows.push_back({{"annulus", w.annulus_id}, {"h_lo", w.h_lo}, {"h_hi", w.h_hi}, {"zeros", zeros}});
  }
  return {{"n", c.n}, {"m", c.m}, {"k", c.k}, {"windows", windows}, {"epsilon0", c.epsilon0}};
}

Json to_json(const ConstructedSystem& sys) {
  Json b = Json::array();
  for (double v : sys.b) b.push_back(v);
  return {{"F", to_json(sys.F)},
          {"g", to_json(sys.g)},
          {"lambda", sys.lambda},
          {"mu", sys.mu},
          {"b", b},
          {"x0", sys.x0 ? Json(*sys.x0) : Json(nullptr)},
          {"certificate", to_json(sys.certificate)},
          {"provenance", to_json(sys.certificate.provenance)}};
}

Json to_json(const MelnikovProfile& prof) {
  Json h = Json::array(), m = Json::array(), zeros = Json::array();
  for (double v : prof.h_grid) h.push_back(v);
  for (double v : prof.values) m.push_back(v);
  for (const auto& z : prof.zeros) zeros.push_back({{"h", z.h}, {"h_lo", z.h_lo}, {"h_hi", z.h_hi}});
  return {{"annulus", to_json(prof.annulus)}, {"h", h}, {"M", m}, {"zeros", zeros}};
}

Json to_json(const BoundRecord& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) {
    if (v == std::floor(v) && std::abs(v) < 9e15) params[k] = static_cast<long long>(v);
    else params[k] = v;
  }
  return {{"n", r.n},      {"m", r.m},           {"bound", r.ceiling()}, {"value", r.bound},
          {"source", to_string(r.source)}, {"direct", r.direct}, {"params", params}};
}

Json to_json(const CycleCount& c) {
  Json brackets = Json::array();
  for (const auto& b : c.brackets) brackets.push_back({{"a_lo", b.a_lo}, {"a_hi", b.a_hi}});
  return {{"epsilon", c.epsilon}, {"window", {c.a_lo, c.a_hi}}, {"count", c.count}, {"brackets", brackets}};
}

Json to_json(const StableCount& s) {
  Json history = Json::array();
  for (const auto& [eps, count] : s.history) history.push_back({{"epsilon", eps}, {"count", count}});
  return {{"epsilon", s.epsilon}, {"count", s.count}, {"history", history}};
}

Json to_json(const Triple& t) { return {{"n", t.n}, {"m", t.m}, {"k", t.k}}; }

ConstructedSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("system file: top level must be an object");
  ConstructedSystem sys;
  sys.F = Polynomial(as_doubles(j, "F"));
  sys.g = Polynomial(as_doubles(j, "g"));
  if (j.contains("lambda")) sys.lambda = as_double(j, "lambda");
  if (j.contains("mu")) sys.mu = as_double(j, "mu");
  if (j.contains("b")) sys.b = as_doubles(j, "b");
  if (j.contains("x0") && !j.at("x0").is_null()) sys.x0 = as_double(j, "x0");

  ZCertificate& c = sys.certificate;
  c.n = std::max(1, sys.F.degree().value_or(0) - 1);
  c.m = std::max(1, sys.g.degree().value_or(1));
  if (j.contains("certificate")) {
    const Json& cj = j.at("certificate");
    c.n = cj.value("n", c.n);
    c.m = cj.value("m", c.m);
    c.k = cj.value("k", 0);
    c.epsilon0 = cj.value("epsilon0", 0.0);
    if (cj.contains("windows")) {
      for (const auto& w : cj.at("windows")) {
        HWindow hw;
        hw.annulus_id = w.value("annulus", 0);
        hw.h_lo = as_double(w, "h_lo");
        hw.h_hi = as_double(w, "h_hi");
        if (w.contains("zeros")) hw.zeros = as_doubles(w, "zeros");
        c.windows.push_back(std::move(hw));
      }
    }
  }
  if (j.contains("provenance") && j.at("provenance").is_object()) c.provenance = provenance_from_json(j.at("provenance"));
  return sys;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

ConstructedSystem load_system(const std::string& path) { return system_from_json(load_json(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

std::string profile_csv(const MelnikovProfile& prof) {
  std::string out = "h,M\n";
  for (std::size_t i = 0; i < prof.h_grid.size(); ++i)
    out += format_double(prof.h_grid[i]) + "," + format_double(prof.values[i]) + "\n";
  return out;
}

std::string bounds_csv(const std::vector<BoundRecord>& table) {
  std::string out = "n,m,bound,source\n";
  for (const auto& r : table)
    out += std::to_string(r.n) + "," + std::to_string(r.m) + "," + std::to_string(r.ceiling()) + "," +
           to_string(r.source) + "\n";
  return out;
}

Polynomial parse_coefficients(const std::string& text) {
  std::vector<double> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad coefficient '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw DomainError("bad coefficient '" + item + "'");
    coeffs.push_back(v);
  }
  if (coeffs.empty()) throw DomainError("empty coefficient list");
  return Polynomial(std::move(coeffs));
}

}  // namespace lienard
