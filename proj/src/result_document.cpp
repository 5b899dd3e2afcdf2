#include "polyopt/result_document.hpp"

#include <sstream>

#include "polyopt/errors.hpp"

namespace polyopt {

using nlohmann::json;

namespace {

json poly_json(const UPoly& p) {
  json a = json::array();
  for (const Rat& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

UPoly poly_from(const json& a) {
  std::vector<Rat> c;
  for (const auto& x : a) c.push_back(parse_rat(x.get<std::string>()));
  return UPoly(std::move(c));
}

json rats_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& c : v) a.push_back(to_string(c));
  return a;
}

}  // namespace

RootInterval locate_root(const UPoly& p, const ThomEncoding& thom) {
  const auto th = thom_encodings(p);
  const auto ivs = isolate_roots(p);
  if (th.size() != ivs.size()) throw InvariantViolation("root counts disagree");
  for (size_t i = 0; i < th.size(); ++i)
    if (th[i] == thom) return ivs[i];
  throw InvalidInput("no real root has the given Thom encoding");
}

std::vector<RootInterval> entry_point(const MinimizerEntry& e, const Rat& width) {
  RootInterval iv = locate_root(e.geomres.p, e.thom);
  std::vector<RootInterval> out;
  for (size_t j = 0; j < e.geomres.x_count; ++j) out.push_back(enclose_at_root(e.geomres.p, iv, e.geomres.v[j], width));
  return out;
}

RootInterval entry_value(const MinimizerEntry& e, const Rat& width) {
  const UPoly hs = value_polynomial(e.h);
  return refine_root(hs, locate_root(hs, e.value_thom), width);
}

Rat decimal_width(int digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits + 1));
  return make_rat(Int(1), scale);
}

std::string approx_decimal(const RootInterval& iv, int digits) { return to_decimal((iv.lo + iv.hi) / 2, digits); }

json result_to_json(const MinimizerFamily& fam, const Problem& problem, const std::vector<std::string>& vars,
                    int precision) {
  const Rat w = decimal_width(precision);
  json doc;
  doc["schema"] = kResultSchema;
  doc["vars"] = vars;
  doc["n"] = problem.n;
  doc["m"] = problem.m;
  doc["l"] = problem.l;
  doc["d"] = problem.d;
  doc["seed"] = std::to_string(fam.seed);
  doc["retries"] = fam.retries;
  doc["alpha"] = rats_json(fam.alpha);
  doc["precision"] = precision;
  json entries = json::array();
  for (const auto& e : fam.entries) {
    json je;
    json active = json::array(), signs = json::array();
    for (size_t k = 0; k < e.candidate.s(); ++k) {
      active.push_back(e.candidate.active[k] + 1);
      signs.push_back(e.candidate.sigma[k]);
    }
    je["candidate"] = {{"label", e.candidate.label()}, {"active", active}, {"sigma", signs}, {"bezout", e.candidate.bezout}};
    je["p"] = poly_json(e.geomres.p);
    json v = json::array();
    for (size_t j = 0; j < e.geomres.x_count; ++j) v.push_back(poly_json(e.geomres.v[j]));
    je["v"] = v;
    je["thom"] = e.thom.signs;
    je["h"] = poly_json(e.h);
    je["value_thom"] = e.value_thom.signs;
    json pt = json::array();
    for (const auto& iv : entry_point(e, w)) pt.push_back(approx_decimal(iv, precision));
    je["point"] = pt;
    je["g_value"] = approx_decimal(entry_value(e, w), precision);
    entries.push_back(std::move(je));
  }
  if (!fam.entries.empty()) doc["g_min"] = entries[0]["g_value"];
  doc["entries"] = entries;
  return doc;
}

MinimizerFamily family_from_json(const json& doc) {
  if (doc.value("schema", "") != kResultSchema) throw InvalidInput("unsupported result schema");
  MinimizerFamily fam;
  fam.seed = std::stoull(doc.at("seed").get<std::string>());
  fam.retries = doc.at("retries").get<int>();
  for (const auto& a : doc.at("alpha")) fam.alpha.push_back(parse_rat(a.get<std::string>()));
  for (const auto& je : doc.at("entries")) {
    MinimizerEntry e;
    const auto& c = je.at("candidate");
    for (const auto& a : c.at("active")) e.candidate.active.push_back(a.get<size_t>() - 1);
    e.candidate.sigma = c.at("sigma").get<std::vector<int>>();
    e.candidate.bezout = c.at("bezout").get<std::int64_t>();
    e.geomres.alpha = fam.alpha;
    e.geomres.x_count = fam.alpha.size();
    e.geomres.p = poly_from(je.at("p"));
    for (const auto& v : je.at("v")) e.geomres.v.push_back(poly_from(v));
    e.thom.signs = je.at("thom").get<std::vector<int>>();
    e.h = poly_from(je.at("h"));
    e.value_thom.signs = je.at("value_thom").get<std::vector<int>>();
    fam.entries.push_back(std::move(e));
  }
  return fam;
}

std::string emit_result(const MinimizerFamily& fam, const Problem& problem, const std::vector<std::string>& vars,
                        OutputFormat fmt, int precision) {
  const json doc = result_to_json(fam, problem, vars, precision);
  if (fmt == OutputFormat::kJson) return doc.dump(2) + "\n";
  std::ostringstream os;
  os << "minimum: " << doc["g_min"].get<std::string>() << "\n";
  os << "minimizers: " << fam.entries.size() << "\n";
  for (size_t i = 0; i < fam.entries.size(); ++i) {
    const auto& e = fam.entries[i];
    const auto& je = doc["entries"][i];
    os << "[" << i + 1 << "] candidate " << e.candidate.label() << "\n";
    for (size_t j = 0; j < vars.size(); ++j) os << "    " << vars[j] << " = " << je["point"][j].get<std::string>() << "\n";
    os << "    p(u) = " << to_string(e.geomres.p) << "\n";
    for (size_t j = 0; j < vars.size(); ++j) os << "    " << vars[j] << "(u) = " << to_string(e.geomres.v[j]) << "\n";
    os << "    thom = [";
    for (size_t k = 0; k < e.thom.signs.size(); ++k) os << (k ? " " : "") << e.thom.signs[k];
    os << "]\n";
  }
  os << "seed " << fam.seed << ", retries " << fam.retries << ", u =";
  for (size_t j = 0; j < vars.size(); ++j) os << " " << (sgn(fam.alpha[j]) < 0 ? "- " : "+ ") << to_string(abs(fam.alpha[j])) << "*" << vars[j];
  os << "\n";
  return os.str();
}

}  // namespace polyopt
