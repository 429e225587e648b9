#include "bsarr/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace bsarr {

InputError::InputError(const std::string& what, std::size_t l, std::size_t c)
    : std::runtime_error(what), line(l), column(c) {}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column), line,
                     column);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

void expect_object(const Json& j, const std::string& what, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw InputError(what + ": expected an object");
  std::set<std::string> known;
  for (auto k : required) {
    known.insert(k);
    if (!j.contains(k)) throw InputError(what + ": missing field \"" + std::string(k) + "\"");
  }
  for (auto k : optional) known.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw InputError(what + ": unknown field \"" + it.key() + "\"");
}

std::size_t get_count(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string get_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

Rational get_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw InputError(what + ": expected a rational as a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
}

Json one_based(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto k : v) a.push_back(k + 1);
  return a;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

Arrangement arrangement_from_json(const Json& j) {
  expect_object(j, "arrangement", {"n", "forms"});
  const std::size_t n = get_count(j["n"], "arrangement.n");
  if (n == 0) throw InputError("arrangement.n: expected n >= 1");
  if (!j["forms"].is_array() || j["forms"].empty()) throw InputError("arrangement.forms: expected a nonempty array");
  std::vector<Vec> forms;
  for (std::size_t k = 0; k < j["forms"].size(); ++k) {
    const auto& f = j["forms"][k];
    const std::string where = "arrangement.forms[" + std::to_string(k) + "]";
    if (!f.is_array()) throw InputError(where + ": expected an array");
    Vec v;
    for (std::size_t m = 0; m < f.size(); ++m) v.push_back(get_rational(f[m], where + "[" + std::to_string(m) + "]"));
    forms.push_back(std::move(v));
  }
  if (n + forms.size() > kMaxVars)
    throw InputError("arrangement: n + p must not exceed " + std::to_string(kMaxVars));
  try {
    return Arrangement(n, std::move(forms));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("arrangement: ") + e.what());
  }
}

Json to_json(const Arrangement& a) {
  Json forms = Json::array();
  for (const auto& f : a.forms) {
    Json row = Json::array();
    for (const auto& c : f) row.push_back(to_string(c));
    forms.push_back(row);
  }
  return Json{{"n", a.n}, {"forms", forms}};
}

Json to_json(const BFactored& b) {
  Json factors = Json::array();
  for (const auto& f : b.factors) {
    if (f.kind == BFactor::Kind::SPlusOne)
      factors.push_back(Json{{"kind", "s+1"}, {"index", f.index + 1}, {"multiplicity", f.multiplicity}});
    else
      factors.push_back(Json{{"kind", "sigma+c"}, {"c", f.c}, {"multiplicity", f.multiplicity}});
  }
  return Json{{"n", b.n}, {"p", b.p}, {"text", b.to_string()}, {"generator", b.generator}, {"factors", factors}};
}

BFactored bfactored_from_json(const Json& j) {
  expect_object(j, "b", {"n", "p", "text", "generator", "factors"});
  BFactored b;
  b.n = get_count(j["n"], "b.n");
  b.p = get_count(j["p"], "b.p");
  if (!j["generator"].is_boolean()) throw InputError("b.generator: expected a boolean");
  b.generator = j["generator"].get<bool>();
  if (!j["factors"].is_array()) throw InputError("b.factors: expected an array");
  for (const auto& f : j["factors"]) {
    BFactor bf;
    const std::string kind = get_string(f.contains("kind") ? f["kind"] : Json(), "b.factors.kind");
    if (kind == "s+1") {
      expect_object(f, "b.factors", {"kind", "index", "multiplicity"});
      bf.kind = BFactor::Kind::SPlusOne;
      const std::size_t idx = get_count(f["index"], "b.factors.index");
      if (idx == 0 || idx > b.p) throw InputError("b.factors.index: out of range");
      bf.index = idx - 1;
    } else if (kind == "sigma+c") {
      expect_object(f, "b.factors", {"kind", "c", "multiplicity"});
      bf.kind = BFactor::Kind::SigmaPlus;
      if (!f["c"].is_number_integer()) throw InputError("b.factors.c: expected an integer");
      bf.c = f["c"].get<long>();
    } else {
      throw InputError("b.factors.kind: expected \"s+1\" or \"sigma+c\"");
    }
    bf.multiplicity = static_cast<unsigned>(get_count(f["multiplicity"], "b.factors.multiplicity"));
    if (bf.multiplicity == 0) throw InputError("b.factors.multiplicity: must be positive");
    b.factors.push_back(bf);
  }
  if (b.to_string() != get_string(j["text"], "b.text")) throw InputError("b.text does not match b.factors");
  return b;
}

std::string build_timestamp() {
  std::time_t t = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json to_json(const CertificateFile& c) {
  const auto& cert = c.certificate;
  return Json{{"format", "bsarr-certificate"},
              {"version", 1},
              {"arrangement", to_json(cert.arrangement)},
              {"b", to_json(cert.b)},
              {"witness", cert.witness.to_string()},
              {"provenance", to_string(cert.provenance)},
              {"status", to_string(cert.status)},
              {"exchange_steps", cert.exchange_steps},
              {"rebalance_steps", cert.rebalance_steps},
              {"timestamp", c.timestamp}};
}

CertificateFile certificate_from_json(const Json& j) {
  expect_object(j, "certificate",
                {"format", "version", "arrangement", "b", "witness", "provenance", "status", "exchange_steps",
                 "rebalance_steps", "timestamp"});
  if (j["format"] != "bsarr-certificate" || j["version"] != 1)
    throw InputError("certificate: unsupported format or version");
  CertificateFile out;
  auto& cert = out.certificate;
  cert.arrangement = arrangement_from_json(j["arrangement"]);
  cert.b = bfactored_from_json(j["b"]);
  if (cert.b.n != cert.arrangement.n || cert.b.p != cert.arrangement.p())
    throw InputError("certificate: b does not match the arrangement dimensions");
  try {
    cert.witness = parse_weyl(get_string(j["witness"], "certificate.witness"), cert.b.n, cert.b.p);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("certificate.witness: ") + e.what());
  }
  const std::string prov = get_string(j["provenance"], "certificate.provenance");
  bool found = false;
  for (auto p : {BernsteinCertificate::Provenance::ClosedForm, BernsteinCertificate::Provenance::Exchange,
                 BernsteinCertificate::Provenance::Recursion, BernsteinCertificate::Provenance::Ansatz})
    if (to_string(p) == prov) {
      cert.provenance = p;
      found = true;
    }
  if (!found) throw InputError("certificate.provenance: unknown value \"" + prov + "\"");
  const std::string status = get_string(j["status"], "certificate.status");
  if (status == "verified")
    cert.status = BernsteinCertificate::Status::Verified;
  else if (status == "unverified")
    cert.status = BernsteinCertificate::Status::Unverified;
  else
    throw InputError("certificate.status: unknown value \"" + status + "\"");
  cert.exchange_steps = get_count(j["exchange_steps"], "certificate.exchange_steps");
  cert.rebalance_steps = get_count(j["rebalance_steps"], "certificate.rebalance_steps");
  out.timestamp = get_string(j["timestamp"], "certificate.timestamp");
  return out;
}

Json to_json(const GenericityCertificate& g) {
  Json dets = Json::array();
  for (const auto& [subset, det] : g.determinants) dets.push_back(Json{{"forms", one_based(subset)}, {"det", to_string(det)}});
  Json j{{"generic", g.generic}, {"pairwise_distinct", g.pairwise_distinct}};
  if (!g.generic) j["witness"] = one_based(g.witness);
  j["determinants"] = dets;
  return j;
}

Json to_json(const GroebnerReport& r) {
  Json leading = Json::array();
  for (std::size_t k = 0; k < r.labels.size(); ++k)
    leading.push_back(Json{{"generator", r.labels[k]}, {"leading", r.leading[k]}, {"expected", r.expected[k]}});
  return Json{{"passed", r.passed()},
              {"leading_monomials", leading},
              {"leading_ok", r.leading_ok},
              {"buchberger",
               {{"pairs_considered", r.stats.pairs_considered},
                {"pairs_skipped_coprime", r.stats.pairs_skipped_coprime},
                {"nonzero_remainders", r.stats.nonzero_remainders},
                {"ok", r.buchberger_ok}}},
              {"syzygies", {{"checked", r.syzygies_checked}, {"ok", r.syzygies_ok}}},
              {"failure", r.failure}};
}

Json to_json(const RegularityReport& r) {
  return Json{{"passed", r.failures == 0},
              {"tested", r.tested},
              {"skipped_in_ideal", r.skipped_in_ideal},
              {"failures", r.failures}};
}

Json to_json(const AnnMembership& m) {
  Json j{{"member", m.member}};
  Json gens = Json::array();
  for (std::size_t k = 0; k < m.generators.size(); ++k) {
    Json g{{"label", m.generators[k].label}};
    if (m.member) g["cofactor"] = m.cofactors[k].to_string();
    gens.push_back(g);
  }
  j["generators"] = gens;
  if (!m.member) j["failed_weight"] = m.failed_weight;
  return j;
}

Json to_json(const SlopeReport& r) {
  Json slopes = Json::array();
  for (const auto& s : r.slopes) slopes.push_back(s);
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back(Json{{"name", c.name},
                         {"ideal", strings(c.ideal)},
                         {"contains_equations", c.contains_equations},
                         {"slopes", one_based(c.slopes_in_ideal)}});
  return Json{{"passed", r.passed()},
              {"slopes", slopes},
              {"components", comps},
              {"dichotomy", {{"checked", r.dichotomy_checked}, {"ok", r.dichotomy_ok}}},
              {"failure", r.failure}};
}

Json to_json(const ConormalReport& r) {
  Json strata = Json::array();
  for (const auto& s : r.strata)
    strata.push_back(Json{{"name", s.name},
                          {"forms", one_based(s.forms)},
                          {"ideal", strings(s.ideal)},
                          {"contains_equations", s.contains_equations}});
  return Json{{"passed", r.passed()}, {"equations", strings(r.equations)}, {"strata", strata}, {"failure", r.failure}};
}

Json to_json(const CkTable& t) {
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries) entries.push_back(Json{{"index", idx}, {"value", v.get_str()}});
  return Json{{"n", t.n}, {"k", t.k}, {"entries", entries}};
}

}  // namespace bsarr
