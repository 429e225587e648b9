#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "bsarr/io.hpp"

namespace bsarr::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  // 0 means "derive from b": order = deg b, degree = deg b - p.
  unsigned order_bound = 0;
  unsigned degree_bound = 0;
  bool degree_bound_set = false;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct Result {
  Json report;
  int code = kPass;
  std::string summary;
};

std::string subset_text(const std::vector<std::size_t>& w) {
  std::string s = "{";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k] + 1);
  return s + "}";
}

Arrangement load_generic(const RunConfig& cfg) {
  Arrangement a = arrangement_from_json(read_json_file(cfg.input));
  auto g = check_generic(a);
  if (!g.generic) throw NotGeneric("arrangement is not generic, witness " + subset_text(g.witness));
  return a;
}

Json header(const std::string& command, const Arrangement& a) {
  return Json{{"command", command}, {"arrangement", to_json(a)}};
}

Result cmd_check_generic(const RunConfig& cfg) {
  Arrangement a = arrangement_from_json(read_json_file(cfg.input));
  auto g = check_generic(a);
  Json r = header(cfg.command, a);
  r["result"] = to_json(g);
  return {r, g.generic ? kPass : kCheckFailed,
          g.generic ? "generic" : "not generic, witness " + subset_text(g.witness)};
}

Result cmd_candidate(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  auto b = candidate_b(a);
  Json r = header(cfg.command, a);
  r["b"] = to_json(b);
  r["statement"] = b.generator ? "generator" : "member";
  return {r, kPass, b.to_string()};
}

Result cmd_witness(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  CertificateFile file{build_witness(a, candidate_b(a)), build_timestamp()};
  const bool ok = file.certificate.status == BernsteinCertificate::Status::Verified;
  return {to_json(file), ok ? kPass : kCheckFailed,
          to_string(file.certificate.status) + " (" + to_string(file.certificate.provenance) + ")"};
}

Result cmd_verify(const RunConfig& cfg) {
  CertificateFile file = certificate_from_json(read_json_file(cfg.input));
  auto& cert = file.certificate;
  const auto recorded = cert.status;
  const bool candidate = candidate_b(cert.arrangement) == cert.b;
  const bool ok = verify_certificate(cert);
  Json r = header(cfg.command, cert.arrangement);
  r["b"] = cert.b.to_string();
  r["b_is_candidate"] = candidate;
  r["recorded_status"] = to_string(recorded);
  r["verified"] = ok;
  return {r, ok ? kPass : kCheckFailed, ok ? "verified" : "verification failed"};
}

Result cmd_ansatz(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  auto b = candidate_b(a);
  const unsigned deg = static_cast<unsigned>(b.expand().total_degree());
  const unsigned order = cfg.order_bound ? cfg.order_bound : deg;
  const unsigned degree = cfg.degree_bound_set ? cfg.degree_bound : (deg > a.p() ? deg - a.p() : 0);
  AnsatzStats st;
  auto sol = ansatz_solve(a, b, order, degree, &st);
  Json r = header(cfg.command, a);
  r["b"] = b.to_string();
  r["order_bound"] = order;
  r["degree_bound"] = degree;
  r["unknowns"] = st.unknowns;
  r["equations"] = st.equations;
  r["rank"] = st.rank;
  r["found"] = sol.has_value();
  bool ok = false;
  if (sol) {
    BernsteinCertificate c{a, b, *sol};
    c.provenance = BernsteinCertificate::Provenance::Ansatz;
    ok = verify_certificate(c);
    r["witness"] = sol->to_string();
    r["verified"] = ok;
  }
  return {r, ok ? kPass : kCheckFailed, ok ? "solution found and verified" : "no verified solution at these bounds"};
}

Result cmd_annihilator(const RunConfig& cfg) {
  Json in = read_json_file(cfg.input);
  if (!in.is_object() || in.size() != 2 || !in.contains("arrangement") || !in.contains("operator"))
    throw InputError("annihilator input: expected exactly the fields \"arrangement\" and \"operator\"");
  Arrangement a = arrangement_from_json(in["arrangement"]);
  if (auto g = check_generic(a); !g.generic)
    throw NotGeneric("arrangement is not generic, witness " + subset_text(g.witness));
  if (!in["operator"].is_string()) throw InputError("annihilator input: \"operator\" must be a string");
  WeylOp op;
  try {
    op = parse_weyl(in["operator"].get<std::string>(), a.n, a.p());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("operator: ") + e.what());
  }
  const bool kills = annihilates(op, a);
  Json r = header(cfg.command, a);
  r["operator"] = op.to_string();
  r["annihilates"] = kills;
  int code = kills ? kPass : kCheckFailed;
  std::string summary = kills ? "annihilates l^s" : "does not annihilate l^s";
  if (a.p() == a.n + 1) {
    auto m = ann_membership(op, a);
    r["membership"] = to_json(m);
    if (m.member != kills) {
      code = kCheckFailed;
      summary += m.member ? ", but reduces to the generators" : ", but the generator reduction fails";
    }
  }
  return {r, code, summary};
}

void require_p_n1(const Arrangement& a) {
  if (a.p() != a.n + 1) throw WrongP("this command needs p = n+1 (got n=" + std::to_string(a.n) +
                                     ", p=" + std::to_string(a.p()) + ")");
}

Result cmd_groebner(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  require_p_n1(a);
  auto s = symbol_ideal(a);
  auto g = groebner_check(s);
  auto reg = regularity_check(s, 100, cfg.seed);
  Json r = header(cfg.command, a);
  r["seed"] = cfg.seed;
  r["groebner"] = to_json(g);
  r["regularity"] = to_json(reg);
  const bool ok = g.passed() && reg.failures == 0;
  return {r, ok ? kPass : kCheckFailed, ok ? "passed" : "failed: " + g.failure};
}

Result cmd_slopes(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  require_p_n1(a);
  auto s = slopes_report(a);
  Json r = header(cfg.command, a);
  r["result"] = to_json(s);
  return {r, s.passed() ? kPass : kCheckFailed,
          s.passed() ? std::to_string(s.slopes.size()) + " slopes" : "failed: " + s.failure};
}

Result cmd_conormal(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  require_p_n1(a);
  auto c = conormal_check(a);
  Json r = header(cfg.command, a);
  r["result"] = to_json(c);
  return {r, c.passed() ? kPass : kCheckFailed,
          c.passed() ? std::to_string(c.strata.size()) + " strata" : "failed: " + c.failure};
}

Result cmd_ck_table(const RunConfig& cfg) {
  Arrangement a = arrangement_from_json(read_json_file(cfg.input));
  Json tables = Json::array();
  bool ok = true;
  for (std::size_t k = 1; k <= a.n + 1; ++k) {
    auto t = ck_table(a.n, k);
    Json j = to_json(t);
    const bool match = ck_operator(t, EulerOffset::PlusJPlusN) == euler_expand(a.n, k, EulerOffset::PlusJPlusN) &&
                       ck_operator(t, EulerOffset::MinusJ) == euler_expand(a.n, k, EulerOffset::MinusJ);
    j["matches_euler_expand"] = match;
    ok = ok && match;
    tables.push_back(j);
  }
  Json r{{"command", cfg.command}, {"n", a.n}, {"tables", tables}};
  return {r, ok ? kPass : kCheckFailed, ok ? "tables match euler_expand" : "table mismatch"};
}

Result cmd_euler_check(const RunConfig& cfg) {
  Arrangement a = load_generic(cfg);
  auto frame = make_frame(a);
  auto ctx = weyl_context(a.n, a.p());
  MultiPoly sigma(ctx);
  for (std::size_t j = 0; j < a.p(); ++j) sigma += MultiPoly::variable(ctx, a.n + j);
  Json r = header(cfg.command, a);
  const bool euler = annihilates(tilde_E(a), frame);
  r["tilde_E_annihilates"] = euler;
  bool ok = euler;
  Json ks = Json::array();
  MultiPoly prod = MultiPoly::constant(ctx, 1);
  for (std::size_t k = 1; k <= a.n + 1; ++k) {
    prod = prod * (sigma + MultiPoly::constant(ctx, Rational(static_cast<long>(a.n + k - 1))));
    auto op = ck_operator(ck_table(a.n, k), EulerOffset::PlusJPlusN, a.p());
    const bool eq = apply_op(op, LsElement::unit(frame)) == LsElement::unit(frame).times(prod);
    ks.push_back(Json{{"k", k}, {"holds", eq}});
    ok = ok && eq;
  }
  r["ck_identity"] = ks;
  return {r, ok ? kPass : kCheckFailed, ok ? "all identities hold" : "identity failed"};
}

const std::map<std::string, std::function<Result(const RunConfig&)>>& commands() {
  static const std::map<std::string, std::function<Result(const RunConfig&)>> table{
      {"check-generic", cmd_check_generic}, {"candidate", cmd_candidate},
      {"witness", cmd_witness},             {"verify", cmd_verify},
      {"ansatz", cmd_ansatz},               {"annihilator", cmd_annihilator},
      {"groebner-check", cmd_groebner},     {"slopes", cmd_slopes},
      {"conormal-check", cmd_conormal},     {"ck-table", cmd_ck_table},
      {"euler-check", cmd_euler_check}};
  return table;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> text{
      {"check-generic", "check that every min(n,p) forms are independent"},
      {"candidate", "print the candidate polynomial b(s)"},
      {"witness", "build and verify a witness operator, write a certificate"},
      {"verify", "recheck a certificate file"},
      {"ansatz", "solve for a witness by linear algebra at given bounds"},
      {"annihilator", "test whether an operator annihilates l^s (input: arrangement + operator)"},
      {"groebner-check", "check the Groebner basis of the symbol ideal and its regularity (p = n+1)"},
      {"slopes", "components of the characteristic variety over H = 0 and their slopes (p = n+1)"},
      {"conormal-check", "check the conormal strata of the zero fiber (p = n+1)"},
      {"ck-table", "coefficient tables of the Euler products for k = 1..n+1"},
      {"euler-check", "check the Euler product identities on l^s"}};
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bernstein-Sato certificates for generic hyperplane arrangements", "bsarr"};
  app.require_subcommand(1, 1);
  std::vector<CLI::App*> subs;
  for (const auto& [name, fn] : commands()) {
    auto* sub = app.add_subcommand(name, descriptions().at(name));
    sub->add_option("--input", cfg.input, "input JSON file")->required();
    sub->add_option("--output", cfg.output, "output JSON file (default: stdout)");
    sub->add_option("--order-bound", cfg.order_bound, "ansatz derivation order bound (default: deg b)");
    sub->add_option_function<unsigned>(
        "--degree-bound",
        [&](unsigned v) {
          cfg.degree_bound = v;
          cfg.degree_bound_set = true;
        },
        "ansatz coefficient degree bound (default: deg b - p)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks (default: 1)");
    subs.push_back(sub);
  }
  std::vector<const char*> argv{"bsarr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  for (auto* sub : subs)
    if (sub->parsed()) cfg.command = sub->get_name();

  if (const char* env = std::getenv("BSARR_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      err << "error: BSARR_THREADS must be a positive integer\n";
      return kInputError;
    }
    cfg.threads = static_cast<unsigned>(v);
  }

  Result res;
  try {
    res = commands().at(cfg.command)(cfg);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const WrongP& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotGeneric& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const ConstructionFailed& e) {
    err << "error: construction failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  const std::string text = dump_json(res.report);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!(f << text)) {
      err << "error: cannot write " << cfg.output << "\n";
      return kInputError;
    }
  }
  err << cfg.command << ": " << res.summary << "\n";
  return res.code;
}

}  // namespace bsarr::cli
