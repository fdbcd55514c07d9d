#include "fqlin/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fqlin/carlitz.hpp"
#include "fqlin/io.hpp"
#include "fqlin/solvers.hpp"

namespace fqlin::cli {

namespace {

using io::json;

// Input keys filled, in order, by positional expressions.
const std::map<std::string, std::vector<std::string>>& positional_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"add", {"a", "b"}},
      {"compose", {"a", "b"}},
      {"power", {"z"}},
      {"invert", {"u"}},
      {"factor", {"c"}},
      {"ore", {"a", "b"}},
      {"fraction-normalize", {"denom", "numer"}},
      {"tau", {"u"}},
      {"delta", {"u"}},
      {"d", {"u"}},
      {"bracket", {}},
      {"solve-implicit", {}},
      {"solve-ode", {}},
      {"solve-riccati", {"lambda"}},
      {"eval", {"a", "t0"}},
      {"certify", {"a"}},
      {"residual-check", {}},
  };
  return keys;
}

struct Options {
  std::optional<int> p, v, s;
  std::string modulus;
  int order = 8;
  std::string xprec = "16";
  std::optional<int> perf_depth;
  std::string branch = "zero";
  bool check = false;
  bool time_change = false;
  std::optional<int> k;
  std::optional<int> nu;
  std::string input, output;
  std::vector<std::string> exprs;
};

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InvalidConfig("--mod expects comma-separated non-negative integers");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

// "num" or "num/den_exp", meaning num / p^den_exp.
Rational parse_xprec(const std::string& text, int p) {
  auto slash = text.find('/');
  auto parse_int = [](const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size() || !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                                          [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InvalidConfig("--xprec expects num or num/den_exp");
    return BigInt(s);
  };
  BigInt num = parse_int(text.substr(0, slash));
  if (slash == std::string::npos) return Rational(num);
  BigInt e = parse_int(text.substr(slash + 1));
  if (e < 0 || e > 64) throw InvalidConfig("--xprec den_exp out of range");
  return PerfExp{num, static_cast<int>(e)}.to_rational(p);
}

json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw InvalidConfig("input document must be a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("input is not valid JSON: ") + e.what());
  }
}

const json& need(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InvalidConfig("missing input \"" + key + "\"");
  return *it;
}

int need_int(const std::optional<int>& v, const char* flag) {
  if (!v) throw InvalidConfig(std::string("missing ") + flag);
  return *v;
}

json series_result(const CompSeries& z) { return {{"series", io::to_json(z)}, {"text", io::emit(z)}}; }

json cert_json(const GrowthCertificate& c, int p) {
  return {{"kappa", io::rational_to_json(c.kappa, p)}, {"range", c.range}};
}

int json_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidConfig(std::string("expected an integer for ") + what);
  auto v = j.get<std::int64_t>();
  if (v < -1000000 || v > 1000000) throw InvalidConfig(std::string(what) + " out of range");
  return static_cast<int>(v);
}

ImplicitProblem implicit_from(const FieldPtr& f, const json& doc, const Options& opt) {
  ImplicitProblem prob;
  for (const auto& pj : need(doc, "P")) prob.P.push_back(io::comp_from_any(f, pj));
  if (opt.nu)
    prob.nu = opt.nu;
  else if (doc.contains("nu"))
    prob.nu = json_int(doc["nu"], "nu");
  return prob;
}

OdeProblem ode_from(const FieldPtr& f, const json& doc) {
  OdeProblem prob{f, {}};
  for (const auto& t : need(doc, "a")) {
    std::pair<int, int> jk{json_int(need(t, "j"), "j"), json_int(need(t, "k"), "k")};
    PerfSeries c = io::perf_from_any(f, need(t, "coef"));
    auto it = prob.a.find(jk);
    if (it == prob.a.end())
      prob.a.emplace(jk, c);
    else
      it->second = it->second + c;
  }
  return prob;
}

std::map<int, PerfSeries> indexed_coefs(const FieldPtr& f, const json& doc, const std::string& key) {
  std::map<int, PerfSeries> out;
  if (!doc.contains(key)) return out;
  for (const auto& t : doc[key]) {
    int k = json_int(need(t, "k"), "k");
    PerfSeries c = io::perf_from_any(f, need(t, "coef"));
    auto it = out.find(k);
    if (it == out.end())
      out.emplace(k, c);
    else
      it->second = it->second + c;
  }
  return out;
}

RiccatiBranch branch_from(const std::string& s) {
  if (s == "zero") return RiccatiBranch::Zero;
  if (s == "nonzero") return RiccatiBranch::Nonzero;
  throw InvalidConfig("--branch must be zero or nonzero");
}

RiccatiProblem riccati_from(const FieldPtr& f, const json& doc, const Options& opt) {
  RiccatiProblem prob{io::perf_from_any(f, need(doc, "lambda")), indexed_coefs(f, doc, "p"),
                      indexed_coefs(f, doc, "r"), branch_from(opt.branch)};
  if (doc.contains("branch") && doc["branch"].is_string()) prob.branch = branch_from(doc["branch"].get<std::string>());
  return prob;
}

json check_result(const CompSeries& residual, int N) {
  CompSeries r = residual.truncated(N);
  return {{"order", N}, {"residual", io::to_json(r)}, {"zero", r.is_zero()}};
}

json execute(const std::string& cmd, const FieldPtr& f, const json& doc, const Options& opt, const Rational& xprec,
             bool& check_failed) {
  const int N = opt.order;
  const int p = f->p();
  auto series = [&](const std::string& key) { return io::comp_from_any(f, need(doc, key)); };
  auto record_check = [&](json& result, const CompSeries& residual, int order) {
    json c = check_result(residual, order);
    if (opt.check) {
      result["check"] = c;
      if (!c["zero"].get<bool>()) check_failed = true;
    }
  };

  if (cmd == "add") return series_result(series("a") + series("b"));
  if (cmd == "compose") return series_result(compose(series("a"), series("b")));
  if (cmd == "power") return series_result(self_power(series("z"), need_int(opt.k, "--k")));
  if (cmd == "tau") return series_result(tau_power(series("u"), need_int(opt.k, "--k")));
  if (cmd == "delta") return series_result(carlitz_delta(series("u")));
  if (cmd == "d") return series_result(carlitz_d(series("u")));
  if (cmd == "bracket") {
    PerfSeries b = bracket(f, need_int(opt.k, "--k"));
    return {{"value", io::to_json(b)}, {"text", io::emit(b)}};
  }
  if (cmd == "invert") {
    CompSeries u = series("u");
    CompSeries inv = invert_unit(u, N);
    json r = series_result(inv);
    record_check(r, compose(u, inv) - CompSeries::identity(f), N);
    return r;
  }
  if (cmd == "factor") {
    UnitFactorization uf = factor_unit(series("c"));
    return {{"m", uf.m}, {"unit", io::to_json(uf.unit)}, {"text", io::emit(uf.unit)}};
  }
  if (cmd == "ore") {
    CompSeries a = series("a"), b = series("b");
    OreMultiple om = ore_left_multiple(a, b, N);
    json r = {{"a_prime", io::to_json(om.a_prime)},
              {"b_prime", io::to_json(om.b_prime)},
              {"text", {io::emit(om.a_prime), io::emit(om.b_prime)}},
              {"a_prime_certificate", cert_json(growth_certificate(om.a_prime), p)}};
    CompSeries diff = compose(om.a_prime, b) - compose(om.b_prime, a);
    record_check(r, diff, diff.order() < CompSeries::kExact ? diff.order() : N);
    return r;
  }
  if (cmd == "fraction-normalize") {
    OreFraction fr = doc.contains("fraction") ? io::fraction_from_json(f, doc["fraction"])
                                               : OreFraction{series("denom"), series("numer")};
    FractionNormalForm nf = fraction_normalize(fr, N);
    CompSeries value = meromorphic_value(nf);
    return {{"m", nf.m},
            {"a_prime", io::to_json(nf.a_prime)},
            {"value", io::to_json(value)},
            {"text", io::emit(value)}};
  }
  if (cmd == "eval") {
    CompSeries a = series("a");
    PerfSeries t0 = io::perf_from_any(f, need(doc, "t0"));
    GrowthCertificate cert = growth_certificate(a);
    PerfSeries v = cs_eval(a, t0, cert);
    return {{"value", io::to_json(v)}, {"text", io::emit(v)}, {"certificate", cert_json(cert, p)}};
  }
  if (cmd == "certify") {
    GrowthCertificate cert = growth_certificate(series("a"));
    return cert_json(cert, p);
  }
  if (cmd == "solve-implicit") {
    ImplicitProblem prob = implicit_from(f, doc, opt);
    SeriesSolution sol = solve_implicit(prob, N);
    json r = series_result(sol.z);
    r["certificate"] = cert_json(sol.cert, p);
    record_check(r, implicit_residual(prob, sol.z), N);
    return r;
  }
  if (cmd == "solve-ode") {
    OdeProblem prob = ode_from(f, doc);
    json r;
    CompSeries z;
    if (opt.time_change) {
      TimeChange tc = normalize_time_change(prob);
      SeriesSolution w = solve_ode(tc.problem, N);
      z = undo_time_change(w.z, tc.gamma);
      r["time_change"] = {{"e", tc.e}, {"normalized", series_result(w.z)}};
    } else {
      z = solve_ode(prob, N).z;
    }
    json s = series_result(z);
    r["series"] = s["series"];
    r["text"] = s["text"];
    r["certificate"] = cert_json(growth_certificate(z), p);
    record_check(r, ode_residual(prob, z), N);
    return r;
  }
  if (cmd == "solve-riccati") {
    RiccatiProblem prob = riccati_from(f, doc, opt);
    RiccatiSolution sol = solve_riccati(prob, N, xprec);
    CompSeries y = sol.y();
    json a = json::array();
    for (const auto& ai : sol.a) a.push_back(io::to_json(ai));
    json steps = json::array();
    for (const auto& st : sol.steps) {
      json vals = json::array();
      for (const auto& v : st.residual_valuations) vals.push_back(io::rational_to_json(v, p));
      steps.push_back({{"l", st.l}, {"residual_valuations", vals}});
    }
    json r = {{"c", io::to_json(sol.c)}, {"a", a},         {"series", io::to_json(y)},
              {"text", io::emit(y)},     {"hensel", steps}, {"certificate", cert_json(sol.cert, p)}};
    record_check(r, riccati_residual(prob, y), N);
    return r;
  }
  if (cmd == "residual-check") {
    const json& pj = need(doc, "problem");
    const std::string kind = need(pj, "kind").get<std::string>();
    CompSeries z = series("solution");
    CompSeries residual;
    if (kind == "implicit")
      residual = implicit_residual(implicit_from(f, pj, opt), z);
    else if (kind == "ode")
      residual = ode_residual(ode_from(f, pj), z);
    else if (kind == "riccati")
      residual = riccati_residual(riccati_from(f, pj, opt), z);
    else
      throw InvalidConfig("problem kind must be implicit, ode or riccati");
    json c = check_result(residual, N);
    if (opt.check && !c["zero"].get<bool>()) check_failed = true;
    return c;
  }
  throw InvalidConfig("unknown subcommand " + cmd);
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composition-ring series over F_q((x))_perf", "fqlin"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  app.add_option("--p", opt.p, "Characteristic");
  app.add_option("--v", opt.v, "q = p^v");
  app.add_option("--s", opt.s, "Residue field F_{q^s}");
  app.add_option("--mod", opt.modulus, "Modulus coefficients, ascending, comma-separated");
  app.add_option("--order", opt.order, "Truncation order N")->capture_default_str();
  app.add_option("--xprec", opt.xprec, "x-adic precision num or num/den_exp")->capture_default_str();
  app.add_option("--perf-depth", opt.perf_depth, "Maximum p-power in exponent denominators");
  app.add_option("--branch", opt.branch, "Riccati branch: zero or nonzero")->capture_default_str();
  app.add_flag("--check", opt.check, "Back-substitute and fail with status 4 on a nonzero residual");
  app.add_flag("--time-change", opt.time_change, "solve-ode: normalize by x^e first");
  app.add_option("--k", opt.k, "Integer argument of power, tau and bracket");
  app.add_option("--nu", opt.nu, "solve-implicit: leading index of P_1");
  app.add_option("-i,--input", opt.input, "Input JSON document, - for stdin");
  app.add_option("-o,--output", opt.output, "Output file");
  for (const auto& [name, keys] : positional_keys()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("exprs", opt.exprs, "Series expressions");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    json doc = opt.input.empty() ? json::object() : read_document(opt.input);
    const auto& keys = positional_keys().at(cmd);
    if (cmd == "solve-implicit" && !opt.exprs.empty()) {
      doc["P"] = opt.exprs;
    } else {
      if (opt.exprs.size() > keys.size()) throw InvalidConfig("too many expressions for " + cmd);
      for (std::size_t i = 0; i < opt.exprs.size(); ++i) doc[keys[i]] = opt.exprs[i];
    }

    FieldConfig config;
    if (doc.contains("field")) config = io::field_config_from_json(doc["field"]);
    if (opt.p) config.p = *opt.p;
    if (opt.v) config.v = *opt.v;
    if (opt.s) config.s = *opt.s;
    if (!opt.modulus.empty()) config.modulus = parse_modulus(opt.modulus);
    if ((opt.p || opt.v || opt.s) && opt.modulus.empty()) config.modulus.clear();
    PrecisionOptions popt;
    if (opt.perf_depth) popt.perf_depth = *opt.perf_depth;
    const Rational xprec = parse_xprec(opt.xprec, config.p > 1 ? config.p : 2);
    if (xprec <= 0) throw InvalidConfig("--xprec must be positive");
    popt.rel_prec = xprec;
    FieldPtr field = Field::create(config, popt);
    if (opt.order < 0 || opt.order > 4096) throw InvalidConfig("--order must lie in [0, 4096]");

    json digests = json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) digests[it.key()] = sha256_hex(it.value().dump());

    json manifest = {{"command", cmd},
                     {"field", io::to_json(field->config())},
                     {"order", opt.order},
                     {"xprec", io::rational_to_json(xprec, field->p())},
                     {"perf_depth", field->perf_depth()},
                     {"check", opt.check},
                     {"input_sha256", digests}};
    if (cmd == "solve-riccati") manifest["branch"] = opt.branch;
    if (opt.k) manifest["k"] = *opt.k;
    if (opt.nu) manifest["nu"] = *opt.nu;
    if (opt.time_change) manifest["time_change"] = true;

    bool check_failed = false;
    json result = execute(cmd, field, doc, opt, xprec, check_failed);
    json document = {{"manifest", manifest}, {"result", result}};
    std::string text = document.dump(2) + "\n";
    if (opt.output.empty()) {
      out << text;
    } else {
      std::ofstream f(opt.output, std::ios::binary);
      if (!f) throw InvalidConfig("cannot write " + opt.output);
      f << text;
    }
    if (check_failed) {
      err << "error: residual check failed\n";
      return 4;
    }
    return 0;
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace fqlin::cli
