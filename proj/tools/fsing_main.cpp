// Command-line front end: parses a polynomial over a prime field and reports
// test ideals, F-jumping intervals, gamma digit sets, Bernstein-Sato root
// data, F-thresholds, and the operator verification suites, as deterministic
// text, JSON, or CSV.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsing/fsing.hpp"

using json = nlohmann::ordered_json;
using namespace fsing;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitResource = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
  uint64_t prime = 0;
  std::string vars;
  std::string poly;
  size_t level = 1;
  std::string format = "text";
  bool decimal = false;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RingPtr ring_of(const CommonOpts& o) { return make_ring(o.prime, split_csv(o.vars)); }

BigRational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator");
    return BigRational(num, den);
  } catch (const std::runtime_error&) {
    throw std::domain_error("cannot parse rational '" + s + "'");
  }
}

std::vector<MvPoly> parse_poly_list(const std::string& csv, const RingPtr& ring) {
  std::vector<MvPoly> out;
  for (const auto& part : split_csv(csv)) out.push_back(parse(part, ring));
  return out;
}

json rational_json(const PPowRational& r, bool decimal) {
  json j;
  j["num"] = r.num().str();
  j["den_exp"] = r.den_exp();
  if (decimal) j["decimal"] = r.approx();
  return j;
}

std::string rational_text(const PPowRational& r, bool decimal) {
  std::string s = r.to_string();
  if (decimal) s += " (~" + std::to_string(r.approx()) + ")";
  return s;
}

std::vector<std::string> ideal_strings(const Ideal& I) {
  std::vector<std::string> out;
  for (const auto& g : I.groebner()) out.push_back(render(g));
  if (out.empty()) out.push_back("0");
  return out;
}

json header_json(const CommonOpts& o) {
  json j;
  j["prime"] = o.prime;
  j["vars"] = split_csv(o.vars);
  j["poly"] = o.poly;
  j["level"] = o.level;
  return j;
}

void emit(const json& j, const CommonOpts& o, const std::string& text, const std::string& csv) {
  if (o.format == "json") std::cout << j.dump(2) << "\n";
  else if (o.format == "csv") std::cout << csv;
  else std::cout << text;
}

json report_json(const VerifyReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["checks"] = rep.checks;
  j["witnesses"] = rep.witnesses;
  return j;
}

std::string report_text(const std::string& name, const VerifyReport& rep) {
  std::ostringstream out;
  out << name << ": " << (rep.pass ? "pass" : "FAIL") << " (" << rep.checks << " checks)\n";
  for (const auto& w : rep.witnesses) out << "  " << w << "\n";
  return out.str();
}

int finish_report(const std::string& name, const VerifyReport& rep, const CommonOpts& o) {
  json j = header_json(o);
  j["report"] = report_json(rep);
  std::ostringstream csv;
  csv << "pass," << (rep.pass ? "true" : "false") << "\n";
  for (const auto& w : rep.witnesses) csv << "witness," << w << "\n";
  emit(j, o, report_text(name, rep), csv.str());
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

int run_test_ideal(const CommonOpts& o, const std::string& lambda_str) {
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  BigRational lambda = parse_rational(lambda_str);
  size_t e_start = o.level;
  auto res = test_ideal(f, lambda, e_start, e_start + 5);

  json j = header_json(o);
  j["ideal"] = ideal_strings(res.ideal);
  j["stabilized"] = res.stabilized;
  j["stabilization_level"] = res.level;

  std::ostringstream text, csv;
  text << "tau(f^" << lambda_str << ") = (";
  const auto gens = ideal_strings(res.ideal);
  for (size_t i = 0; i < gens.size(); ++i) text << (i ? ", " : "") << gens[i];
  text << ")\n";
  text << (res.stabilized ? "stabilized at level " : "NOT stabilized by level ") << res.level << "\n";
  for (const auto& g : gens) csv << "generator," << g << "\n";
  csv << "stabilized," << (res.stabilized ? "true" : "false") << "," << res.level << "\n";
  emit(j, o, text.str(), csv.str());
  return kExitOk;
}

int run_jumps(const CommonOpts& o) {
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  auto rep = f_jumping_exponents(f, o.level);

  json j = header_json(o);
  json jumps = json::array();
  std::ostringstream text, csv;
  text << "certified F-jumping intervals at level " << o.level << ":\n";
  for (const auto& iv : rep.jumps) {
    json one;
    one["lo"] = iv.lo.to_string();
    one["hi"] = iv.hi.to_string();
    if (o.decimal) {
      one["lo_decimal"] = iv.lo.approx();
      one["hi_decimal"] = iv.hi.approx();
    }
    jumps.push_back(one);
    text << "  (" << rational_text(iv.lo, o.decimal) << ", " << rational_text(iv.hi, o.decimal) << "]\n";
    csv << iv.lo.to_string() << "," << iv.hi.to_string() << "\n";
  }
  j["jumps"] = jumps;
  emit(j, o, text.str(), csv.str());
  return kExitOk;
}

int run_gamma(const CommonOpts& o, const std::string& aux) {
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  GammaSet g = aux.empty() ? gamma_set(f, o.level) : gamma_set_relative(f, parse(aux, ring), o.level);

  json j = header_json(o);
  if (!aux.empty()) j["aux"] = aux;
  json tuples = json::array();
  std::ostringstream text, csv;
  text << "gamma set at level " << o.level << " (" << g.tuples.size() << " tuples):\n";
  for (const auto& t : g.tuples) {
    tuples.push_back(t.digits);
    text << "  " << t.to_string() << "\n";
    for (size_t i = 0; i < t.digits.size(); ++i) csv << (i ? "," : "") << t.digits[i];
    csv << "\n";
  }
  j["gamma"] = tuples;
  emit(j, o, text.str(), csv.str());
  return kExitOk;
}

int run_bsato(const CommonOpts& o) {
  if (o.level < 1) throw std::domain_error("bsato: level must be >= 1");
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);

  std::vector<BSFactorization> levels;
  for (size_t e = 1; e <= o.level; ++e) levels.push_back(bs_poly(f, e));
  const BSFactorization& top = levels.back();

  json j = header_json(o);
  json roots = json::array();
  for (const auto& r : top.roots) roots.push_back(rational_json(r, o.decimal));
  j["roots"] = roots;
  json jl = json::array();
  for (const auto& b : levels) {
    json one;
    one["level"] = b.level;
    json rr = json::array();
    for (const auto& r : b.roots) rr.push_back(rational_json(r, o.decimal));
    one["roots"] = rr;
    if (b.level == 1) one["char_p_roots"] = std::vector<uint64_t>(b.char_p_roots.begin(), b.char_p_roots.end());
    jl.push_back(one);
  }
  j["levels"] = jl;

  std::ostringstream text, csv;
  for (const auto& b : levels) {
    text << "level " << b.level << " roots:";
    for (const auto& r : b.roots) {
      text << " " << rational_text(r, o.decimal);
      csv << b.level << "," << r.num().str() << "," << r.den_exp() << "\n";
    }
    text << "\n";
    if (b.level == 1) {
      text << "  b_f roots in F_p:";
      for (uint64_t r : b.char_p_roots) text << " " << r;
      text << "\n";
    }
  }
  emit(j, o, text.str(), csv.str());
  return kExitOk;
}

int run_nu(const CommonOpts& o, const std::string& ideal_csv) {
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  Ideal J(ring, parse_poly_list(ideal_csv, ring));
  uint64_t value = nu(f, J, o.level);
  PPowRational ratio{BigInt(value), o.level, o.prime};

  json j = header_json(o);
  j["nu"] = value;
  j["ratio"] = ratio.to_string();
  if (o.decimal) j["ratio_decimal"] = ratio.approx();

  std::ostringstream text, csv;
  text << "nu = " << value << "\n";
  text << "nu/p^e = " << rational_text(ratio, o.decimal) << "\n";
  csv << "nu," << value << "\n" << "ratio," << ratio.to_string() << "\n";
  emit(j, o, text.str(), csv.str());
  return kExitOk;
}

int run_qh_check(const CommonOpts& o, const std::string& weights_csv, int64_t degree) {
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  std::vector<int64_t> w;
  for (const auto& part : split_csv(weights_csv)) w.push_back(std::stoll(part));
  auto rep = quasihomogeneous_check(f, w, degree);
  return finish_report("quasihomogeneous root predictor", rep, o);
}

int run_verify(const CommonOpts& o, const std::string& what, size_t refinement) {
  if (what == "identities") {
    auto rep = verify_rt_identities(o.prime, 200);
    return finish_report("operator identities on F_p[t] (n <= 200)", rep, o);
  }
  RingPtr ring = ring_of(o);
  MvPoly f = parse(o.poly, ring);
  if (what == "basis") {
    auto ctx = make_bf_context(ring, f);
    auto rep = verify_basis_actions(ctx, o.level, 3);
    return finish_report("Q-basis action laws (m <= 3)", rep, o);
  }
  if (what == "transform") {
    auto ctx = make_bf_context(ring, f);
    auto rep = verify_level_transformation(ctx, o.level);
    return finish_report("level change of the Q basis", rep, o);
  }
  if (what == "theorem") {
    auto rep = verify_main_theorem(f, o.level, refinement);
    return finish_report("gamma truncation consistency", rep, o);
  }
  throw CLI::ValidationError("verify", "unknown verification suite '" + what + "'");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("FSING_GB_CAP")) {
    try {
      gb_pair_cap().store(std::stoull(cap));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable FSING_GB_CAP\n";
    }
  }

  CLI::App app{"positive-characteristic singularity invariants of a polynomial over F_p"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string lambda_str, ideal_csv, aux, weights_csv, what;
  int64_t degree = 0;
  size_t refinement = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_poly = true) {
    cmd->add_option("--prime", o.prime, "characteristic p (prime)")->required();
    if (needs_poly) {
      cmd->add_option("--vars", o.vars, "comma-separated variable names")->required();
      cmd->add_option("--poly", o.poly, "polynomial over F_p")->required();
    }
    cmd->add_option("--level", o.level, "Frobenius level e");
    cmd->add_option("--format", o.format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_flag("--decimal", o.decimal, "add approximate decimal renderings");
  };

  auto* cmd_ti = app.add_subcommand("test-ideal", "tau(f^lambda) with its stabilization level");
  add_common(cmd_ti);
  cmd_ti->add_option("--lambda", lambda_str, "exponent as NUM/DEN or an integer")->required();

  auto* cmd_jumps = app.add_subcommand("jumps", "certified F-jumping intervals at level e");
  add_common(cmd_jumps);

  auto* cmd_gamma = app.add_subcommand("gamma", "digit tuples of the level-e gamma set");
  add_common(cmd_gamma);
  cmd_gamma->add_option("--aux", aux, "auxiliary polynomial h for the relative set");

  auto* cmd_bsato = app.add_subcommand("bsato", "Bernstein-Sato root data for levels 1..e");
  add_common(cmd_bsato);

  auto* cmd_nu = app.add_subcommand("nu", "F-threshold numerator nu^J(p^e)");
  add_common(cmd_nu);
  cmd_nu->add_option("--ideal", ideal_csv, "comma-separated generators of J")->required();

  auto* cmd_qh = app.add_subcommand("qh-check", "quasihomogeneous root predictor for b_f");
  add_common(cmd_qh);
  cmd_qh->add_option("--weights", weights_csv, "comma-separated integer weights")->required();
  cmd_qh->add_option("--degree", degree, "weighted degree d")->required();

  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("what", what, "identities|basis|transform|theorem")->required();
  add_common(cmd_verify, false);
  cmd_verify->add_option("--vars", o.vars, "comma-separated variable names");
  cmd_verify->add_option("--poly", o.poly, "polynomial over F_p");
  cmd_verify->add_option("--refinement", refinement, "extra levels for the theorem check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_ti) return run_test_ideal(o, lambda_str);
    if (*cmd_jumps) return run_jumps(o);
    if (*cmd_gamma) return run_gamma(o, aux);
    if (*cmd_bsato) return run_bsato(o);
    if (*cmd_nu) return run_nu(o, ideal_csv);
    if (*cmd_qh) return run_qh_check(o, weights_csv, degree);
    if (*cmd_verify) return run_verify(o, what, refinement);
  } catch (const resource_cap_error& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
