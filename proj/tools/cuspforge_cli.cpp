// cuspforge command-line front end. Talks to the library only through the C API.

#include <cuspforge/cuspforge.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
  std::string message;
};

void check(cf_status st) {
  if (st != CF_OK) throw Failure{std::string(cf_status_name(st)) + ": " + cf_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  cf_string_free(s);
  return out;
}

struct CuspDeleter {
  void operator()(cf_cusp* c) const { cf_cusp_free(c); }
};
struct CurveDeleter {
  void operator()(cf_curve* c) const { cf_curve_free(c); }
};
struct ListDeleter {
  void operator()(cf_curve_list* l) const { cf_curve_list_free(l); }
};
using Cusp = std::unique_ptr<cf_cusp, CuspDeleter>;
using Curve = std::unique_ptr<cf_curve, CurveDeleter>;
using CurveList = std::unique_ptr<cf_curve_list, ListDeleter>;

cf_repr repr_of(const std::string& name) {
  if (name == "hn") return CF_REPR_HN;
  if (name == "mult") return CF_REPR_MULT;
  if (name == "char") return CF_REPR_CHAR;
  if (name == "puiseux") return CF_REPR_PUISEUX;
  if (name == "zariski") return CF_REPR_ZARISKI;
  if (name == "semigroup") return CF_REPR_SEMIGROUP;
  throw Failure{"unknown notation '" + name + "'"};
}

Cusp parse_cusp(cf_repr repr, const std::string& text) {
  cf_cusp* c = nullptr;
  check(cf_cusp_parse(repr, text.c_str(), &c));
  return Cusp(c);
}

Cusp cusp_from_flags(const std::string& hn, const std::string& mult) {
  if (hn.empty() == mult.empty()) throw Failure{"give exactly one of --hn or --mult"};
  return hn.empty() ? parse_cusp(CF_REPR_MULT, mult) : parse_cusp(CF_REPR_HN, hn);
}

void emit(const std::string& text) {
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << '\n';
}

void write_path(const std::string& path, const std::string& text) {
  if (path == "-") {
    emit(text);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{"cannot open '" + path + "' for writing"};
  out << text;
  if (!out) throw Failure{"write to '" + path + "' failed"};
}

std::string read_path(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CUSPFORGE_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (!*env || *end || cap == 0) throw Failure{"CUSPFORGE_THREADS must be a positive integer, got '" + std::string(env) + "'"};
    if (cap < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

std::vector<long> long_list(const std::string& text, const char* flag) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || *end) throw Failure{std::string(flag) + ": bad integer '" + tok + "'"};
    out.push_back(v);
  }
  return out;
}

// "A(2,2,1)" or "A" followed by separate parameters.
std::string family_spec(const std::string& name, const std::vector<std::string>& params) {
  if (params.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i];
  return s + ")";
}

int audit_and_print(const cf_curve* curve, bool json) {
  int pass = 0;
  char* out = nullptr;
  check(cf_curve_audit(curve, json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &pass, &out));
  emit(take(out));
  return pass ? kExitOk : kExitAuditFailed;
}

int cmd_enumerate(std::uint64_t max_degree, bool audit, bool json) {
  cf_curve_list* raw = nullptr;
  check(cf_enumerate(max_degree, thread_count(), &raw));
  CurveList list(raw);
  char* out = nullptr;
  if (!audit) {
    check(cf_curve_list_format(list.get(), json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &out));
    emit(take(out));
    return kExitOk;
  }
  const std::size_t n = cf_curve_list_size(list.get());
  std::size_t failed = 0, kkd_zero = 0, collisions = 0;
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < n; ++i) {
    const cf_curve* c = cf_curve_list_get(list.get(), i);
    int pass = 0;
    check(cf_curve_audit(c, CF_FORMAT_TEXT, &pass, nullptr));
    check(cf_curve_kkd(c, &out));
    const std::string kkd = take(out);
    check(cf_curve_format(c, CF_FORMAT_JSON, &out));
    const auto doc = nlohmann::json::parse(take(out));
    std::string name = doc["family"]["id"].get<std::string>() + "(";
    bool first = true;
    for (const auto& [k, v] : doc["family"]["params"].items()) {
      (void)k;
      name += (first ? "" : ",") + v.get<std::string>();
      first = false;
    }
    name += ")";
    if (!pass) ++failed;
    if (kkd == "0") ++kkd_zero;
    rows.push_back({{"family", name}, {"degree", doc["degree"]}, {"pass", pass != 0}, {"kkd", kkd}});
    text << name << "  degree " << doc["degree"].get<std::string>() << "  " << (pass ? "pass" : "FAIL") << "  kkd "
         << kkd << '\n';
  }
  check(cf_curve_list_distinctness(list.get(), &collisions, &out));
  const std::string listing = take(out);
  const bool ok = failed == 0 && collisions == 0;
  if (json) {
    emit(nlohmann::json{{"records", rows},
                        {"failures", std::to_string(failed)},
                        {"collisions", std::to_string(collisions)},
                        {"kkd_zero", std::to_string(kkd_zero)},
                        {"pass", ok}}
             .dump());
  } else {
    text << listing;
    text << "records " << n << "  failures " << failed << "  collisions " << collisions << "  kkd_zero " << kkd_zero
         << "  " << (ok ? "pass" : "FAIL") << '\n';
    emit(text.str());
  }
  return ok ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspforge: exact invariants of rational cuspidal plane curves"};
  app.require_subcommand(1, 1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output");

  std::string hn, mult;
  auto* inv = app.add_subcommand("invariants", "full invariant record of one cusp");
  inv->add_option("--hn", hn, "HN sequence, e.g. 6/4,2/3");
  inv->add_option("--mult", mult, "multiplicity sequence, e.g. 4,2,2,2");
  inv->add_flag("--json", json);

  std::string from, to, value;
  auto* conv = app.add_subcommand("convert", "translate a cusp between notations");
  conv->add_option("--from", from, "hn|mult|char|puiseux|zariski")->required();
  conv->add_option("--to", to, "hn|mult|char|puiseux|zariski|semigroup")->required();
  conv->add_option("value", value, "cusp in the --from notation")->required();

  std::string dot;
  auto* res = app.add_subcommand("resolve", "minimal log resolution graph of one cusp");
  res->add_option("--hn", hn);
  res->add_option("--mult", mult);
  res->add_option("--dot", dot, "write Graphviz DOT to PATH ('-' for stdout)");
  res->add_flag("--json", json);

  auto* fam = app.add_subcommand("family", "curve families");
  fam->require_subcommand(1, 1);
  std::string fam_name;
  std::vector<std::string> fam_params;
  bool audit = false;
  auto* gen = fam->add_subcommand("gen", "generate one family instance");
  gen->add_option("name", fam_name, "family id, or a full spec like A(2,2,1)")->required();
  gen->add_option("params", fam_params, "family parameters");
  gen->add_flag("--json", json);
  gen->add_flag("--audit", audit, "run the full audit on the instance");
  std::uint64_t max_degree = 0;
  auto* en = fam->add_subcommand("enumerate", "all family instances up to a degree");
  en->add_option("--max-degree", max_degree)->required();
  en->add_flag("--json", json);
  en->add_flag("--audit", audit, "audit every instance and check distinctness");

  std::string v_family, v_record, v_degree, v_gamma;
  std::vector<std::string> v_hn;
  auto* ver = app.add_subcommand("verify", "audit a curve; exit 0 iff all checks pass");
  ver->add_option("--family", v_family, "family spec, e.g. G(3)");
  ver->add_option("--record", v_record, "curve record JSON file ('-' for stdin)");
  ver->add_option("--degree", v_degree);
  ver->add_option("--gamma", v_gamma, "-E^2");
  ver->add_option("--hn", v_hn, "raw HN sequence of a cusp (repeat per cusp)");
  ver->add_flag("--json", json);

  long l_h = 0, l_nu = 0;
  std::string l_sigma, l_chi, l_mode = "generic";
  auto* led = app.add_subcommand("ledger", "fibration ledger arithmetic");
  led->set_help_flag("--help", "print this help message and exit");
  led->add_option("--h", l_h, "number of horizontal components")->required();
  led->add_option("--nu", l_nu, "number of degenerate fibers not meeting D")->required();
  led->add_option("--sigma", l_sigma, "comma-separated sigma_F values")->required();
  led->add_option("--chi", l_chi, "comma-separated Euler characteristics");
  led->add_option("--mode", l_mode, "generic|cstst")->check(CLI::IsMember({"generic", "cstst"}));
  led->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    char* out = nullptr;
    if (*inv) {
      const Cusp c = cusp_from_flags(hn, mult);
      check(cf_cusp_invariants(c.get(), json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &out));
      emit(take(out));
      return kExitOk;
    }
    if (*conv) {
      const Cusp c = parse_cusp(repr_of(from), value);
      check(cf_cusp_format(c.get(), repr_of(to), &out));
      emit(take(out));
      return kExitOk;
    }
    if (*res) {
      const Cusp c = cusp_from_flags(hn, mult);
      if (!dot.empty()) {
        check(cf_cusp_resolution(c.get(), CF_FORMAT_DOT, &out));
        write_path(dot, take(out));
        if (dot == "-") return kExitOk;
      }
      check(cf_cusp_resolution(c.get(), json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &out));
      emit(take(out));
      return kExitOk;
    }
    if (*gen) {
      cf_curve* raw = nullptr;
      check(cf_curve_from_family(family_spec(fam_name, fam_params).c_str(), &raw));
      const Curve c(raw);
      if (audit) return audit_and_print(c.get(), json);
      check(cf_curve_format(c.get(), json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &out));
      emit(take(out));
      return kExitOk;
    }
    if (*en) return cmd_enumerate(max_degree, audit, json);
    if (*ver) {
      const int sources = !v_family.empty() + !v_record.empty() + !v_hn.empty();
      if (sources != 1) throw Failure{"give exactly one of --family, --record or --degree/--gamma/--hn"};
      cf_curve* raw = nullptr;
      if (!v_family.empty()) {
        check(cf_curve_from_family(v_family.c_str(), &raw));
      } else if (!v_record.empty()) {
        check(cf_curve_from_json(read_path(v_record).c_str(), &raw));
      } else {
        if (v_degree.empty() || v_gamma.empty()) throw Failure{"--hn needs --degree and --gamma"};
        std::vector<const char*> ptrs;
        for (const auto& s : v_hn) ptrs.push_back(s.c_str());
        check(cf_curve_new(v_degree.c_str(), v_gamma.c_str(), ptrs.data(), ptrs.size(), &raw));
      }
      const Curve c(raw);
      return audit_and_print(c.get(), json);
    }
    if (*led) {
      const auto sigmas = long_list(l_sigma, "--sigma");
      std::optional<std::vector<long>> chis;
      if (!l_chi.empty()) chis = long_list(l_chi, "--chi");
      int pass = 0;
      check(cf_ledger_audit(l_h, l_nu, sigmas.data(), sigmas.size(), chis ? chis->data() : nullptr,
                            chis ? chis->size() : 0, l_mode == "cstst" ? CF_LEDGER_CSTST : CF_LEDGER_GENERIC,
                            json ? CF_FORMAT_JSON : CF_FORMAT_TEXT, &pass, &out));
      emit(take(out));
      return pass ? kExitOk : kExitAuditFailed;
    }
  } catch (const Failure& f) {
    std::cerr << "cuspforge: " << f.message << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cuspforge: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
