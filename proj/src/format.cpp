#include "cuspforge/format.hpp"

#include <algorithm>
#include <sstream>

#include "cuspforge/error.hpp"
#include "json.hpp"

namespace cuspforge {

namespace {

using nlohmann::json;

json pairs_json(const std::vector<std::pair<BigNat, BigNat>>& pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back({a.to_string(), b.to_string()});
  return out;
}

json hn_value(const HnSequence& seq) {
  json out = json::array();
  for (const auto& pr : seq.pairs()) out.push_back({pr.c.to_string(), pr.p.to_string()});
  return out;
}

template <typename Range>
json strings(const Range& values) {
  json out = json::array();
  for (const auto& v : values) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, BigNat>) {
      out.push_back(v.to_string());
    } else {
      out.push_back(std::to_string(v));
    }
  }
  return out;
}

BigNat nat_of(const json& j, const char* what) {
  if (!j.is_string()) fail(ErrorCode::parse, std::string(what) + " must be a decimal string");
  return BigNat::parse(j.get<std::string>());
}

HnSequence hn_of(const json& j, Flavor flavor) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::parse, "HN sequence must be a nonempty array of pairs");
  std::vector<HnPair> pairs;
  for (const auto& pr : j) {
    if (!pr.is_array() || pr.size() != 2) fail(ErrorCode::parse, "HN pair must be a two-element array");
    pairs.push_back({nat_of(pr[0], "c"), nat_of(pr[1], "p")});
  }
  return HnSequence(std::move(pairs), flavor);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("invalid JSON: ") + e.what());
  }
}

json curve_value(const CurveRecord& rec) {
  json j;
  if (rec.family) {
    json params = json::object();
    const auto names = param_names(rec.family->id);
    for (std::size_t i = 0; i < names.size(); ++i) params[std::string(names[i])] = std::to_string(rec.family->params[i]);
    j["family"] = {{"id", std::string(family_name(rec.family->id))}, {"params", params}};
  } else {
    j["family"] = nullptr;
  }
  j["degree"] = rec.degree.to_string();
  j["gamma"] = rec.gamma.to_string();
  j["cusps"] = json::array();
  for (const auto& c : rec.cusps) j["cusps"].push_back({{"raw", hn_value(c.raw)}, {"standard", hn_value(c.standard)}});
  return j;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

class Table {
 public:
  void row(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  std::string str() const {
    std::size_t w = 0;
    for (const auto& r : rows_) w = std::max(w, r.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << k << std::string(w - k.size() + 2, ' ') << v << '\n';
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

}  // namespace

std::string hn_json(const HnSequence& seq) { return hn_value(seq).dump(); }

HnSequence hn_from_json(std::string_view text, Flavor flavor) { return hn_of(parse_document(text), flavor); }

std::string cusp_record_json(const CuspRecord& rec) {
  json j;
  j["hn"] = hn_value(rec.hn);
  j["mult_reduced"] = strings(rec.mult.reduced().entries());
  j["puiseux_char"] = strings(rec.characteristic.beta());
  j["puiseux_pairs"] = pairs_json(rec.puiseux.pairs());
  j["zariski_pairs"] = pairs_json(rec.zariski.pairs());
  j["semigroup_generators"] = strings(rec.semigroup.generators());
  j["gaps"] = strings(rec.semigroup.gaps());
  j["alexander_coeffs"] = strings(alexander_polynomial(rec.semigroup));
  j["M"] = rec.M.to_string();
  j["I"] = rec.I.to_string();
  return j.dump();
}

std::string curve_record_json(const CurveRecord& rec) { return curve_value(rec).dump(); }

std::string curve_records_json(const std::vector<CurveRecord>& recs) {
  json out = json::array();
  for (const auto& r : recs) out.push_back(curve_value(r));
  return out.dump();
}

CurveRecord curve_record_from_json(std::string_view text) {
  const json j = parse_document(text);
  if (!j.is_object() || !j.contains("degree") || !j.contains("gamma") || !j.contains("cusps")) {
    fail(ErrorCode::parse, "curve record needs degree, gamma and cusps");
  }
  std::vector<HnSequence> raw;
  for (const auto& c : j["cusps"]) raw.push_back(hn_of(c.contains("raw") ? c["raw"] : c, Flavor::raw));
  CurveRecord rec = CurveRecord::from_raw(nat_of(j["degree"], "degree"), nat_of(j["gamma"], "gamma"), raw);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& c = j["cusps"][i];
    if (c.is_object() && c.contains("standard") && !(hn_of(c["standard"], Flavor::raw) == rec.cusps[i].standard)) {
      fail(ErrorCode::inconsistent, "cusp " + std::to_string(i + 1) + ": supplied standard form differs from " +
                                        rec.cusps[i].standard.to_string());
    }
  }
  if (j.contains("family") && j["family"].is_object()) {
    const auto& f = j["family"];
    const auto id = family_from_name(f.value("id", std::string()));
    if (!id) fail(ErrorCode::parse, "unknown family id");
    FamilySpec spec{*id, {}};
    for (auto name : param_names(*id)) {
      const std::string key(name);
      if (!f["params"].contains(key)) fail(ErrorCode::parse, "family params lack " + key);
      const auto v = nat_of(f["params"][key], key.c_str()).to_u64();
      if (!v) fail(ErrorCode::parse, "family parameter " + key + " is too large");
      spec.params.push_back(*v);
    }
    rec.family = spec;
  }
  return rec;
}

std::string audit_report_json(const AuditReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs.get_str()}, {"rhs", c.rhs.get_str()}});
  }
  return json{{"checks", checks}}.dump();
}

std::string resolution_json(const MarkedResolution& res) {
  json j;
  j["weights"] = strings(res.tree.weights());
  json edges = json::array();
  for (auto [u, v] : res.tree.edges()) edges.push_back({std::to_string(u), std::to_string(v)});
  j["edges"] = edges;
  j["c_vertex"] = std::to_string(res.c_vertex);
  j["mult"] = strings(res.mult.entries());
  const auto ch = res.chain();
  j["chain"] = ch ? json(ch->to_string()) : json(nullptr);
  return j.dump();
}

std::string semigroup_text(const Semigroup& sg) {
  std::vector<std::string> parts;
  for (const auto& g : sg.generators()) parts.push_back(g.to_string());
  return "<" + join(parts, ",") + ">";
}

std::string cusp_record_text(const CuspRecord& rec) {
  Table t;
  t.row("hn", rec.hn.to_string());
  t.row("multiplicity", rec.mult.reduced().to_string());
  t.row("puiseux_char", rec.characteristic.to_string());
  t.row("puiseux_pairs", rec.puiseux.to_string());
  t.row("zariski_pairs", rec.zariski.to_string());
  t.row("semigroup", semigroup_text(rec.semigroup));
  t.row("conductor", std::to_string(rec.semigroup.conductor()));
  t.row("gap_count", std::to_string(rec.semigroup.gaps().size()));
  std::vector<std::string> coef;
  for (int c : alexander_polynomial(rec.semigroup)) coef.push_back(std::to_string(c));
  t.row("alexander", join(coef, ","));
  t.row("M", rec.M.to_string());
  t.row("I", rec.I.to_string());
  return t.str();
}

std::string curve_record_text(const CurveRecord& rec) {
  Table t;
  if (rec.family) t.row("family", rec.family->to_string());
  t.row("degree", rec.degree.to_string());
  t.row("gamma", rec.gamma.to_string());
  for (std::size_t i = 0; i < rec.cusps.size(); ++i) {
    const auto& c = rec.cusps[i];
    std::string v = c.standard.to_string();
    if (!(c.raw == c.standard)) v += "  (raw " + c.raw.to_string() + ")";
    t.row("cusp" + std::to_string(i + 1), v);
  }
  return t.str();
}

std::string audit_report_text(const AuditReport& rep) {
  Table t;
  for (const auto& c : rep.checks) {
    t.row(c.name, std::string(c.pass ? "pass" : "FAIL") + "  " + c.lhs.get_str() + " vs " + c.rhs.get_str());
  }
  t.row("result", rep.ok() ? "pass" : "FAIL");
  return t.str();
}

std::string resolution_text(const MarkedResolution& res) {
  Table t;
  t.row("vertices", std::to_string(res.tree.size()));
  std::vector<std::string> w;
  for (auto x : res.tree.weights()) w.push_back(std::to_string(x));
  t.row("weights", join(w, ","));
  std::vector<std::string> e;
  for (auto [u, v] : res.tree.edges()) e.push_back(std::to_string(u) + "-" + std::to_string(v));
  t.row("edges", join(e, ","));
  t.row("c_vertex", std::to_string(res.c_vertex));
  if (const auto ch = res.chain()) t.row("chain", ch->to_string());
  t.row("branching", std::to_string(res.tree.branching_vertices().size()));
  t.row("mult", res.mult.to_string());
  return t.str();
}

}  // namespace cuspforge
