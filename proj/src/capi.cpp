#include "cuspforge/cuspforge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cuspforge/divisor_graph.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/format.hpp"

struct cf_cusp {
  cuspforge::HnSequence standard;
};

struct cf_curve {
  cuspforge::CurveRecord record;
};

struct cf_curve_list {
  std::vector<cf_curve> curves;
};

namespace {

using namespace cuspforge;

thread_local std::string last_error;

cf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return CF_ERR_PARSE;
    case ErrorCode::invalid_sequence: return CF_ERR_INVALID_SEQUENCE;
    case ErrorCode::not_reducible: return CF_ERR_NOT_REDUCIBLE;
    case ErrorCode::degenerate_remainder: return CF_ERR_DEGENERATE_REMAINDER;
    case ErrorCode::not_realizable: return CF_ERR_NOT_REALIZABLE;
    case ErrorCode::not_standard: return CF_ERR_NOT_STANDARD;
    case ErrorCode::inconsistent: return CF_ERR_INCONSISTENT;
    case ErrorCode::invalid_argument: return CF_ERR_INVALID_ARGUMENT;
    case ErrorCode::entry_below_two: return CF_ERR_ENTRY_BELOW_TWO;
    case ErrorCode::not_contractible: return CF_ERR_NOT_CONTRACTIBLE;
    case ErrorCode::not_a_fiber: return CF_ERR_NOT_A_FIBER;
    case ErrorCode::not_coprime: return CF_ERR_NOT_COPRIME;
    case ErrorCode::param_out_of_domain: return CF_ERR_PARAM_OUT_OF_DOMAIN;
    case ErrorCode::too_large: return CF_ERR_TOO_LARGE;
    case ErrorCode::internal: return CF_ERR_INTERNAL;
  }
  return CF_ERR_INTERNAL;
}

template <typename F>
cf_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return CF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CF_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CF_ERR_INTERNAL;
  }
}

cf_status null_argument(const char* what) {
  last_error = std::string(what) + " is NULL";
  return CF_ERR_NULL_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

HnSequence parse_cusp(cf_repr repr, const char* text) {
  switch (repr) {
    case CF_REPR_HN: return standardize(HnSequence::parse(text, Flavor::raw));
    case CF_REPR_MULT: return multiplicity_to_standard_hn(MultiplicitySequence::parse(text));
    case CF_REPR_CHAR: return puiseux_char_to_standard_hn(PuiseuxCharacteristic::parse(text));
    case CF_REPR_PUISEUX:
      return puiseux_char_to_standard_hn(puiseux_pairs_to_char(PairList::parse(PairKind::puiseux, text)));
    case CF_REPR_ZARISKI: return hn_from_zariski(PairList::parse(PairKind::zariski, text));
    case CF_REPR_SEMIGROUP: break;
  }
  fail(ErrorCode::invalid_argument, "notation cannot be parsed into a cusp");
}

std::string format_cusp(const HnSequence& s, cf_repr repr) {
  switch (repr) {
    case CF_REPR_HN: return s.to_string();
    case CF_REPR_MULT: return hn_to_multiplicity(s, MultForm::reduced).to_string();
    case CF_REPR_CHAR: return hn_to_puiseux_char(s).to_string();
    case CF_REPR_PUISEUX: return char_to_puiseux_pairs(hn_to_puiseux_char(s)).to_string();
    case CF_REPR_ZARISKI: return zariski_from_hn(s).to_string();
    case CF_REPR_SEMIGROUP: return semigroup_text(semigroup_of(hn_to_puiseux_char(s)));
  }
  fail(ErrorCode::invalid_argument, "unknown notation");
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "0.1.0"; }

const char* cf_status_name(cf_status status) {
  switch (status) {
    case CF_OK: return "Ok";
    case CF_ERR_PARSE: return "ParseError";
    case CF_ERR_INVALID_SEQUENCE: return "InvalidSequence";
    case CF_ERR_NOT_REDUCIBLE: return "NotReducible";
    case CF_ERR_DEGENERATE_REMAINDER: return "DegenerateRemainder";
    case CF_ERR_NOT_REALIZABLE: return "NotRealizable";
    case CF_ERR_NOT_STANDARD: return "NotStandard";
    case CF_ERR_INCONSISTENT: return "Inconsistent";
    case CF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CF_ERR_ENTRY_BELOW_TWO: return "EntryBelowTwo";
    case CF_ERR_NOT_CONTRACTIBLE: return "NotContractible";
    case CF_ERR_NOT_A_FIBER: return "NotAFiber";
    case CF_ERR_NOT_COPRIME: return "NotCoprime";
    case CF_ERR_PARAM_OUT_OF_DOMAIN: return "ParamOutOfDomain";
    case CF_ERR_TOO_LARGE: return "TooLarge";
    case CF_ERR_NULL_ARGUMENT: return "NullArgument";
    case CF_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    case CF_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* cf_last_error(void) { return last_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

cf_status cf_cusp_parse(cf_repr repr, const char* text, cf_cusp** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new cf_cusp{parse_cusp(repr, text)}; });
}

void cf_cusp_free(cf_cusp* cusp) { delete cusp; }

cf_status cf_cusp_format(const cf_cusp* cusp, cf_repr repr, char** out) {
  if (!cusp) return null_argument("cusp");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(format_cusp(cusp->standard, repr)); });
}

cf_status cf_cusp_invariants(const cf_cusp* cusp, cf_format format, char** out) {
  if (!cusp) return null_argument("cusp");
  if (!out) return null_argument("out");
  return guarded([&] {
    const CuspRecord rec = make_cusp_record(cusp->standard);
    if (format == CF_FORMAT_DOT) fail(ErrorCode::invalid_argument, "invariants have no DOT form");
    *out = duplicate(format == CF_FORMAT_JSON ? cusp_record_json(rec) : cusp_record_text(rec));
  });
}

cf_status cf_cusp_resolution(const cf_cusp* cusp, cf_format format, char** out) {
  if (!cusp) return null_argument("cusp");
  if (!out) return null_argument("out");
  return guarded([&] {
    const MarkedResolution res = resolution_graph(cusp->standard);
    switch (format) {
      case CF_FORMAT_JSON: *out = duplicate(resolution_json(res)); break;
      case CF_FORMAT_DOT: *out = duplicate(dot_export(res.tree, res.c_vertex)); break;
      default: *out = duplicate(resolution_text(res)); break;
    }
  });
}

cf_status cf_curve_from_family(const char* spec, cf_curve** out) {
  if (!spec) return null_argument("spec");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new cf_curve{generate(FamilySpec::parse(spec))}; });
}

cf_status cf_curve_from_json(const char* json, cf_curve** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new cf_curve{curve_record_from_json(json)}; });
}

cf_status cf_curve_new(const char* degree, const char* gamma, const char* const* hn, size_t n, cf_curve** out) {
  if (!degree) return null_argument("degree");
  if (!gamma) return null_argument("gamma");
  if (!hn && n) return null_argument("hn");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<HnSequence> raw;
    for (size_t i = 0; i < n; ++i) {
      if (!hn[i]) fail(ErrorCode::invalid_argument, "hn[" + std::to_string(i) + "] is NULL");
      raw.push_back(HnSequence::parse(hn[i], Flavor::raw));
    }
    if (raw.empty()) fail(ErrorCode::invalid_argument, "a curve needs at least one cusp");
    *out = new cf_curve{CurveRecord::from_raw(BigNat::parse(degree), BigNat::parse(gamma), raw)};
  });
}

void cf_curve_free(cf_curve* curve) { delete curve; }

cf_status cf_curve_format(const cf_curve* curve, cf_format format, char** out) {
  if (!curve) return null_argument("curve");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = duplicate(format == CF_FORMAT_JSON ? curve_record_json(curve->record) : curve_record_text(curve->record));
  });
}

cf_status cf_curve_audit(const cf_curve* curve, cf_format format, int* all_pass, char** out) {
  if (!curve) return null_argument("curve");
  return guarded([&] {
    const AuditReport rep = full_audit(curve->record);
    if (all_pass) *all_pass = rep.ok() ? 1 : 0;
    if (out) *out = duplicate(format == CF_FORMAT_JSON ? audit_report_json(rep) : audit_report_text(rep));
  });
}

cf_status cf_curve_kkd(const cf_curve* curve, char** out) {
  if (!curve) return null_argument("curve");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(kkd(curve->record).get_str()); });
}

cf_status cf_enumerate(uint64_t max_degree, unsigned threads, cf_curve_list** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    auto list = std::make_unique<cf_curve_list>();
    for (auto& r : enumerate(max_degree, threads ? threads : 1)) list->curves.push_back(cf_curve{std::move(r)});
    *out = list.release();
  });
}

size_t cf_curve_list_size(const cf_curve_list* list) { return list ? list->curves.size() : 0; }

const cf_curve* cf_curve_list_get(const cf_curve_list* list, size_t index) {
  if (!list || index >= list->curves.size()) return nullptr;
  return &list->curves[index];
}

cf_status cf_curve_list_format(const cf_curve_list* list, cf_format format, char** out) {
  if (!list) return null_argument("list");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<CurveRecord> recs;
    for (const auto& c : list->curves) recs.push_back(c.record);
    if (format == CF_FORMAT_JSON) {
      *out = duplicate(curve_records_json(recs));
      return;
    }
    std::string text;
    for (const auto& r : recs) {
      text += r.family ? r.family->to_string() : std::string("curve");
      text += "  degree " + r.degree.to_string() + "  gamma " + r.gamma.to_string() + " ";
      for (const auto& c : r.cusps) text += " " + c.standard.to_string();
      text += '\n';
    }
    *out = duplicate(text);
  });
}

cf_status cf_curve_list_distinctness(const cf_curve_list* list, size_t* collisions, char** out) {
  if (!list) return null_argument("list");
  return guarded([&] {
    std::vector<CurveRecord> recs;
    for (const auto& c : list->curves) recs.push_back(c.record);
    const DistinctnessReport rep = distinctness_audit(recs);
    if (collisions) *collisions = rep.collisions.size();
    if (out) {
      std::string text;
      auto name = [&](std::size_t i) { return recs[i].family ? recs[i].family->to_string() : "#" + std::to_string(i); };
      for (const auto& c : rep.collisions) text += name(c.first) + " = " + name(c.second) + "\n";
      *out = duplicate(text);
    }
  });
}

void cf_curve_list_free(cf_curve_list* list) { delete list; }

cf_status cf_ledger_audit(long h, long nu, const long* sigmas, size_t n_sigma, const long* chis, size_t n_chi,
                          cf_ledger_mode mode, cf_format format, int* all_pass, char** out) {
  if (!sigmas && n_sigma) return null_argument("sigmas");
  return guarded([&] {
    FibrationLedger l;
    l.h = h;
    l.nu = nu;
    l.sigmas.assign(sigmas, sigmas + n_sigma);
    if (chis) l.chis = std::vector<long>(chis, chis + n_chi);
    const AuditReport rep =
        fibration_ledger(l, mode == CF_LEDGER_CSTST ? LedgerMode::q_acyclic_cstst : LedgerMode::generic);
    if (all_pass) *all_pass = rep.ok() ? 1 : 0;
    if (out) *out = duplicate(format == CF_FORMAT_JSON ? audit_report_json(rep) : audit_report_text(rep));
  });
}

}  // extern "C"
