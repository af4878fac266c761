#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cuspforge/families.hpp"
#include "cuspforge/invariants.hpp"
#include "cuspforge/resolution.hpp"
#include "cuspforge/verify.hpp"

namespace cuspforge {

// JSON documents. Every integer is written as a decimal string.

/// [["c1","p1"],["c2","p2"],...]
std::string hn_json(const HnSequence& seq);
HnSequence hn_from_json(std::string_view text, Flavor flavor = Flavor::raw);

std::string cusp_record_json(const CuspRecord& rec);
std::string curve_record_json(const CurveRecord& rec);
/// Recomputes the standard forms; throws Inconsistent when a supplied
/// "standard" entry disagrees.
CurveRecord curve_record_from_json(std::string_view text);
std::string curve_records_json(const std::vector<CurveRecord>& recs);
std::string audit_report_json(const AuditReport& rep);
/// {weights, edges, c_vertex, mult, chain}
std::string resolution_json(const MarkedResolution& res);

// Aligned "key  value" text, one item per line.

std::string cusp_record_text(const CuspRecord& rec);
std::string curve_record_text(const CurveRecord& rec);
std::string audit_report_text(const AuditReport& rep);
std::string resolution_text(const MarkedResolution& res);

/// "<4,6,15>"
std::string semigroup_text(const Semigroup& sg);

}  // namespace cuspforge
