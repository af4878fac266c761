#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuspforge/bignat.hpp"
#include "cuspforge/families.hpp"

namespace cuspforge {

struct AuditCheck {
  std::string name;
  bool pass = false;
  BigInt lhs;
  BigInt rhs;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool ok() const;
  /// Names of the failed checks.
  std::vector<std::string> failures() const;
  const AuditCheck* find(const std::string& name) const;

  void expect_eq(std::string name, BigInt lhs, BigInt rhs);
  void expect_le(std::string name, BigInt lhs, BigInt rhs);
  void expect(std::string name, bool pass, BigInt lhs = 0, BigInt rhs = 0);
  void append(const AuditReport& other, const std::string& prefix = "");
};

/// (a) gamma - 2 + 3d = sum M, (b) gamma + d^2 = sum I,
/// (c) (d-1)(d-2) = sum (I - M), on the standard cusps.
AuditReport check_hn_equations(const CurveRecord& curve);

/// E^2 = -gamma against the bounds for c = 1, c = 2 and E^2 <= 7 - 3c.
AuditReport check_E2_bounds(const CurveRecord& curve);

struct KkdReport {
  BigInt value;
  std::vector<BigNat> r;   // per cusp
  std::vector<bool> r_at_least_h;
};

/// K.(K+D) = 9 - sum_j (2 + r_j) - 2 - E^2 with
/// r_j = floor(c1/p1) + sum_{k>=2} (1 + floor(p_k/c_k)) on standard forms.
KkdReport kkd_details(const CurveRecord& curve);
BigInt kkd(const CurveRecord& curve);

struct FibrationLedger {
  long h = 1;
  long nu = 0;
  std::vector<long> sigmas;
  std::optional<std::vector<long>> chis;
};

enum class LedgerMode { generic, q_acyclic_cstst };

/// Generic: h + nu - 2 = sum (sigma - 1). C** mode adds 3 - nu degenerate
/// fibers, sum sigma = h + 1, nu <= 1, and with chis the Euler identity
/// 1 = (2 - nu)(-1) + sum (chi_b + 1).
AuditReport fibration_ledger(const FibrationLedger& ledger, LedgerMode mode);

/// Every arithmetic check for a record: standardization round trips,
/// resolution invariants per cusp, the table multiplicities (family records
/// only), the HN equations, the E^2 bounds and kkd >= 0.
AuditReport full_audit(const CurveRecord& curve);
AuditReport full_audit(const FamilySpec& spec);

}  // namespace cuspforge
