#include "cuspforge/verify.hpp"

#include <algorithm>

#include "cuspforge/resolution.hpp"

namespace cuspforge {

bool AuditReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.pass; });
}

std::vector<std::string> AuditReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void AuditReport::expect_eq(std::string name, BigInt lhs, BigInt rhs) {
  const bool pass = lhs == rhs;
  checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
}

void AuditReport::expect_le(std::string name, BigInt lhs, BigInt rhs) {
  const bool pass = lhs <= rhs;
  checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
}

void AuditReport::expect(std::string name, bool pass, BigInt lhs, BigInt rhs) {
  checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
}

void AuditReport::append(const AuditReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.lhs, c.rhs});
}

AuditReport check_hn_equations(const CurveRecord& curve) {
  BigInt sum_m = 0;
  BigInt sum_i = 0;
  for (const auto& cusp : curve.cusps) {
    const MIPair mi = compute_M_I(cusp.standard);
    sum_m += mi.M.value();
    sum_i += mi.I.value();
  }
  const BigInt d = curve.degree.value();
  const BigInt g = curve.gamma.value();
  AuditReport rep;
  rep.expect_eq("hn_equation_a", g - 2 + 3 * d, sum_m);
  rep.expect_eq("hn_equation_b", g + d * d, sum_i);
  rep.expect_eq("hn_equation_c", (d - 1) * (d - 2), sum_i - sum_m);
  return rep;
}

AuditReport check_E2_bounds(const CurveRecord& curve) {
  const BigInt e2 = -curve.gamma.value();
  const long c = static_cast<long>(curve.cusps.size());
  AuditReport rep;
  if (c == 1) rep.expect_le("E2_bound_one_cusp", e2, -2);
  if (c == 2) rep.expect_le("E2_bound_two_cusps", e2, -1);
  rep.expect_le("E2_bound_7_minus_3c", e2, BigInt(7 - 3 * c));
  return rep;
}

KkdReport kkd_details(const CurveRecord& curve) {
  KkdReport rep;
  BigInt total = 0;
  for (const auto& cusp : curve.cusps) {
    const auto& pairs = cusp.standard.pairs();
    BigNat r = pairs[0].c / pairs[0].p;
    for (std::size_t k = 1; k < pairs.size(); ++k) r += BigNat(1) + pairs[k].p / pairs[k].c;
    rep.r_at_least_h.push_back(r >= BigNat(pairs.size()));
    total += 2 + r.value();
    rep.r.push_back(std::move(r));
  }
  rep.value = 9 - total - 2 + curve.gamma.value();
  return rep;
}

BigInt kkd(const CurveRecord& curve) { return kkd_details(curve).value; }

AuditReport fibration_ledger(const FibrationLedger& ledger, LedgerMode mode) {
  AuditReport rep;
  rep.expect("h_at_least_1", ledger.h >= 1, ledger.h, 1);
  rep.expect("nu_nonnegative", ledger.nu >= 0, ledger.nu, 0);
  long min_sigma = 1;
  long sum_sigma = 0;
  long sum_excess = 0;
  for (long s : ledger.sigmas) {
    min_sigma = std::min(min_sigma, s);
    sum_sigma += s;
    sum_excess += s - 1;
  }
  rep.expect("sigmas_positive", min_sigma >= 1, min_sigma, 1);
  rep.expect_eq("sigma_sum", ledger.h + ledger.nu - 2, sum_excess);
  if (mode == LedgerMode::generic) return rep;

  const long fibers = static_cast<long>(ledger.sigmas.size());
  rep.expect_eq("degenerate_fibers", fibers, 3 - ledger.nu);
  rep.expect_eq("sigma_total", sum_sigma, ledger.h + 1);
  rep.expect_le("nu_at_most_1", ledger.nu, 1);
  if (ledger.chis) {
    rep.expect_eq("chi_count", static_cast<long>(ledger.chis->size()), fibers);
    // chi(V) = chi(B) chi(f) + sum (chi(F_b) - chi(f)) with chi(V) = 1, chi(f) = -1
    long rhs = (2 - ledger.nu) * -1;
    for (long chi : *ledger.chis) rhs += chi + 1;
    rep.expect_eq("euler_identity", 1, rhs);
  }
  return rep;
}

AuditReport full_audit(const CurveRecord& curve) {
  AuditReport rep;
  for (std::size_t j = 0; j < curve.cusps.size(); ++j) {
    const auto& cusp = curve.cusps[j];
    const std::string tag = "cusp" + std::to_string(j + 1) + ".";
    rep.expect(tag + "standardize_raw", standardize(cusp.raw) == cusp.standard);
    rep.expect(tag + "standard_valid", validate(cusp.standard).ok());
    rep.expect(tag + "expand_round_trip", standardize(expand_low_p(cusp.standard)) == cusp.standard);
    rep.expect(tag + "mult_round_trip",
               multiplicity_to_standard_hn(hn_to_multiplicity(cusp.standard, MultForm::reduced)) == cusp.standard);
    const MarkedResolution res = resolution_graph(cusp.standard);
    const ResolutionCheck chk = check_resolution(res, cusp.standard);
    rep.expect(tag + "resolution.discriminant_one", chk.discriminant_one);
    rep.expect(tag + "resolution.unique_minus_one", chk.unique_minus_one);
    rep.expect(tag + "resolution.c_not_tip", chk.c_not_tip);
    rep.expect(tag + "resolution.branching_count", chk.branching_count);
    rep.expect(tag + "resolution.max_degree_three", chk.max_degree_three);
    rep.expect(tag + "resolution.negative_definite", chk.negative_definite);
    rep.expect(tag + "resolution.mult_matches", chk.mult_matches);
  }
  if (curve.family) {
    const auto table = table_multiplicities(*curve.family);
    rep.expect_eq("table_cusp_count", static_cast<long>(table.size()), static_cast<long>(curve.cusps.size()));
    for (std::size_t j = 0; j < std::min(table.size(), curve.cusps.size()); ++j) {
      rep.expect("cusp" + std::to_string(j + 1) + ".table_multiplicities",
                 hn_to_multiplicity(curve.cusps[j].standard, MultForm::reduced) == table[j]);
    }
  }
  const AuditReport eq = check_hn_equations(curve);
  rep.append(eq);
  // (c) follows from (a) and (b)
  const bool ab = eq.checks[0].pass && eq.checks[1].pass;
  rep.expect("hn_equation_c_implied", !ab || eq.checks[2].pass);
  rep.append(check_E2_bounds(curve));
  const KkdReport k = kkd_details(curve);
  rep.expect("kkd_nonnegative", sgn(k.value) >= 0, k.value, 0);
  for (std::size_t j = 0; j < k.r.size(); ++j) {
    rep.expect("cusp" + std::to_string(j + 1) + ".r_at_least_h", k.r_at_least_h[j], k.r[j].value(),
               static_cast<long>(curve.cusps[j].standard.size()));
  }
  return rep;
}

AuditReport full_audit(const FamilySpec& spec) { return full_audit(generate(spec)); }

}  // namespace cuspforge
