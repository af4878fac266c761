#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuspforge/bignat.hpp"
#include "cuspforge/hn.hpp"
#include "cuspforge/invariants.hpp"

namespace cuspforge {

enum class FamilyId { FZ1, A, B, C, D, E, F, G, OR1, OR2 };

inline constexpr FamilyId kAllFamilies[] = {FamilyId::FZ1, FamilyId::A, FamilyId::B,   FamilyId::C,  FamilyId::D,
                                            FamilyId::E,   FamilyId::F, FamilyId::G,   FamilyId::OR1, FamilyId::OR2};

std::string_view family_name(FamilyId id) noexcept;
std::optional<FamilyId> family_from_name(std::string_view name);
/// FZ1: {"d","k"}; A-D: {"gamma","p","s"}; E, F, OR1, OR2: {"k"}; G: {"gamma"}.
std::vector<std::string_view> param_names(FamilyId id);

struct FamilySpec {
  FamilyId id = FamilyId::FZ1;
  std::vector<std::uint64_t> params;

  /// "A(2,2,1)"; whitespace is ignored.
  static FamilySpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
  friend auto operator<=>(const FamilySpec&, const FamilySpec&) = default;
};

/// Throws ParamOutOfDomain naming the violated inequality.
void check_domain(const FamilySpec& spec);

struct CuspEntry {
  HnSequence raw;
  HnSequence standard;
};

/// A curve: degree, gamma = -E^2 and its cusps. Family records carry their
/// spec; hand-entered ones do not.
struct CurveRecord {
  std::optional<FamilySpec> family;
  BigNat degree;
  BigNat gamma;
  std::vector<CuspEntry> cusps;

  /// Builds the entries from raw sequences (standardizing each).
  static CurveRecord from_raw(BigNat degree, BigNat gamma, const std::vector<HnSequence>& raw);
};

BigNat family_degree(const FamilySpec& spec);
BigNat family_gamma(const FamilySpec& spec);

/// The raw HN sequences of every cusp, in the uniform parametric form.
std::vector<HnSequence> family_raw_cusps(const FamilySpec& spec);

CurveRecord generate(const FamilySpec& spec);

/// Reduced multiplicity sequences straight from the table formulas; runs
/// with count 0 and trailing 1s are dropped.
std::vector<MultiplicitySequence> table_multiplicities(const FamilySpec& spec);

/// Every instance with degree <= max_degree, ordered by family then params.
std::vector<FamilySpec> enumerate_specs(std::uint64_t max_degree);
/// Generates the records of enumerate_specs on up to `threads` workers; the
/// order does not depend on the thread count.
std::vector<CurveRecord> enumerate(std::uint64_t max_degree, unsigned threads = 1);

/// Refuses to enumerate more than this many instances (TooLarge).
inline constexpr std::size_t kMaxEnumerated = 2'000'000;

struct Collision {
  std::size_t first;
  std::size_t second;
};

struct DistinctnessReport {
  std::size_t records = 0;
  std::vector<Collision> collisions;
  bool ok() const { return collisions.empty(); }
};

/// Pairs of records whose multisets of standardized cusps coincide.
DistinctnessReport distinctness_audit(const std::vector<CurveRecord>& records);

/// (degree, gamma) solved from sum M = gamma - 2 + 3d and sum I = gamma + d^2;
/// nullopt when there is no integral solution with d >= 1 and gamma >= 0.
std::optional<std::pair<BigNat, BigNat>> degree_gamma_from_cusps(const std::vector<HnSequence>& cusps);

}  // namespace cuspforge
