#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "cuspforge/divisor_graph.hpp"
#include "cuspforge/hn.hpp"
#include "cuspforge/invariants.hpp"

namespace cuspforge {

/// Dual graph Q of the minimal log resolution of one cusp, with the unique
/// (-1)-curve C where the proper transform E meets Q.
struct MarkedResolution {
  WeightedTree tree;
  std::size_t c_vertex = 0;
  std::size_t attach = 0;
  MultiplicitySequence mult;

  /// For single-pair sequences: Q as a chain, B side (tip to C), C, then the
  /// A side (C to tip), A having the larger discriminant.
  std::optional<Chain> chain() const;
};

/// Runs the blowup process on the pairs as given (no standardization). The
/// pairs only need c, p >= 1 and gcd(c_h, p_h) = 1 at the end.
MarkedResolution simulate_blowups(const HnSequence& seq);

/// Standardizes, then simulates.
MarkedResolution resolution_graph(const HnSequence& seq);

/// Blowup count ceiling for the simulator (TooLarge beyond).
inline constexpr std::uint64_t kMaxBlowups = 5'000'000;

struct ChainIdentityReport {
  BigNat c;
  BigNat p;
  Chain q;
  /// Both sides read starting next to C.
  Chain a;
  Chain b;
  BigInt d_a;
  BigInt d_b;
  BigInt d_a_rest;
  BigInt d_b_rest;
  BigNat expect_a_rest;  // c - p
  BigNat expect_b_rest;  // p - r with c = qp + r
  bool holds() const;
};

/// Chain identities for one HN pair (c/p) with c > p >= 1 coprime. Throws
/// NotCoprime or InvalidArgument.
ChainIdentityReport hn_chain_identities(const BigNat& c, const BigNat& p);

/// Invariant counts of a resolution used by audits and tests.
struct ResolutionCheck {
  bool discriminant_one = false;
  bool unique_minus_one = false;
  bool c_not_tip = false;
  bool branching_count = false;  // h - 1 branching vertices
  bool max_degree_three = false;
  bool negative_definite = false;
  bool mult_matches = false;
  bool all() const {
    return discriminant_one && unique_minus_one && c_not_tip && branching_count && max_degree_three && negative_definite &&
           mult_matches;
  }
};
ResolutionCheck check_resolution(const MarkedResolution& res, const HnSequence& standard_seq);

}  // namespace cuspforge
