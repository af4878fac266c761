#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuspforge/bignat.hpp"

namespace cuspforge {

/// One Hamburger-Noether pair (c/p): the intersection numbers of the germ with
/// the two reference curves of one resolution stage.
struct HnPair {
  BigNat c;
  BigNat p;

  friend bool operator==(const HnPair&, const HnPair&) = default;
  friend auto operator<=>(const HnPair&, const HnPair&) = default;
};

enum class Flavor { standard, raw };

/// Ordered HN pair sequence. The flavor selects which axiom set `validate`
/// applies; construction only enforces h >= 1 and c, p >= 1.
class HnSequence {
 public:
  HnSequence(std::vector<HnPair> pairs, Flavor flavor);

  /// Text form "c1/p1,c2/p2,..."; whitespace is ignored.
  static HnSequence parse(std::string_view text, Flavor flavor = Flavor::raw);

  const std::vector<HnPair>& pairs() const noexcept { return pairs_; }
  const HnPair& operator[](std::size_t i) const { return pairs_[i]; }
  std::size_t size() const noexcept { return pairs_.size(); }
  Flavor flavor() const noexcept { return flavor_; }

  HnSequence with_flavor(Flavor f) const { return HnSequence(pairs_, f); }
  std::string to_string() const;

  /// Structural equality on the pairs; the flavor tag is ignored.
  friend bool operator==(const HnSequence& a, const HnSequence& b) { return a.pairs_ == b.pairs_; }
  friend auto operator<=>(const HnSequence& a, const HnSequence& b) { return a.pairs_ <=> b.pairs_; }

 private:
  std::vector<HnPair> pairs_;
  Flavor flavor_;
};

/// A violated axiom; `pair_index` is 1-based.
struct Violation {
  std::string axiom;
  std::size_t pair_index = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Axioms depend on the flavor:
///   both:     c_j >= 2, c_{j+1} = gcd(c_j, p_j), gcd(c_h, p_h) = 1
///   standard: additionally p_1 <= c_1, p_1 does not divide c_1, c_j != p_j,
///             c_j > c_{j+1}
ValidationReport validate(const HnSequence& seq);
ValidationReport validate(const HnSequence& seq, Flavor flavor);

/// Rewrites a raw sequence into the unique standard one. Throws
/// InvalidSequence when the input fails raw validation and NotReducible when
/// the rewriting fixpoint is still not standard.
HnSequence standardize(const HnSequence& seq);

/// Replaces each pair (c/p) with p > c by (c/c) repeated floor(p/c) times
/// followed by (c/p mod c). Throws DegenerateRemainder when c divides p.
HnSequence expand_low_p(const HnSequence& seq);

// Single rewrite steps, exposed for the confluence check.

/// Equal-pair absorption at 0-based index i >= 1: (x/kx)(x/y) -> (x/kx+y).
/// k = 1 is the plain rule; k > 1 arises when absorptions run left to right,
/// and allowing it makes the rewriting confluent.
std::optional<std::vector<HnPair>> absorb_equal_pair(const std::vector<HnPair>& pairs, std::size_t i);
/// Head merge: (c/p)(p/y) with p | c -> (c+y/p).
std::optional<std::vector<HnPair>> merge_head(const std::vector<HnPair>& pairs);

}  // namespace cuspforge
