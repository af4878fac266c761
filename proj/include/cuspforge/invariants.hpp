#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuspforge/bignat.hpp"
#include "cuspforge/hn.hpp"

namespace cuspforge {

/// A run (value)_count of equal multiplicities.
struct MultRun {
  BigNat value;
  BigNat count;

  friend bool operator==(const MultRun&, const MultRun&) = default;
};

enum class MultForm { reduced, full };

/// Non-increasing multiplicity sequence, stored run-length encoded with
/// maximal runs. The full form ends with (1)_m where m is the last entry
/// above 1; the reduced form has no trailing 1s.
class MultiplicitySequence {
 public:
  MultiplicitySequence() = default;
  /// Runs are merged and zero counts dropped; throws if not non-increasing or
  /// if the form invariant is broken.
  MultiplicitySequence(std::vector<MultRun> runs, MultForm form);

  static MultiplicitySequence from_entries(const std::vector<BigNat>& entries);
  /// Comma-separated entries, each either "m" or "(m)_k". Sequences ending in
  /// 1 are read as full, others as reduced.
  static MultiplicitySequence parse(std::string_view text);

  const std::vector<MultRun>& runs() const noexcept { return runs_; }
  MultForm form() const noexcept { return form_; }
  bool empty() const noexcept { return runs_.empty(); }

  MultiplicitySequence reduced() const;
  MultiplicitySequence full() const;

  /// Expanded entries; throws TooLarge past `limit` entries.
  std::vector<BigNat> entries(std::uint64_t limit = 10'000'000) const;
  BigNat length() const;
  BigNat sum() const;
  BigNat sum_of_squares() const;

  /// Run-length text, e.g. "(4,(2)_3)".
  std::string to_string() const;
  /// Plain comma list, e.g. "4,2,2,2".
  std::string to_plain_string() const;

  friend bool operator==(const MultiplicitySequence& a, const MultiplicitySequence& b) {
    return a.form_ == b.form_ && a.runs_ == b.runs_;
  }

 private:
  std::vector<MultRun> runs_;
  MultForm form_ = MultForm::reduced;
};

/// Puiseux characteristic (b0; b1, ..., bg).
class PuiseuxCharacteristic {
 public:
  explicit PuiseuxCharacteristic(std::vector<BigNat> beta);
  /// "b0;b1,...,bg", optionally wrapped in parentheses.
  static PuiseuxCharacteristic parse(std::string_view text);

  const std::vector<BigNat>& beta() const noexcept { return beta_; }
  std::size_t genus() const noexcept { return beta_.size() - 1; }
  /// e_0 = b0, e_i = gcd(e_{i-1}, b_i).
  std::vector<BigNat> gcd_levels() const;
  std::string to_string() const;

  friend bool operator==(const PuiseuxCharacteristic&, const PuiseuxCharacteristic&) = default;

 private:
  std::vector<BigNat> beta_;
};

enum class PairKind { puiseux, zariski };

/// Puiseux pairs (m_i, n_i) or Zariski pairs (b_i, a_i), in that component
/// order.
class PairList {
 public:
  PairList(PairKind kind, std::vector<std::pair<BigNat, BigNat>> pairs);
  /// "(x,y),(x,y),..."
  static PairList parse(PairKind kind, std::string_view text);

  PairKind kind() const noexcept { return kind_; }
  const std::vector<std::pair<BigNat, BigNat>>& pairs() const noexcept { return pairs_; }
  std::string to_string() const;

  friend bool operator==(const PairList&, const PairList&) = default;

 private:
  PairKind kind_;
  std::vector<std::pair<BigNat, BigNat>> pairs_;
};

/// Numerical semigroup with its gap set materialized at construction.
class Semigroup {
 public:
  /// Throws InvalidArgument unless gcd(generators) = 1, TooLarge when the
  /// conductor exceeds the sieve limit.
  explicit Semigroup(std::vector<BigNat> generators);

  const std::vector<BigNat>& generators() const noexcept { return generators_; }
  const std::vector<std::uint64_t>& gaps() const noexcept { return gaps_; }
  /// Smallest c with c + N contained in the semigroup.
  std::uint64_t conductor() const noexcept { return conductor_; }
  bool contains(std::uint64_t n) const;

  static constexpr std::uint64_t kMaxConductor = std::uint64_t{1} << 24;

 private:
  std::vector<BigNat> generators_;
  std::vector<std::uint64_t> gaps_;
  std::uint64_t conductor_ = 0;
};

struct MIPair {
  BigNat M;
  BigNat I;
};

/// Everything this module derives from one cusp.
struct CuspRecord {
  HnSequence hn;
  MultiplicitySequence mult;
  PuiseuxCharacteristic characteristic;
  PairList puiseux;
  PairList zariski;
  Semigroup semigroup;
  BigNat M;
  BigNat I;
};

MultiplicitySequence hn_to_multiplicity(const HnSequence& seq, MultForm form);
HnSequence multiplicity_to_standard_hn(const MultiplicitySequence& mult);

PuiseuxCharacteristic hn_to_puiseux_char(const HnSequence& seq);
HnSequence puiseux_char_to_standard_hn(const PuiseuxCharacteristic& ch);

PairList char_to_puiseux_pairs(const PuiseuxCharacteristic& ch);
PuiseuxCharacteristic puiseux_pairs_to_char(const PairList& pairs);

PairList zariski_from_hn(const HnSequence& seq);
HnSequence hn_from_zariski(const PairList& pairs);

/// Nested Euclidean scheme on the characteristic; full form.
MultiplicitySequence char_to_multiplicity(const PuiseuxCharacteristic& ch);

/// Minimal generators of the value semigroup.
std::vector<BigNat> semigroup_generators(const PuiseuxCharacteristic& ch);
Semigroup semigroup_of(const PuiseuxCharacteristic& ch);

/// Coefficients of 1 + (t-1) * sum_{k not in G} t^k, constant term first.
std::vector<int> alexander_polynomial(const Semigroup& sg);

/// M = c1 + sum p_k - 1 and I = sum c_k p_k on the standard form.
MIPair compute_M_I(const HnSequence& seq);

CuspRecord make_cusp_record(const HnSequence& seq);

}  // namespace cuspforge
