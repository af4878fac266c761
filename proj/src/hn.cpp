#include "cuspforge/hn.hpp"

#include "cuspforge/error.hpp"
#include "text_util.hpp"

namespace cuspforge {

namespace {

constexpr std::uint64_t kMaxExpandedPairs = 1'000'000;

}  // namespace

HnSequence::HnSequence(std::vector<HnPair> pairs, Flavor flavor) : pairs_(std::move(pairs)), flavor_(flavor) {
  if (pairs_.empty()) fail(ErrorCode::invalid_sequence, "HN sequence must contain at least one pair");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].c.is_zero() || pairs_[i].p.is_zero()) {
      fail(ErrorCode::invalid_sequence, "HN pair " + std::to_string(i + 1) + " has a zero entry");
    }
  }
}

HnSequence HnSequence::parse(std::string_view text, Flavor flavor) {
  const std::string compact = detail::strip_spaces(text);
  if (compact.empty()) fail(ErrorCode::parse, "empty HN sequence");
  std::vector<HnPair> pairs;
  std::size_t start = 0;
  while (start <= compact.size()) {
    const std::size_t comma = compact.find(',', start);
    const std::string token = compact.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::size_t slash = token.find('/');
    if (slash == std::string::npos || token.find('/', slash + 1) != std::string::npos) {
      fail(ErrorCode::parse, "invalid HN pair '" + token + "' (expected c/p)");
    }
    try {
      pairs.push_back({BigNat::parse(token.substr(0, slash)), BigNat::parse(token.substr(slash + 1))});
    } catch (const Error&) {
      fail(ErrorCode::parse, "invalid HN pair '" + token + "' (expected c/p)");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return HnSequence(std::move(pairs), flavor);
}

std::string HnSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out += ',';
    out += pairs_[i].c.to_string() + "/" + pairs_[i].p.to_string();
  }
  return out;
}

ValidationReport validate(const HnSequence& seq) { return validate(seq, seq.flavor()); }

ValidationReport validate(const HnSequence& seq, Flavor flavor) {
  ValidationReport report;
  auto add = [&](std::string axiom, std::size_t index, std::string detail) {
    report.violations.push_back({std::move(axiom), index, std::move(detail)});
  };
  const auto& pairs = seq.pairs();
  const std::size_t h = pairs.size();

  for (std::size_t j = 0; j < h; ++j) {
    if (pairs[j].c < BigNat(2)) add("singular_stage", j + 1, "c must be at least 2");
  }
  for (std::size_t j = 0; j + 1 < h; ++j) {
    const BigNat g = gcd(pairs[j].c, pairs[j].p);
    if (pairs[j + 1].c != g) {
      add("gcd_chain", j + 2, "c" + std::to_string(j + 2) + " = " + pairs[j + 1].c.to_string() +
                                  " but gcd(c" + std::to_string(j + 1) + ",p" + std::to_string(j + 1) +
                                  ") = " + g.to_string());
    }
  }
  if (const BigNat g = gcd(pairs.back().c, pairs.back().p); !g.is_one()) {
    add("terminal_gcd", h, "gcd(c_h,p_h) = " + g.to_string() + " != 1");
  }
  if (flavor == Flavor::raw) return report;

  const HnPair& head = pairs.front();
  if (head.p > head.c) add("head_order", 1, "p1 > c1");
  if (head.p.divides(head.c)) add("head_divisibility", 1, "p1 divides c1");
  for (std::size_t j = 0; j < h; ++j) {
    if (pairs[j].c == pairs[j].p) add("equal_pair", j + 1, "c = p = " + pairs[j].c.to_string());
  }
  for (std::size_t j = 0; j + 1 < h; ++j) {
    if (!(pairs[j].c > pairs[j + 1].c)) add("strict_descent", j + 2, "c does not decrease");
  }
  return report;
}

std::optional<std::vector<HnPair>> absorb_equal_pair(const std::vector<HnPair>& pairs, std::size_t i) {
  if (i == 0 || i + 1 >= pairs.size()) return std::nullopt;
  const HnPair& cur = pairs[i];
  if (!cur.c.divides(cur.p) || pairs[i + 1].c != cur.c) return std::nullopt;
  std::vector<HnPair> out(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(i));
  out.push_back({cur.c, cur.p + pairs[i + 1].p});
  out.insert(out.end(), pairs.begin() + static_cast<std::ptrdiff_t>(i + 2), pairs.end());
  return out;
}

std::optional<std::vector<HnPair>> merge_head(const std::vector<HnPair>& pairs) {
  if (pairs.size() < 2) return std::nullopt;
  const HnPair& head = pairs[0];
  if (!head.p.divides(head.c) || pairs[1].c != head.p) return std::nullopt;
  std::vector<HnPair> out;
  out.reserve(pairs.size() - 1);
  out.push_back({head.c + pairs[1].p, head.p});
  out.insert(out.end(), pairs.begin() + 2, pairs.end());
  return out;
}

HnSequence standardize(const HnSequence& seq) {
  if (const auto report = validate(seq, Flavor::raw); !report.ok()) {
    const auto& v = report.violations.front();
    fail(ErrorCode::invalid_sequence,
         "HN sequence " + seq.to_string() + " violates " + v.axiom + " at pair " + std::to_string(v.pair_index));
  }
  std::vector<HnPair> pairs = seq.pairs();
  // Every rewrite drops one pair, so this terminates after at most h rounds.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = pairs.size() >= 2 ? pairs.size() - 2 : 0; i >= 1; --i) {
      if (auto next = absorb_equal_pair(pairs, i)) {
        pairs = std::move(*next);
        changed = true;
      }
    }
    if (auto next = merge_head(pairs)) {
      pairs = std::move(*next);
      changed = true;
    }
  }
  HnSequence out(std::move(pairs), Flavor::standard);
  if (const auto report = validate(out); !report.ok()) {
    fail(ErrorCode::not_reducible, "HN sequence " + seq.to_string() + " rewrites to " + out.to_string() +
                                       ", which violates " + report.violations.front().axiom);
  }
  return out;
}

HnSequence expand_low_p(const HnSequence& seq) {
  std::vector<HnPair> out;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const HnPair& pair = seq[j];
    if (!(pair.p > pair.c)) {
      out.push_back(pair);
      continue;
    }
    const BigNat reps = pair.p / pair.c;
    const BigNat rem = pair.p % pair.c;
    if (rem.is_zero()) {
      fail(ErrorCode::degenerate_remainder,
           "pair " + std::to_string(j + 1) + " (" + pair.c.to_string() + "/" + pair.p.to_string() + ") has p divisible by c");
    }
    const auto count = reps.to_u64();
    if (!count || *count + out.size() > kMaxExpandedPairs) {
      fail(ErrorCode::too_large, "expansion of pair " + std::to_string(j + 1) + " exceeds the pair limit");
    }
    out.insert(out.end(), *count, HnPair{pair.c, pair.c});
    out.push_back({pair.c, rem});
  }
  return HnSequence(std::move(out), Flavor::raw);
}

}  // namespace cuspforge
