#include "cuspforge/invariants.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "cuspforge/error.hpp"
#include "text_util.hpp"

namespace cuspforge {

namespace {

void append_run(std::vector<MultRun>& runs, const BigNat& value, const BigNat& count) {
  if (count.is_zero()) return;
  if (!runs.empty() && runs.back().value == value) {
    runs.back().count += count;
  } else {
    runs.push_back({value, count});
  }
}

std::string pair_text(const std::pair<BigNat, BigNat>& pr) {
  return "(" + pr.first.to_string() + "," + pr.second.to_string() + ")";
}

// Euclid on one HN pair, appending runs until the first exact division.
void euclid_runs(std::vector<MultRun>& runs, const HnPair& pair) {
  BigNat a = std::max(pair.c, pair.p);
  BigNat b = std::min(pair.c, pair.p);
  while (true) {
    append_run(runs, b, a / b);
    BigNat r = a % b;
    if (r.is_zero()) return;
    a = std::move(b);
    b = std::move(r);
  }
}

HnSequence as_standard(const HnSequence& seq) {
  if (seq.flavor() == Flavor::standard && validate(seq).ok()) return seq;
  return standardize(seq);
}

}  // namespace

// ---- MultiplicitySequence ----

MultiplicitySequence::MultiplicitySequence(std::vector<MultRun> runs, MultForm form) : form_(form) {
  for (const auto& run : runs) {
    if (run.value.is_zero()) fail(ErrorCode::invalid_sequence, "multiplicity 0 is not allowed");
    if (!runs_.empty() && run.value > runs_.back().value && !run.count.is_zero()) {
      fail(ErrorCode::invalid_sequence, "multiplicity sequence is not non-increasing at value " + run.value.to_string());
    }
    append_run(runs_, run.value, run.count);
  }
  if (runs_.empty()) return;
  const bool trailing_ones = runs_.back().value.is_one();
  if (form_ == MultForm::reduced && trailing_ones) {
    fail(ErrorCode::invalid_sequence, "reduced multiplicity sequence ends with 1");
  }
  if (form_ == MultForm::full) {
    if (!trailing_ones) fail(ErrorCode::invalid_sequence, "full multiplicity sequence must end with 1s");
    // an all-ones sequence (smooth branch) has no entry above 1 to compare against
    if (runs_.size() >= 2 && runs_.back().count != runs_[runs_.size() - 2].value) {
      fail(ErrorCode::invalid_sequence, "full multiplicity sequence has " + runs_.back().count.to_string() +
                                            " trailing 1s, expected " + runs_[runs_.size() - 2].value.to_string());
    }
  }
}

MultiplicitySequence MultiplicitySequence::from_entries(const std::vector<BigNat>& entries) {
  std::vector<MultRun> runs;
  for (const auto& e : entries) runs.push_back({e, BigNat(1)});
  const bool full = !entries.empty() && entries.back().is_one();
  return MultiplicitySequence(std::move(runs), full ? MultForm::full : MultForm::reduced);
}

MultiplicitySequence MultiplicitySequence::parse(std::string_view text) {
  std::string compact = detail::strip_spaces(text);
  if (detail::wrapped_in_parens(compact)) compact = compact.substr(1, compact.size() - 2);
  std::vector<MultRun> runs;
  if (compact.empty()) return MultiplicitySequence();
  for (const std::string& token : detail::split_top_level(compact)) {
    try {
      if (!token.empty() && token.front() == '(') {
        const std::size_t close = token.find(')');
        if (close == std::string::npos || close + 2 > token.size() || token[close + 1] != '_') {
          fail(ErrorCode::parse, "");
        }
        runs.push_back({BigNat::parse(token.substr(1, close - 1)), BigNat::parse(token.substr(close + 2))});
      } else {
        runs.push_back({BigNat::parse(token), BigNat(1)});
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::parse) throw;
      fail(ErrorCode::parse, "invalid multiplicity entry '" + token + "' (expected m or (m)_k)");
    }
  }
  std::vector<MultRun> nonzero;
  for (auto& r : runs) {
    if (!r.count.is_zero()) nonzero.push_back(std::move(r));
  }
  const bool full = !nonzero.empty() && nonzero.back().value.is_one();
  return MultiplicitySequence(std::move(nonzero), full ? MultForm::full : MultForm::reduced);
}

MultiplicitySequence MultiplicitySequence::reduced() const {
  std::vector<MultRun> runs;
  for (const auto& r : runs_) {
    if (!r.value.is_one()) runs.push_back(r);
  }
  return MultiplicitySequence(std::move(runs), MultForm::reduced);
}

MultiplicitySequence MultiplicitySequence::full() const {
  if (form_ == MultForm::full) return *this;
  if (runs_.empty()) return *this;
  std::vector<MultRun> runs = runs_;
  runs.push_back({BigNat(1), runs_.back().value});
  return MultiplicitySequence(std::move(runs), MultForm::full);
}

std::vector<BigNat> MultiplicitySequence::entries(std::uint64_t limit) const {
  if (length() > BigNat(limit)) fail(ErrorCode::too_large, "multiplicity sequence has more than " + std::to_string(limit) + " entries");
  std::vector<BigNat> out;
  for (const auto& r : runs_) {
    const std::uint64_t n = *r.count.to_u64();
    out.insert(out.end(), n, r.value);
  }
  return out;
}

BigNat MultiplicitySequence::length() const {
  BigNat n;
  for (const auto& r : runs_) n += r.count;
  return n;
}

BigNat MultiplicitySequence::sum() const {
  BigNat s;
  for (const auto& r : runs_) s += r.value * r.count;
  return s;
}

BigNat MultiplicitySequence::sum_of_squares() const {
  BigNat s;
  for (const auto& r : runs_) s += r.value * r.value * r.count;
  return s;
}

std::string MultiplicitySequence::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i) out += ',';
    if (runs_[i].count.is_one()) {
      out += runs_[i].value.to_string();
    } else {
      out += "(" + runs_[i].value.to_string() + ")_" + runs_[i].count.to_string();
    }
  }
  return out + ")";
}

std::string MultiplicitySequence::to_plain_string() const {
  std::string out;
  for (const auto& e : entries()) {
    if (!out.empty()) out += ',';
    out += e.to_string();
  }
  return out;
}

// ---- PuiseuxCharacteristic ----

PuiseuxCharacteristic::PuiseuxCharacteristic(std::vector<BigNat> beta) : beta_(std::move(beta)) {
  if (beta_.size() < 2) fail(ErrorCode::invalid_sequence, "Puiseux characteristic needs beta_0 and at least one exponent");
  if (beta_[0] < BigNat(2)) fail(ErrorCode::invalid_sequence, "beta_0 must be at least 2");
  BigNat e = beta_[0];
  for (std::size_t i = 1; i < beta_.size(); ++i) {
    if (!(beta_[i] > beta_[i - 1])) fail(ErrorCode::invalid_sequence, "Puiseux characteristic is not strictly increasing");
    if (e.divides(beta_[i])) {
      fail(ErrorCode::invalid_sequence, "e_" + std::to_string(i - 1) + " divides beta_" + std::to_string(i));
    }
    e = gcd(e, beta_[i]);
  }
  if (!e.is_one()) fail(ErrorCode::invalid_sequence, "e_g = " + e.to_string() + " != 1");
}

PuiseuxCharacteristic PuiseuxCharacteristic::parse(std::string_view text) {
  std::string compact = detail::strip_spaces(text);
  if (detail::wrapped_in_parens(compact)) compact = compact.substr(1, compact.size() - 2);
  const std::size_t semi = compact.find(';');
  if (semi == std::string::npos) fail(ErrorCode::parse, "invalid Puiseux characteristic '" + compact + "' (expected b0;b1,...)");
  std::vector<BigNat> beta;
  auto read = [&](const std::string& token) {
    try {
      beta.push_back(BigNat::parse(token));
    } catch (const Error&) {
      fail(ErrorCode::parse, "invalid Puiseux exponent '" + token + "'");
    }
  };
  read(compact.substr(0, semi));
  for (const std::string& token : detail::split_top_level(compact.substr(semi + 1))) read(token);
  return PuiseuxCharacteristic(std::move(beta));
}

std::vector<BigNat> PuiseuxCharacteristic::gcd_levels() const {
  std::vector<BigNat> e{beta_[0]};
  for (std::size_t i = 1; i < beta_.size(); ++i) e.push_back(gcd(e.back(), beta_[i]));
  return e;
}

std::string PuiseuxCharacteristic::to_string() const {
  std::string out = "(" + beta_[0].to_string() + ";";
  for (std::size_t i = 1; i < beta_.size(); ++i) {
    if (i > 1) out += ',';
    out += beta_[i].to_string();
  }
  return out + ")";
}

// ---- PairList ----

PairList::PairList(PairKind kind, std::vector<std::pair<BigNat, BigNat>> pairs) : kind_(kind), pairs_(std::move(pairs)) {
  if (pairs_.empty()) fail(ErrorCode::invalid_sequence, "pair list is empty");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& [x, y] = pairs_[i];
    const BigNat& denom = kind_ == PairKind::puiseux ? y : x;
    const BigNat& numer = kind_ == PairKind::puiseux ? x : y;
    const std::string where = "pair " + std::to_string(i + 1) + " " + pair_text(pairs_[i]);
    if (denom < BigNat(2)) fail(ErrorCode::invalid_sequence, where + ": denominator below 2");
    if (!gcd(x, y).is_one()) fail(ErrorCode::invalid_sequence, where + ": entries not coprime");
    if (i == 0 && !(numer > denom)) fail(ErrorCode::invalid_sequence, where + ": first exponent must exceed 1");
  }
}

PairList PairList::parse(PairKind kind, std::string_view text) {
  const std::string compact = detail::strip_spaces(text);
  std::vector<std::pair<BigNat, BigNat>> pairs;
  for (const std::string& token : detail::split_top_level(compact)) {
    if (!detail::wrapped_in_parens(token)) fail(ErrorCode::parse, "invalid pair '" + token + "' (expected (x,y))");
    const auto parts = detail::split_top_level(token.substr(1, token.size() - 2));
    if (parts.size() != 2) fail(ErrorCode::parse, "invalid pair '" + token + "' (expected (x,y))");
    try {
      pairs.emplace_back(BigNat::parse(parts[0]), BigNat::parse(parts[1]));
    } catch (const Error&) {
      fail(ErrorCode::parse, "invalid pair '" + token + "' (expected (x,y))");
    }
  }
  return PairList(kind, std::move(pairs));
}

std::string PairList::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out += ',';
    out += pair_text(pairs_[i]);
  }
  return out;
}

// ---- Semigroup ----

Semigroup::Semigroup(std::vector<BigNat> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) fail(ErrorCode::invalid_argument, "semigroup needs at least one generator");
  BigNat g;
  std::vector<std::uint64_t> gens;
  for (const auto& x : generators_) {
    if (x.is_zero()) fail(ErrorCode::invalid_argument, "semigroup generator 0");
    g = gcd(g, x);
    const auto v = x.to_u64();
    if (!v || *v > kMaxConductor) fail(ErrorCode::too_large, "semigroup generator " + x.to_string() + " exceeds the sieve limit");
    gens.push_back(*v);
  }
  if (!g.is_one()) fail(ErrorCode::invalid_argument, "semigroup generators have gcd " + g.to_string());

  // Apery set with respect to the smallest generator: shortest paths over residues.
  const std::uint64_t m = *std::min_element(gens.begin(), gens.end());
  if (m == 1) return;
  std::vector<std::uint64_t> apery(m, UINT64_MAX);
  using Item = std::pair<std::uint64_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  apery[0] = 0;
  queue.push({0, 0});
  const std::uint64_t ceiling = kMaxConductor + m;
  while (!queue.empty()) {
    const auto [dist, r] = queue.top();
    queue.pop();
    if (dist != apery[r]) continue;
    for (std::uint64_t gen : gens) {
      const std::uint64_t nd = dist + gen;
      if (nd > ceiling) fail(ErrorCode::too_large, "semigroup conductor exceeds the sieve limit");
      const std::uint64_t nr = nd % m;
      if (nd < apery[nr]) {
        apery[nr] = nd;
        queue.push({nd, nr});
      }
    }
  }
  const std::uint64_t frobenius = *std::max_element(apery.begin(), apery.end()) - m;
  conductor_ = frobenius + 1;
  if (conductor_ > kMaxConductor) fail(ErrorCode::too_large, "semigroup conductor exceeds the sieve limit");
  for (std::uint64_t n = 1; n < conductor_; ++n) {
    if (n < apery[n % m]) gaps_.push_back(n);
  }
}

bool Semigroup::contains(std::uint64_t n) const {
  if (n >= conductor_) return true;
  return !std::binary_search(gaps_.begin(), gaps_.end(), n);
}

// ---- conversions ----

MultiplicitySequence hn_to_multiplicity(const HnSequence& seq, MultForm form) {
  std::vector<MultRun> runs;
  for (const auto& pair : seq.pairs()) euclid_runs(runs, pair);
  MultiplicitySequence full(std::move(runs), MultForm::full);
  return form == MultForm::full ? full : full.reduced();
}

HnSequence multiplicity_to_standard_hn(const MultiplicitySequence& mult) {
  const MultiplicitySequence full = mult.full();
  const auto& runs = full.runs();
  if (runs.size() < 2) fail(ErrorCode::not_realizable, "multiplicity sequence " + mult.to_string() + " has no singular point");
  // runs are maximal, so runs[k].value are the distinct values mu_k with counts u_k
  std::vector<HnPair> pairs;
  pairs.push_back({runs[0].count * runs[0].value + runs[1].value, runs[0].value});
  while (true) {
    const HnPair& last = pairs.back();
    const BigNat c = gcd(last.c, last.p);
    if (c.is_one()) break;
    std::size_t k = 0;
    while (k < runs.size() && runs[k].value != c) ++k;
    if (k == 0 || k + 1 >= runs.size()) {
      fail(ErrorCode::not_realizable, "multiplicity sequence " + mult.to_string() + " does not reach level " + c.to_string());
    }
    const BigInt p = runs[k + 1].value.value() + runs[k].count.value() * runs[k].value.value() - runs[k - 1].value.value();
    if (sgn(p) <= 0) {
      fail(ErrorCode::not_realizable, "multiplicity sequence " + mult.to_string() + " gives p <= 0 at level " + c.to_string());
    }
    pairs.push_back({c, BigNat(p)});
  }
  HnSequence out(std::move(pairs), Flavor::standard);
  if (!validate(out).ok() || hn_to_multiplicity(out, MultForm::full) != full) {
    fail(ErrorCode::not_realizable, "multiplicity sequence " + mult.to_string() + " is not realized by any cusp");
  }
  return out;
}

PuiseuxCharacteristic hn_to_puiseux_char(const HnSequence& seq) {
  const HnSequence std_seq = as_standard(seq);
  std::vector<BigNat> beta{std_seq[0].p, std_seq[0].c};
  for (std::size_t i = 1; i < std_seq.size(); ++i) beta.push_back(beta.back() + std_seq[i].p);
  return PuiseuxCharacteristic(std::move(beta));
}

HnSequence puiseux_char_to_standard_hn(const PuiseuxCharacteristic& ch) {
  const auto& beta = ch.beta();
  std::vector<HnPair> pairs{{beta[1], beta[0]}};
  for (std::size_t i = 2; i < beta.size(); ++i) {
    pairs.push_back({gcd(pairs.back().c, pairs.back().p), beta[i] - beta[i - 1]});
  }
  HnSequence out(std::move(pairs), Flavor::standard);
  if (const auto report = validate(out); !report.ok()) {
    fail(ErrorCode::not_standard, "characteristic " + ch.to_string() + " gives " + out.to_string() + ", which violates " +
                                      report.violations.front().axiom);
  }
  return out;
}

PairList char_to_puiseux_pairs(const PuiseuxCharacteristic& ch) {
  const auto e = ch.gcd_levels();
  std::vector<std::pair<BigNat, BigNat>> pairs;
  for (std::size_t i = 1; i < e.size(); ++i) pairs.emplace_back(ch.beta()[i] / e[i], e[i - 1] / e[i]);
  return PairList(PairKind::puiseux, std::move(pairs));
}

PuiseuxCharacteristic puiseux_pairs_to_char(const PairList& pairs) {
  if (pairs.kind() != PairKind::puiseux) fail(ErrorCode::invalid_argument, "expected Puiseux pairs");
  const auto& pr = pairs.pairs();
  const std::size_t g = pr.size();
  // tail[i] = n_{i+1} * ... * n_g (0-based: product of pr[i..].second)
  std::vector<BigNat> tail(g + 1, BigNat(1));
  for (std::size_t i = g; i-- > 0;) tail[i] = tail[i + 1] * pr[i].second;
  std::vector<BigNat> beta{tail[0]};
  for (std::size_t i = 0; i < g; ++i) beta.push_back(pr[i].first * tail[i + 1]);
  return PuiseuxCharacteristic(std::move(beta));
}

PairList zariski_from_hn(const HnSequence& seq) {
  const HnSequence s = as_standard(seq);
  const std::size_t h = s.size();
  auto next_c = [&](std::size_t k) { return k + 1 < h ? s[k + 1].c : BigNat(1); };
  std::vector<std::pair<BigNat, BigNat>> pairs;
  pairs.emplace_back(s[0].p / next_c(0), s[0].c / next_c(0));
  for (std::size_t k = 1; k < h; ++k) pairs.emplace_back(s[k].c / next_c(k), s[k].p / next_c(k));
  return PairList(PairKind::zariski, std::move(pairs));
}

HnSequence hn_from_zariski(const PairList& pairs) {
  if (pairs.kind() != PairKind::zariski) fail(ErrorCode::invalid_argument, "expected Zariski pairs");
  const auto& pr = pairs.pairs();
  const std::size_t h = pr.size();
  // tail[k] = b_{k} * ... * b_h over 0-based indices
  std::vector<BigNat> tail(h + 1, BigNat(1));
  for (std::size_t k = h; k-- > 0;) tail[k] = tail[k + 1] * pr[k].first;
  std::vector<HnPair> out;
  out.push_back({pr[0].second * tail[1], pr[0].first * tail[1]});
  for (std::size_t k = 1; k < h; ++k) out.push_back({tail[k], pr[k].second * tail[k + 1]});
  HnSequence seq(std::move(out), Flavor::standard);
  if (const auto report = validate(seq); !report.ok()) {
    fail(ErrorCode::inconsistent, "Zariski pairs " + pairs.to_string() + " give " + seq.to_string() + ", which violates " +
                                      report.violations.front().axiom);
  }
  return seq;
}

MultiplicitySequence char_to_multiplicity(const PuiseuxCharacteristic& ch) {
  const auto& beta = ch.beta();
  const auto e = ch.gcd_levels();
  std::vector<MultRun> runs;
  for (std::size_t i = 1; i < beta.size(); ++i) {
    // m_{i,0} = beta_i - beta_{i-1} (beta_1 itself for i = 1), m_{i,1} = e_{i-1}
    BigNat a = i == 1 ? beta[1] : beta[i] - beta[i - 1];
    BigNat b = e[i - 1];
    while (true) {
      append_run(runs, b, a / b);
      BigNat r = a % b;
      if (r.is_zero()) break;
      a = std::move(b);
      b = std::move(r);
    }
  }
  return MultiplicitySequence(std::move(runs), MultForm::full);
}

std::vector<BigNat> semigroup_generators(const PuiseuxCharacteristic& ch) {
  const auto& beta = ch.beta();
  const auto e = ch.gcd_levels();
  std::vector<BigNat> gens{beta[0]};
  BigNat acc = beta[0] * beta[1];
  for (std::size_t l = 0; l + 1 < beta.size(); ++l) {
    if (l >= 1) acc += e[l] * (beta[l + 1] - beta[l]);
    gens.push_back(acc / e[l]);
  }
  return gens;
}

Semigroup semigroup_of(const PuiseuxCharacteristic& ch) { return Semigroup(semigroup_generators(ch)); }

std::vector<int> alexander_polynomial(const Semigroup& sg) {
  std::vector<int> coeffs(sg.conductor() + 1, 0);
  coeffs[0] = 1;
  for (std::uint64_t k : sg.gaps()) {
    coeffs[k] -= 1;
    coeffs[k + 1] += 1;
  }
  return coeffs;
}

MIPair compute_M_I(const HnSequence& seq) {
  const HnSequence s = as_standard(seq);
  MIPair out{s[0].c, BigNat()};
  for (const auto& pair : s.pairs()) {
    out.M += pair.p;
    out.I += pair.c * pair.p;
  }
  out.M -= BigNat(1);
  return out;
}

CuspRecord make_cusp_record(const HnSequence& seq) {
  HnSequence s = as_standard(seq);
  PuiseuxCharacteristic ch = hn_to_puiseux_char(s);
  MIPair mi = compute_M_I(s);
  return CuspRecord{s,
                    hn_to_multiplicity(s, MultForm::full),
                    ch,
                    char_to_puiseux_pairs(ch),
                    zariski_from_hn(s),
                    semigroup_of(ch),
                    std::move(mi.M),
                    std::move(mi.I)};
}

}  // namespace cuspforge
