#include "cuspforge/resolution.hpp"

#include <algorithm>
#include <array>

#include "cuspforge/error.hpp"

namespace cuspforge {

namespace {

constexpr std::size_t kVirtual = static_cast<std::size_t>(-1);

struct Reference {
  std::size_t vertex = kVirtual;  // kVirtual: not a component of Q
  BigNat value;                  // intersection number with the germ
};

// Splits a chain at `c` into (tip..c) and (c..tip) sides, both excluding c.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> chain_sides(const WeightedTree& t, std::size_t c) {
  const auto path = t.path_from(t.tips().front());
  const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), c) - path.begin());
  return {std::vector<std::size_t>(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(pos)),
          std::vector<std::size_t>(path.begin() + static_cast<std::ptrdiff_t>(pos) + 1, path.end())};
}

Chain chain_of(const WeightedTree& t, const std::vector<std::size_t>& ids) {
  std::vector<std::int64_t> a;
  for (std::size_t v : ids) a.push_back(-t.weight(v));
  return Chain(std::move(a));
}

}  // namespace

std::optional<Chain> MarkedResolution::chain() const {
  if (!tree.is_chain()) return std::nullopt;
  auto [left, right] = chain_sides(tree, c_vertex);
  Chain l = chain_of(tree, left);
  Chain r = chain_of(tree, right);
  const Chain whole = join_with_minus_one(l, r);
  if (discriminant(l) > discriminant(r)) {
    // A is on the left: reverse so that A follows C
    return whole.reversed();
  }
  return whole;
}

MarkedResolution simulate_blowups(const HnSequence& seq) {
  if (!gcd(seq.pairs().back().c, seq.pairs().back().p).is_one()) {
    fail(ErrorCode::invalid_sequence, "last HN pair of " + seq.to_string() + " is not coprime");
  }
  const MultiplicitySequence expected = hn_to_multiplicity(seq, MultForm::full);
  if (expected.length() > BigNat(kMaxBlowups)) {
    fail(ErrorCode::too_large, "resolution of " + seq.to_string() + " needs " + expected.length().to_string() + " blowups");
  }

  std::vector<std::int64_t> weights;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<MultRun> mult;
  std::array<Reference, 2> ref;

  for (std::size_t j = 0; j < seq.size(); ++j) {
    const HnPair& pair = seq[j];
    if (j == 0) {
      ref = {Reference{kVirtual, pair.c}, Reference{kVirtual, pair.p}};
    } else {
      if (ref[0].value != pair.c) {
        fail(ErrorCode::invalid_sequence, "pair " + std::to_string(j + 1) + " of " + seq.to_string() + " expects c = " +
                                              ref[0].value.to_string());
      }
      ref[1] = Reference{kVirtual, pair.p};
    }
    while (true) {
      const BigNat m = std::min(ref[0].value, ref[1].value);
      const std::size_t e = weights.size();
      weights.push_back(-1);
      adj.emplace_back();
      for (const Reference& r : ref) {
        if (r.vertex == kVirtual) continue;
        --weights[r.vertex];
        adj[r.vertex].push_back(e);
        adj[e].push_back(r.vertex);
      }
      if (ref[0].vertex != kVirtual && ref[1].vertex != kVirtual) {
        auto drop = [&](std::size_t u, std::size_t v) { adj[u].erase(std::find(adj[u].begin(), adj[u].end(), v)); };
        // the new curve separates the two references
        if (std::find(adj[ref[0].vertex].begin(), adj[ref[0].vertex].end(), ref[1].vertex) != adj[ref[0].vertex].end()) {
          drop(ref[0].vertex, ref[1].vertex);
          drop(ref[1].vertex, ref[0].vertex);
        }
      }
      if (!mult.empty() && mult.back().value == m) {
        mult.back().count += BigNat(1);
      } else {
        mult.push_back({m, BigNat(1)});
      }
      if (ref[0].value == ref[1].value) {
        // pair exhausted; the germ now meets only the newest curve, with the gcd
        ref[0] = Reference{e, m};
        break;
      }
      const std::size_t larger = ref[0].value > ref[1].value ? 0 : 1;
      ref[larger].value -= m;
      ref[1 - larger] = Reference{e, m};
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v : adj[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  MarkedResolution out;
  out.tree = WeightedTree(std::move(weights), edges);
  out.c_vertex = out.tree.size() - 1;
  out.attach = out.c_vertex;
  out.mult = MultiplicitySequence(std::move(mult), MultForm::full);
  return out;
}

MarkedResolution resolution_graph(const HnSequence& seq) { return simulate_blowups(standardize(seq)); }

bool ChainIdentityReport::holds() const {
  return d_a == to_signed(c) && d_b == to_signed(p) && d_a_rest == to_signed(expect_a_rest) &&
         d_b_rest == to_signed(expect_b_rest);
}

ChainIdentityReport hn_chain_identities(const BigNat& c, const BigNat& p) {
  if (p.is_zero() || !(c > p)) fail(ErrorCode::invalid_argument, "chain identities need c > p >= 1");
  if (!gcd(c, p).is_one()) fail(ErrorCode::not_coprime, "gcd(" + c.to_string() + "," + p.to_string() + ") != 1");
  const MarkedResolution res = simulate_blowups(HnSequence({{c, p}}, Flavor::raw));
  auto [left, right] = chain_sides(res.tree, res.c_vertex);
  std::reverse(left.begin(), left.end());  // read both sides starting next to C
  Chain l = chain_of(res.tree, left);
  Chain r = chain_of(res.tree, right);
  if (discriminant(l) < discriminant(r)) std::swap(l, r);

  ChainIdentityReport rep;
  rep.c = c;
  rep.p = p;
  rep.q = *res.chain();
  rep.a = l;
  rep.b = r;
  rep.d_a = discriminant(l);
  rep.d_b = discriminant(r);
  // drop the tip farthest from C
  auto rest = [](const Chain& ch) {
    return ch.empty() ? Chain() : Chain(std::vector<std::int64_t>(ch.entries().begin(), ch.entries().end() - 1));
  };
  rep.d_a_rest = discriminant(rest(l));
  rep.d_b_rest = discriminant(rest(r));
  rep.expect_a_rest = c - p;
  rep.expect_b_rest = p - c % p;
  return rep;
}

ResolutionCheck check_resolution(const MarkedResolution& res, const HnSequence& standard_seq) {
  ResolutionCheck chk;
  const WeightedTree& t = res.tree;
  chk.discriminant_one = discriminant(t) == 1;
  std::size_t minus_one = 0;
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.weight(v) == -1) ++minus_one;
  }
  chk.unique_minus_one = minus_one == 1 && t.weight(res.c_vertex) == -1;
  chk.c_not_tip = t.degree(res.c_vertex) >= 2;
  chk.branching_count = t.branching_vertices().size() + 1 == standard_seq.size();
  chk.max_degree_three = true;
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.degree(v) > 3) chk.max_degree_three = false;
  }
  chk.negative_definite = is_negative_definite(t);
  chk.mult_matches = res.mult == hn_to_multiplicity(standard_seq, MultForm::full);
  return chk;
}

}  // namespace cuspforge
