#include <chrono>
#include <numeric>
#include <random>

#include "cuspforge/error.hpp"
#include "cuspforge/resolution.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspforge;

namespace {

HnSequence from_pairs(const oracle::Pairs& p, Flavor f) {
  std::vector<HnPair> v;
  for (auto [c, q] : p) v.push_back({BigNat(c), BigNat(q)});
  return HnSequence(std::move(v), f);
}

// Full multiplicity sequence as Euclid runs over the expanded pairs.
std::vector<oracle::u64> euclid_mult(const HnSequence& standard_seq) {
  std::vector<oracle::u64> out;
  const HnSequence expanded = expand_low_p(standard_seq);
  for (const auto& pr : expanded.pairs()) {
    for (auto m : oracle::euclid_entries(*pr.c.to_u64(), *pr.p.to_u64())) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("single-pair resolutions") {
  const auto r134 = resolution_graph(HnSequence::parse("13/4"));
  REQUIRE(r134.chain());
  CHECK(same_chain(*r134.chain(), Chain::parse("[2,2,2,1,5,2,2]")));
  CHECK(r134.tree.weight(r134.c_vertex) == -1);
  CHECK(r134.chain()->entries()[3] == 1);

  const auto r133 = resolution_graph(HnSequence::parse("13/3"));
  CHECK(same_chain(*r133.chain(), Chain::parse("[(2)_3,4,1,(2)_2]")));
  CHECK(same_chain(*resolution_graph(HnSequence::parse("5/2")).chain(), Chain::parse("[2,3,1,2]")));
  CHECK(same_chain(*resolution_graph(HnSequence::parse("3/2")).chain(), Chain::parse("[2,1,3]")));
  for (int m = 1; m <= 6; ++m) {
    const auto res = resolution_graph(HnSequence({{BigNat(2 * m + 1), BigNat(2)}}, Flavor::standard));
    CHECK(contracts_to_smooth_point(res.tree));
    CHECK(discriminant(res.tree) == 1);
  }
}

TEST_CASE("two-pair resolution of the degree-7 fixture") {
  const auto s = HnSequence::parse("6/4,2/3");
  const auto res = resolution_graph(s);
  CHECK(res.tree.branching_vertices().size() == 1);
  CHECK_FALSE(res.chain());
  CHECK(res.mult == MultiplicitySequence::parse("4,2,2,2,1,1"));
  CHECK(check_resolution(res, s).all());
  CHECK(contracts_to_smooth_point(res.tree));
  // raw and standard forms give the same graph
  CHECK(isomorphic(simulate_blowups(HnSequence::parse("6/4,2/2,2/1", Flavor::raw)).tree, res.tree));
}

TEST_CASE("simulator rejects inconsistent pairs") {
  CHECK_THROWS_AS(simulate_blowups(HnSequence::parse("6/4,3/1", Flavor::raw)), Error);
  try {
    simulate_blowups(HnSequence::parse("6/4", Flavor::raw));
    FAIL("expected InvalidSequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_sequence);
  }
}

TEST_CASE("random resolutions satisfy the minimal-resolution invariants") {
  std::mt19937_64 rng(4242);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 500; ++i) {
    const auto s = from_pairs(oracle::random_standard(rng, 4, 10'000), Flavor::standard);
    const auto res = resolution_graph(s);
    const auto chk = check_resolution(res, s);
    CHECK(chk.discriminant_one);
    CHECK(chk.unique_minus_one);
    CHECK(chk.c_not_tip);
    CHECK(chk.branching_count);
    CHECK(chk.max_degree_three);
    CHECK(chk.negative_definite);
    CHECK(chk.mult_matches);
    std::vector<oracle::u64> mult;
    for (const auto& m : res.mult.entries()) mult.push_back(*m.to_u64());
    CHECK(mult == euclid_mult(s));
    if (res.tree.size() <= 60) {
      CHECK(discriminant_dense(res.tree) == 1);
      CHECK(contracts_to_smooth_point(res.tree));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("500 resolutions in " << secs << " s");
}

TEST_CASE("chain identities") {
  const auto r = hn_chain_identities(BigNat(13), BigNat(4));
  CHECK(r.a == Chain::parse("[5,2,2]"));
  CHECK(r.b == Chain::parse("[2,2,2]"));
  CHECK(r.d_a == 13);
  CHECK(r.d_b == 4);
  CHECK(r.d_a_rest == 9);
  CHECK(r.d_b_rest == 3);
  CHECK(r.holds());
  const auto r32 = hn_chain_identities(BigNat(3), BigNat(2));
  CHECK(same_chain(r32.q, Chain::parse("[2,1,3]")));
  CHECK(r32.holds());
  const auto r71 = hn_chain_identities(BigNat(7), BigNat(1));
  CHECK(r71.b.empty());
  CHECK(r71.d_b == 1);
  CHECK(r71.holds());
  try {
    hn_chain_identities(BigNat(6), BigNat(4));
    FAIL("expected NotCoprime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_coprime);
  }
  CHECK_THROWS_AS(hn_chain_identities(BigNat(3), BigNat(5)), Error);
}

TEST_CASE("chain identities on random coprime pairs") {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 200) {
    const oracle::u64 c = std::uniform_int_distribution<oracle::u64>(2, 5000)(rng);
    const oracle::u64 p = std::uniform_int_distribution<oracle::u64>(1, c - 1)(rng);
    if (std::gcd(c, p) != 1) continue;
    ++done;
    const auto r = hn_chain_identities(BigNat(c), BigNat(p));
    CHECK(r.d_a == BigInt(static_cast<unsigned long>(c)));
    CHECK(r.d_b == BigInt(static_cast<unsigned long>(p)));
    CHECK(r.d_a_rest == BigInt(static_cast<unsigned long>(c - p)));
    CHECK(r.d_b_rest == BigInt(static_cast<unsigned long>(p - c % p)));
    CHECK(r.holds());
  }
}

TEST_CASE("DOT of a marked resolution") {
  const auto res = resolution_graph(HnSequence::parse("3/2"));
  const std::string dot = dot_export(res.tree, res.c_vertex);
  CHECK(dot.rfind("graph Q {\n", 0) == 0);
  CHECK(dot.find("v" + std::to_string(res.c_vertex) + " [label=\"-1\", shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("E -- v" + std::to_string(res.c_vertex) + " [style=dashed]") != std::string::npos);
}
