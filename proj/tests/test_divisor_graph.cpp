#include <algorithm>
#include <random>

#include "cuspforge/divisor_graph.hpp"
#include "cuspforge/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspforge;

namespace {

WeightedTree chain_tree(const char* text) { return WeightedTree::from_chain(Chain::parse(text)); }

WeightedTree random_tree(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::vector<std::int64_t> w;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < n; ++v) {
    w.push_back(std::uniform_int_distribution<int>(lo, hi)(rng));
    if (v) edges.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  }
  return WeightedTree(std::move(w), edges);
}

Chain random_chain(std::mt19937_64& rng, std::size_t max_len, int lo, int hi) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  std::vector<std::int64_t> a;
  for (std::size_t i = 0; i < len; ++i) a.push_back(std::uniform_int_distribution<int>(lo, hi)(rng));
  return Chain(std::move(a));
}

oracle::SmallTree small(const WeightedTree& t) {
  oracle::SmallTree s;
  for (auto w : t.weights()) s.w.push_back(w);
  for (auto [u, v] : t.edges()) s.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return s;
}

long long cofactor(const WeightedTree& t) {
  std::vector<std::vector<long long>> m(t.size(), std::vector<long long>(t.size(), 0));
  for (std::size_t v = 0; v < t.size(); ++v) {
    m[v][v] = -t.weight(v);
    for (std::size_t u : t.neighbors(v)) m[v][u] = -1;
  }
  return oracle::cofactor_det(m);
}

}  // namespace

TEST_CASE("chain notation") {
  CHECK(Chain::parse("[5,2,2]").entries() == std::vector<std::int64_t>{5, 2, 2});
  CHECK(Chain::parse("[(2)_3,4,1,(2)_2]").entries() == std::vector<std::int64_t>{2, 2, 2, 4, 1, 2, 2});
  CHECK(Chain::parse("[4,(2)_-1,3]").entries() == std::vector<std::int64_t>{5});
  CHECK(Chain::parse("[(2)_{-1},3]").empty());
  CHECK(Chain::parse("[(2)_{-1},3,7]").entries() == std::vector<std::int64_t>{7});
  CHECK(Chain::parse("[]").empty());
  CHECK_THROWS_AS(Chain::parse("[(3)_-1,3]"), Error);
  CHECK_THROWS_AS(Chain::parse("[(2)_-1,4]"), Error);
  CHECK_THROWS_AS(Chain::parse("[(2)_-2,3]"), Error);
  CHECK_THROWS_AS(Chain::parse("[2,x]"), Error);
  CHECK(same_chain(Chain::parse("[2,3]"), Chain::parse("[3,2]")));
  CHECK_FALSE(same_chain(Chain::parse("[2,3,4]"), Chain::parse("[3,2,4]")));
}

TEST_CASE("tree construction") {
  CHECK_THROWS_AS(WeightedTree({-1, -2, -3}, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(WeightedTree({-1, -2, -3}, {{0, 1}}), Error);
  CHECK_THROWS_AS(WeightedTree({-1, -2}, {{0, 0}}), Error);
  const WeightedTree fork({-2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(fork.branching_vertices() == std::vector<std::size_t>{0});
  CHECK_FALSE(fork.is_chain());
  CHECK(fork.tips().size() == 3);
  CHECK(chain_tree("[3,1,2]").as_chain()->entries() == std::vector<std::int64_t>{3, 1, 2});
  CHECK(isomorphic(chain_tree("[3,1,2]"), chain_tree("[2,1,3]")));
  CHECK_FALSE(isomorphic(chain_tree("[3,1,2]"), chain_tree("[1,3,2]")));
  const WeightedTree relabeled({-2, -2, -2, -2}, {{3, 1}, {3, 2}, {3, 0}});
  CHECK(isomorphic(fork, relabeled));
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(WeightedTree()) == 1);
  CHECK(discriminant(Chain()) == 1);
  for (int k = 1; k <= 6; ++k) {
    const Chain twos(std::vector<std::int64_t>(static_cast<std::size_t>(k), 2));
    CHECK(discriminant(twos) == k + 1);
    CHECK(discriminant(WeightedTree::from_chain(twos)) == k + 1);
  }
  CHECK(discriminant(Chain::parse("[5,2,2]")) == 13);
  CHECK(discriminant(chain_tree("[2,2,2,1,5,2,2]")) == 1);
}

TEST_CASE("discriminant: recursion, elimination and cofactors agree") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 400; ++i) {
    const auto t = random_tree(rng, 1 + rng() % 12, -6, 1);
    const BigInt d = discriminant(t);
    CHECK(d == discriminant_dense(t));
    if (t.size() <= 8) CHECK(d == BigInt(static_cast<long>(cofactor(t))));
    if (auto ch = t.as_chain()) CHECK(d == discriminant(*ch));
    // splitting at an edge: d(T) = d(T1) d(T2) - d(T1 - v1) d(T2 - v2)
    for (auto [u, v] : t.edges()) {
      std::vector<std::size_t> side_u;
      for (const auto& comp : t.components_without(v)) {
        if (std::find(comp.begin(), comp.end(), u) != comp.end()) side_u = comp;
      }
      std::vector<std::size_t> side_v;
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (std::find(side_u.begin(), side_u.end(), x) == side_u.end()) side_v.push_back(x);
      }
      auto without = [&](std::vector<std::size_t> ids, std::size_t drop) {
        ids.erase(std::find(ids.begin(), ids.end(), drop));
        // the remainder may be disconnected: multiply over components
        BigInt prod = 1;
        std::vector<bool> in(t.size(), false);
        for (auto x : ids) in[x] = true;
        std::vector<bool> seen(t.size(), false);
        for (auto x : ids) {
          if (seen[x]) continue;
          std::vector<std::size_t> comp{x};
          seen[x] = true;
          for (std::size_t k = 0; k < comp.size(); ++k) {
            for (auto y : t.neighbors(comp[k])) {
              if (in[y] && !seen[y]) {
                seen[y] = true;
                comp.push_back(y);
              }
            }
          }
          prod *= discriminant(t.induced(comp));
        }
        return prod;
      };
      const BigInt lhs = discriminant(t.induced(side_u)) * discriminant(t.induced(side_v)) -
                         without(side_u, u) * without(side_v, v);
      CHECK(d == lhs);
    }
  }
}

TEST_CASE("negative definiteness matches Sylvester on leading minors") {
  std::mt19937_64 rng(2);
  int definite = 0;
  for (int i = 0; i < 400; ++i) {
    const auto t = random_tree(rng, 1 + rng() % 9, -5, -1);
    const auto minors = leading_minors(t);
    const bool sylvester = std::all_of(minors.begin(), minors.end(), [](const BigInt& m) { return sgn(m) > 0; });
    CHECK(is_negative_definite(t) == sylvester);
    definite += sylvester;
  }
  CHECK(definite > 20);
  CHECK(definite < 390);
}

TEST_CASE("star_concat and adjoint") {
  CHECK(star_concat(Chain::parse("[2,2]"), Chain::parse("[2]")) == Chain::parse("[2,3]"));
  CHECK(star_concat(Chain::parse("[4,3]"), Chain::parse("[1]")) == Chain::parse("[4,3]"));
  CHECK(star_concat(star_concat(Chain::parse("[2]"), Chain::parse("[3]")), Chain::parse("[2]")) ==
        star_concat(Chain::parse("[2]"), star_concat(Chain::parse("[3]"), Chain::parse("[2]"))));
  for (int a = 2; a <= 5; ++a) {
    CHECK(adjoint(Chain({a})) == Chain(std::vector<std::int64_t>(static_cast<std::size_t>(a - 1), 2)));
  }
  CHECK(adjoint(Chain::parse("[2,2]")) == Chain::parse("[3]"));
  CHECK(adjoint(Chain::parse("[2,3]")) == Chain::parse("[2,3]"));
  CHECK(contracts_to_zero_curve(WeightedTree::from_chain(Chain::parse("[2,3,1,2,3]"))));
  try {
    adjoint(Chain::parse("[2,1,3]"));
    FAIL("expected EntryBelowTwo");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::entry_below_two);
  }
  CHECK_THROWS_AS(star_concat(Chain(), Chain::parse("[2]")), Error);
}

TEST_CASE("adjoint properties on random chains") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Chain a = random_chain(rng, 8, 2, 6);
    const Chain as = adjoint(a);
    CHECK(discriminant(a) == discriminant(as));
    CHECK(adjoint(as) == a);
    CHECK(contracts_to_zero_curve(WeightedTree::from_chain(join_with_minus_one(a, as))));
    // any other right-hand side fails
    Chain b = random_chain(rng, 8, 2, 6);
    if (b != as) CHECK_FALSE(contracts_to_zero_curve(WeightedTree::from_chain(join_with_minus_one(a, b))));
  }
}

TEST_CASE("blowups") {
  const WeightedTree single({-3}, {});
  const auto outer = blow_up_outer(single, 0);
  CHECK(outer.as_chain()->entries() == std::vector<std::int64_t>{4, 1});
  const auto t31 = chain_tree("[3,1]");
  const auto inner = blow_up_inner(t31, 0, 1);
  REQUIRE(inner.as_chain());
  CHECK(inner.as_chain()->entries() == std::vector<std::int64_t>{4, 1, 2});
  CHECK(inner.weight(2) == -1);
  CHECK_THROWS_AS(blow_up_inner(chain_tree("[3,1,2]"), 0, 2), Error);
  try {
    blow_down(chain_tree("[3,2]"), 0);
    FAIL("expected NotContractible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_contractible);
  }
  const WeightedTree fork({-1, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_THROWS_AS(blow_down(fork, 0), Error);
}

TEST_CASE("blow_down inverts blow_up and keeps the discriminant") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const auto t = random_tree(rng, 1 + rng() % 10, -5, 0);
    const auto edges = t.edges();
    WeightedTree up;
    if (edges.empty() || rng() % 2) {
      up = blow_up_outer(t, rng() % t.size());
    } else {
      const auto [u, v] = edges[rng() % edges.size()];
      up = blow_up_inner(t, u, v);
    }
    CHECK(blow_down(up, up.size() - 1) == t);
    CHECK(discriminant(up) == discriminant(t));
  }
}

TEST_CASE("contraction examples") {
  CHECK(contracts_to_smooth_point(chain_tree("[2,2,2,1,5,2,2]")));
  CHECK(contracts_to_smooth_point(chain_tree("[2,3,1,2]")));
  CHECK_FALSE(contracts_to_smooth_point(chain_tree("[2,1,2]")));
  CHECK(contracts_to_zero_curve(chain_tree("[2,1,2]")));
  CHECK(contracts_to_zero_curve(chain_tree("[3,1,2,2]")));
  CHECK_FALSE(contracts_to_zero_curve(chain_tree("[2,2]")));
  CHECK_FALSE(contracts_to_smooth_point(WeightedTree()));
  CHECK_FALSE(contracts_to_zero_curve(WeightedTree()));
  const auto trace = contracts_to_smooth_point_trace(chain_tree("[2,3,1,2]"));
  CHECK(trace.success);
  CHECK(trace.order == std::vector<std::size_t>{2, 3, 1});
}

TEST_CASE("greedy contraction agrees with exhaustive search") {
  std::mt19937_64 rng(6);
  int smooth = 0;
  int zero = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto t = random_tree(rng, 1 + rng() % 7, -3, 0);
    const auto reach = oracle::reachable_singletons(small(t));
    CHECK(contracts_to_smooth_point(t) == (reach.count(-1) > 0));
    CHECK(contracts_to_zero_curve(t) == (reach.count(0) > 0));
    if (contracts_to_smooth_point(t)) {
      ++smooth;
      CHECK(discriminant(t) == 1);
    }
    zero += contracts_to_zero_curve(t);
  }
  CHECK(smooth > 10);
  CHECK(zero > 10);
}

TEST_CASE("fiber multiplicities") {
  auto mu = [](const WeightedTree& t) {
    std::vector<unsigned long> out;
    for (const auto& x : fiber_multiplicities(t)) out.push_back(*x.to_u64());
    return out;
  };
  CHECK(mu(chain_tree("[2,1,2]")) == std::vector<unsigned long>{1, 2, 1});
  CHECK(mu(chain_tree("[2,2,1,3]")) == std::vector<unsigned long>{1, 2, 3, 1});
  CHECK(mu(chain_tree("[1,(2)_4,1]")) == std::vector<unsigned long>(6, 1));
  CHECK(mu(WeightedTree({0}, {})) == std::vector<unsigned long>{1});
  try {
    fiber_multiplicities(chain_tree("[2,2]"));
    FAIL("expected NotAFiber");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_fiber);
  }
}

TEST_CASE("fiber classification") {
  const auto chain = classify_fiber(chain_tree("[3,1,2,2]"));
  CHECK(chain.shape == FiberShape::chain);
  REQUIRE(chain.sides);
  CHECK(chain.sides->first == Chain::parse("[3]"));
  CHECK(discriminant(chain.sides->first) == 3);
  CHECK(discriminant(chain.sides->second) == 3);

  // center -2 with twigs [2], [2], [1]
  const WeightedTree fork({-2, -2, -2, -1}, {{2, 0}, {2, 1}, {2, 3}});
  const auto rep = classify_fiber(fork);
  CHECK(rep.shape == FiberShape::special_fork);
  std::vector<unsigned long> mu;
  for (const auto& x : rep.multiplicities) mu.push_back(*x.to_u64());
  CHECK(mu == std::vector<unsigned long>{1, 1, 2, 2});
  CHECK(rep.minus_one_vertices == std::vector<std::size_t>{3});

  const auto two = classify_fiber(chain_tree("[1,2,2,1]"));
  CHECK(two.shape == FiberShape::chain);
  CHECK(two.minus_one_vertices.size() == 2);
  CHECK_FALSE(two.sides);
  CHECK(classify_fiber(WeightedTree({0}, {})).shape == FiberShape::nondegenerate);
}

TEST_CASE("fiber kernel is the intersection kernel and unit (-1)-curves do not branch") {
  // fibers grown by random blowups of a 0-curve
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    WeightedTree t({0}, {});
    const int steps = 1 + static_cast<int>(rng() % 7);
    for (int s = 0; s < steps; ++s) {
      const auto edges = t.edges();
      if (edges.empty() || rng() % 3 == 0) {
        t = blow_up_outer(t, rng() % t.size());
      } else {
        const auto [u, v] = edges[rng() % edges.size()];
        t = blow_up_inner(t, u, v);
      }
    }
    REQUIRE(contracts_to_zero_curve(t));
    const auto rep = classify_fiber(t);
    for (std::size_t v = 0; v < t.size(); ++v) {
      BigInt dot = BigInt(t.weight(v)) * rep.multiplicities[v].value();
      for (std::size_t u : t.neighbors(v)) dot += rep.multiplicities[u].value();
      CHECK(dot == 0);
    }
    for (std::size_t v : rep.minus_one_vertices) {
      if (rep.multiplicities[v].is_one()) CHECK(t.degree(v) == 1);
    }
  }
}

TEST_CASE("DOT export") {
  const std::string one = dot_export(WeightedTree({-1}, {}));
  CHECK(one.find("v0 [label=\"-1\"]") != std::string::npos);
  const std::string path = dot_export(chain_tree("[2,1,2]"));
  CHECK(path ==
        "graph Q {\n  node [shape=circle];\n  v0 [label=\"-2\"];\n  v1 [label=\"-1\"];\n  v2 [label=\"-2\"];\n"
        "  v0 -- v1;\n  v1 -- v2;\n}\n");
  const std::string marked = dot_export(chain_tree("[3,1,2]"), 1);
  CHECK(marked.find("v1 [label=\"-1\", shape=doublecircle]") != std::string::npos);
  CHECK(marked.find("E [shape=box]") != std::string::npos);
  CHECK(marked.find("E -- v1 [style=dashed]") != std::string::npos);
}

TEST_CASE("leading minors agree with cofactor expansion") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto t = random_tree(rng, 1 + rng() % 7, -3, 1);
    const auto minors = leading_minors(t);
    REQUIRE(minors.size() == t.size());
    for (std::size_t k = 1; k <= t.size(); ++k) {
      std::vector<std::vector<long long>> m(k, std::vector<long long>(k, 0));
      for (std::size_t v = 0; v < k; ++v) {
        m[v][v] = -t.weight(v);
        for (std::size_t u : t.neighbors(v)) {
          if (u < k) m[v][u] = -1;
        }
      }
      CHECK(minors[k - 1] == BigInt(static_cast<long>(oracle::cofactor_det(m))));
    }
  }
}
