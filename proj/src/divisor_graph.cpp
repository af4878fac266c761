#include "cuspforge/divisor_graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "cuspforge/error.hpp"
#include "linalg.hpp"
#include "text_util.hpp"

namespace cuspforge {

namespace {

std::int64_t parse_int(const std::string& token) {
  std::string t = token;
  if (t.size() >= 2 && t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    fail(ErrorCode::parse, "invalid integer '" + token + "'");
  }
  return v;
}

// Parent array and BFS order rooted at 0.
struct Rooted {
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

Rooted root_at(const WeightedTree& t, std::size_t root) {
  Rooted r;
  r.parent.assign(t.size(), kNone);
  r.order.reserve(t.size());
  std::vector<bool> seen(t.size(), false);
  r.order.push_back(root);
  seen[root] = true;
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    const std::size_t v = r.order[i];
    for (std::size_t u : t.neighbors(v)) {
      if (seen[u]) continue;
      seen[u] = true;
      r.parent[u] = v;
      r.order.push_back(u);
    }
  }
  return r;
}

// Determinants of all rooted subtrees (root 0), indexed by vertex.
std::vector<BigInt> subtree_determinants(const WeightedTree& t) {
  const Rooted r = root_at(t, 0);
  std::vector<BigInt> d(t.size());
  std::vector<BigInt> child_prod(t.size(), BigInt(1));  // d(subtree(v) - v)
  for (std::size_t i = r.order.size(); i-- > 0;) {
    const std::size_t v = r.order[i];
    std::vector<std::size_t> kids;
    for (std::size_t u : t.neighbors(v)) {
      if (u != r.parent[v]) kids.push_back(u);
    }
    // prefix/suffix products avoid dividing by a possibly zero d(child)
    const std::size_t k = kids.size();
    std::vector<BigInt> prefix(k + 1, BigInt(1));
    std::vector<BigInt> suffix(k + 1, BigInt(1));
    for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * d[kids[j]];
    for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] * d[kids[j]];
    BigInt value = BigInt(-t.weight(v)) * prefix[k];
    for (std::size_t j = 0; j < k; ++j) value -= child_prod[kids[j]] * prefix[j] * suffix[j + 1];
    child_prod[v] = prefix[k];
    d[v] = std::move(value);
  }
  return d;
}

detail::IntMatrix negated_matrix(const WeightedTree& t) {
  const std::size_t n = t.size();
  detail::IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    m[v][v] = -t.weight(v);
    for (std::size_t u : t.neighbors(v)) m[v][u] = -1;
  }
  return m;
}

}  // namespace

// ---- Chain ----

Chain Chain::from_notation(const std::vector<Run>& runs) {
  std::vector<std::int64_t> out;
  bool consume_three = false;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Run run = runs[i];
    if (consume_three) {
      consume_three = false;
      if (run.value != 3 || run.count < 1) fail(ErrorCode::invalid_argument, "(2)_{-1} must be followed by 3");
      --run.count;
    }
    if (run.count == -1) {
      if (run.value != 2 || i + 1 == runs.size()) fail(ErrorCode::invalid_argument, "count -1 is only defined in [a,(2)_{-1},3]");
      if (!out.empty()) ++out.back();
      consume_three = true;
      continue;
    }
    if (run.count < 0) fail(ErrorCode::invalid_argument, "negative run count " + std::to_string(run.count));
    out.insert(out.end(), static_cast<std::size_t>(run.count), run.value);
  }
  return Chain(std::move(out));
}

Chain Chain::parse(std::string_view text) {
  std::string compact = detail::strip_spaces(text);
  if (compact.size() >= 2 && compact.front() == '[' && compact.back() == ']') compact = compact.substr(1, compact.size() - 2);
  if (compact.empty()) return Chain();
  std::vector<Run> runs;
  for (const std::string& token : detail::split_top_level(compact)) {
    if (!token.empty() && token.front() == '(') {
      const std::size_t close = token.find(')');
      if (close == std::string::npos || close + 2 > token.size() || token[close + 1] != '_') {
        fail(ErrorCode::parse, "invalid chain entry '" + token + "' (expected a or (a)_k)");
      }
      runs.push_back({parse_int(token.substr(1, close - 1)), parse_int(token.substr(close + 2))});
    } else {
      runs.push_back({parse_int(token), 1});
    }
  }
  return from_notation(runs);
}

Chain Chain::reversed() const { return Chain(std::vector<std::int64_t>(a_.rbegin(), a_.rend())); }

std::string Chain::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a_[i]);
  }
  return out + "]";
}

bool same_chain(const Chain& a, const Chain& b) { return a == b || a == b.reversed(); }

// ---- WeightedTree ----

WeightedTree::WeightedTree(std::vector<std::int64_t> weights, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : w_(std::move(weights)), adj_(w_.size()) {
  const std::size_t n = w_.size();
  if (n == 0 ? !edges.empty() : edges.size() != n - 1) {
    fail(ErrorCode::invalid_argument, "a tree on " + std::to_string(n) + " vertices needs " +
                                          std::to_string(n ? n - 1 : 0) + " edges, got " + std::to_string(edges.size()));
  }
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) fail(ErrorCode::invalid_argument, "edge endpoint out of range");
    if (u == v) fail(ErrorCode::invalid_argument, "self-loop at vertex " + std::to_string(u));
    const std::size_t ru = find(u);
    const std::size_t rv = find(v);
    if (ru == rv) fail(ErrorCode::invalid_argument, "edges contain a cycle or a duplicate");
    root[ru] = rv;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

WeightedTree WeightedTree::from_chain(const Chain& chain) {
  std::vector<std::int64_t> w;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    w.push_back(-chain[i]);
    if (i) edges.emplace_back(i - 1, i);
  }
  return WeightedTree(std::move(w), edges);
}

bool WeightedTree::adjacent(std::size_t u, std::size_t v) const {
  const auto& list = adj_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedTree::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (std::size_t v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> WeightedTree::tips() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (degree(v) <= 1) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> WeightedTree::branching_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (degree(v) >= 3) out.push_back(v);
  }
  return out;
}

bool WeightedTree::is_chain() const {
  return std::all_of(adj_.begin(), adj_.end(), [](const auto& list) { return list.size() <= 2; });
}

std::vector<std::size_t> WeightedTree::path_from(std::size_t start) const {
  if (!is_chain() || degree(start) > 1) fail(ErrorCode::invalid_argument, "path_from needs a tip of a chain");
  std::vector<std::size_t> path{start};
  std::size_t prev = kNone;
  std::size_t cur = start;
  while (true) {
    std::size_t next = kNone;
    for (std::size_t u : adj_[cur]) {
      if (u != prev) next = u;
    }
    if (next == kNone) break;
    path.push_back(next);
    prev = cur;
    cur = next;
  }
  return path;
}

std::optional<Chain> WeightedTree::as_chain() const {
  if (!is_chain()) return std::nullopt;
  if (empty()) return Chain();
  std::vector<std::int64_t> a;
  for (std::size_t v : path_from(tips().front())) a.push_back(-w_[v]);
  return Chain(std::move(a));
}

WeightedTree WeightedTree::induced(const std::vector<std::size_t>& vertices) const {
  std::vector<std::size_t> index(size(), kNone);
  std::vector<std::int64_t> w;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index.at(vertices[i]) = i;
    w.push_back(w_[vertices[i]]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v : vertices) {
    for (std::size_t u : adj_[v]) {
      if (index[u] != kNone && v < u) edges.emplace_back(index[v], index[u]);
    }
  }
  return WeightedTree(std::move(w), edges);
}

std::vector<std::vector<std::size_t>> WeightedTree::components_without(std::size_t v) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size(), false);
  seen.at(v) = true;
  for (std::size_t start : adj_[v]) {
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (std::size_t u : adj_[comp[i]]) {
        if (!seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

WeightedTree WeightedTree::with_weight(std::size_t v, std::int64_t w) const {
  WeightedTree out = *this;
  out.w_.at(v) = w;
  return out;
}

// ---- canonical form ----

std::string canonical_form(const WeightedTree& t) {
  const std::size_t n = t.size();
  if (n == 0) return "()";
  // centers by leaf peeling
  std::vector<std::size_t> deg(n);
  std::vector<std::size_t> layer;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (std::size_t v : layer) {
      for (std::size_t u : t.neighbors(v)) {
        if (--deg[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  std::string best;
  for (std::size_t center : layer) {
    const Rooted r = root_at(t, center);
    std::vector<std::string> code(n);
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t v = r.order[i];
      std::vector<std::string> kids;
      for (std::size_t u : t.neighbors(v)) {
        if (u != r.parent[v]) kids.push_back(std::move(code[u]));
      }
      std::sort(kids.begin(), kids.end());
      std::string s = "(" + std::to_string(t.weight(v));
      for (auto& k : kids) s += k;
      code[v] = s + ")";
    }
    if (best.empty() || code[center] < best) best = std::move(code[center]);
  }
  return best;
}

bool isomorphic(const WeightedTree& a, const WeightedTree& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

// ---- discriminants ----

BigInt discriminant(const WeightedTree& t) {
  if (t.empty()) return 1;
  return subtree_determinants(t)[0];
}

BigInt discriminant(const Chain& c) {
  // d_k = a_k d_{k-1} - d_{k-2}
  BigInt prev = 1;
  BigInt cur = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    BigInt next = BigInt(c[i]) * cur - (i == 0 ? BigInt(0) : prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt discriminant_dense(const WeightedTree& t) { return detail::bareiss_det(negated_matrix(t)); }

bool is_negative_definite(const WeightedTree& t) {
  if (t.empty()) return true;
  const auto d = subtree_determinants(t);
  return std::all_of(d.begin(), d.end(), [](const BigInt& x) { return sgn(x) > 0; });
}

std::vector<BigInt> leading_minors(const WeightedTree& t) { return detail::bareiss_leading_minors(negated_matrix(t)); }

// ---- chain operations ----

Chain star_concat(const Chain& a, const Chain& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::invalid_argument, "star_concat needs two nonempty chains");
  std::vector<std::int64_t> out(a.entries().begin(), a.entries().end() - 1);
  out.push_back(a.entries().back() + b[0] - 1);
  out.insert(out.end(), b.entries().begin() + 1, b.entries().end());
  return Chain(std::move(out));
}

Chain adjoint(const Chain& a) {
  if (a.empty()) fail(ErrorCode::invalid_argument, "adjoint of the empty chain");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 2) fail(ErrorCode::entry_below_two, "chain " + a.to_string() + " has entry " + std::to_string(a[i]) + " below 2");
  }
  Chain out(std::vector<std::int64_t>(static_cast<std::size_t>(a.entries().back() - 1), 2));
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    out = star_concat(out, Chain(std::vector<std::int64_t>(static_cast<std::size_t>(a[i] - 1), 2)));
  }
  return out;
}

Chain join_with_minus_one(const Chain& a, const Chain& b) {
  std::vector<std::int64_t> out = a.entries();
  out.push_back(1);
  out.insert(out.end(), b.entries().begin(), b.entries().end());
  return Chain(std::move(out));
}

// ---- blowups ----

WeightedTree blow_up_outer(const WeightedTree& t, std::size_t site) {
  if (site >= t.size()) fail(ErrorCode::invalid_argument, "blowup site " + std::to_string(site) + " is not a vertex");
  std::vector<std::int64_t> w = t.weights();
  --w[site];
  w.push_back(-1);
  auto edges = t.edges();
  edges.emplace_back(site, t.size());
  return WeightedTree(std::move(w), edges);
}

WeightedTree blow_up_inner(const WeightedTree& t, std::size_t u, std::size_t v) {
  if (u >= t.size() || v >= t.size() || !t.adjacent(u, v)) {
    fail(ErrorCode::invalid_argument, "blowup site (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  }
  std::vector<std::int64_t> w = t.weights();
  --w[u];
  --w[v];
  w.push_back(-1);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : t.edges()) {
    if (e != std::pair{std::min(u, v), std::max(u, v)}) edges.push_back(e);
  }
  edges.emplace_back(u, t.size());
  edges.emplace_back(v, t.size());
  return WeightedTree(std::move(w), edges);
}

WeightedTree blow_down(const WeightedTree& t, std::size_t v) {
  if (v >= t.size()) fail(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " out of range");
  if (t.weight(v) != -1) fail(ErrorCode::not_contractible, "vertex " + std::to_string(v) + " has weight " + std::to_string(t.weight(v)));
  if (t.degree(v) > 2) fail(ErrorCode::not_contractible, "vertex " + std::to_string(v) + " is branching");
  auto renum = [v](std::size_t x) { return x > v ? x - 1 : x; };
  std::vector<std::int64_t> w;
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (x == v) continue;
    w.push_back(t.weight(x) + (t.adjacent(x, v) ? 1 : 0));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : t.edges()) {
    if (a != v && b != v) edges.emplace_back(renum(a), renum(b));
  }
  const auto& nb = t.neighbors(v);
  if (nb.size() == 2) edges.emplace_back(renum(nb[0]), renum(nb[1]));
  return WeightedTree(std::move(w), edges);
}

// ---- contraction ----

ContractionResult contract_greedily(const WeightedTree& t) {
  const std::size_t n = t.size();
  ContractionResult result;
  if (n == 0) return result;
  std::vector<std::int64_t> w = t.weights();
  std::vector<std::set<std::size_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v].insert(t.neighbors(v).begin(), t.neighbors(v).end());
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> candidates;
  auto contractible = [&](std::size_t v) { return alive[v] && w[v] == -1 && adj[v].size() <= 2; };
  for (std::size_t v = 0; v < n; ++v) {
    if (contractible(v)) candidates.push(v);
  }
  while (remaining > 1 && !candidates.empty()) {
    const std::size_t v = candidates.top();
    candidates.pop();
    if (!contractible(v)) continue;
    // A contraction can only create candidates among the neighbours, but a
    // lower-id neighbour must be retried first, so the heap keeps the order.
    const std::vector<std::size_t> nb(adj[v].begin(), adj[v].end());
    alive[v] = false;
    --remaining;
    result.order.push_back(v);
    for (std::size_t u : nb) {
      adj[u].erase(v);
      ++w[u];
    }
    if (nb.size() == 2) {
      adj[nb[0]].insert(nb[1]);
      adj[nb[1]].insert(nb[0]);
    }
    for (std::size_t u : nb) {
      if (contractible(u)) candidates.push(u);
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) keep.push_back(v);
  }
  std::vector<std::size_t> index(n, kNone);
  std::vector<std::int64_t> kw;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    index[keep[i]] = i;
    kw.push_back(w[keep[i]]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v : keep) {
    for (std::size_t u : adj[v]) {
      if (v < u) edges.emplace_back(index[v], index[u]);
    }
  }
  result.remainder = WeightedTree(std::move(kw), edges);
  result.success = result.remainder.size() == 1;
  return result;
}

ContractionResult contracts_to_smooth_point_trace(const WeightedTree& t) {
  ContractionResult r = contract_greedily(t);
  r.success = r.remainder.size() == 1 && r.remainder.weight(0) == -1;
  return r;
}

bool contracts_to_smooth_point(const WeightedTree& t) { return contracts_to_smooth_point_trace(t).success; }

bool contracts_to_zero_curve(const WeightedTree& t) {
  const ContractionResult r = contract_greedily(t);
  return r.remainder.size() == 1 && r.remainder.weight(0) == 0;
}

// ---- fibers ----

std::string_view fiber_shape_name(FiberShape s) noexcept {
  switch (s) {
    case FiberShape::nondegenerate: return "nondegenerate";
    case FiberShape::chain: return "chain";
    case FiberShape::special_fork: return "special_fork";
    case FiberShape::other: return "other";
  }
  return "other";
}

std::vector<BigNat> fiber_multiplicities(const WeightedTree& t) {
  if (!contracts_to_zero_curve(t)) fail(ErrorCode::not_a_fiber, "tree does not contract to a 0-curve");
  detail::IntMatrix m = negated_matrix(t);
  const auto basis = detail::nullspace(m);
  if (basis.size() != 1) fail(ErrorCode::not_a_fiber, "intersection matrix kernel has dimension " + std::to_string(basis.size()));
  const auto& v = basis[0];
  mpz_class lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class y = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
    ints.push_back(std::move(y));
  }
  const int sign = sgn(ints[0]);
  std::vector<BigNat> out;
  for (auto& y : ints) {
    if (sgn(y) != sign || sign == 0) fail(ErrorCode::not_a_fiber, "kernel vector is not sign-definite");
    out.emplace_back(BigInt(abs(y) / g));
  }
  return out;
}

FiberReport classify_fiber(const WeightedTree& t) {
  FiberReport report;
  report.multiplicities = fiber_multiplicities(t);
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.weight(v) != -1) continue;
    if (t.degree(v) >= 3) fail(ErrorCode::not_a_fiber, "(-1)-vertex " + std::to_string(v) + " is branching");
    report.minus_one_vertices.push_back(v);
  }
  if (t.size() == 1) {
    report.shape = FiberShape::nondegenerate;
    return report;
  }
  if (t.is_chain()) {
    report.shape = FiberShape::chain;
    if (report.minus_one_vertices.size() == 1 && t.degree(report.minus_one_vertices[0]) == 2) {
      const auto path = t.path_from(t.tips().front());
      const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), report.minus_one_vertices[0]) - path.begin());
      std::vector<std::int64_t> u;
      std::vector<std::int64_t> u_star;
      for (std::size_t i = 0; i < pos; ++i) u.push_back(-t.weight(path[i]));
      for (std::size_t i = pos + 1; i < path.size(); ++i) u_star.push_back(-t.weight(path[i]));
      Chain U(std::move(u));
      Chain U_star(std::move(u_star));
      if (discriminant(U) != discriminant(U_star)) {
        fail(ErrorCode::not_a_fiber, "sides " + U.to_string() + " and " + U_star.to_string() + " have different discriminants");
      }
      report.sides = std::pair{std::move(U), std::move(U_star)};
    }
    return report;
  }
  const auto branching = t.branching_vertices();
  if (branching.size() == 1 && t.degree(branching[0]) == 3) {
    const std::size_t center = branching[0];
    int unit_twigs = 0;
    int heavy_heads = 0;
    for (const auto& twig : t.components_without(center)) {
      const bool single = twig.size() == 1;
      if (single && t.weight(twig[0]) == -2 && report.multiplicities[twig[0]].is_one() && unit_twigs < 2) {
        ++unit_twigs;
        continue;
      }
      // the head is the twig vertex adjacent to the center
      for (std::size_t v : twig) {
        if (t.adjacent(v, center) && report.multiplicities[v] == BigNat(2)) ++heavy_heads;
      }
    }
    if (unit_twigs == 2 && heavy_heads == 1) report.shape = FiberShape::special_fork;
  }
  return report;
}

// ---- DOT ----

std::string dot_export(const WeightedTree& t, std::optional<std::size_t> c_vertex) {
  std::ostringstream out;
  out << "graph Q {\n  node [shape=circle];\n";
  for (std::size_t v = 0; v < t.size(); ++v) {
    out << "  v" << v << " [label=\"" << t.weight(v) << "\"";
    if (c_vertex && *c_vertex == v) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& [u, v] : t.edges()) out << "  v" << u << " -- v" << v << ";\n";
  if (c_vertex) {
    out << "  E [shape=box];\n";
    out << "  E -- v" << *c_vertex << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace cuspforge
