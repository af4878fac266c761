#include "cuspforge/families.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "cuspforge/error.hpp"
#include "text_util.hpp"

namespace cuspforge {

namespace {

using u64 = std::uint64_t;

HnSequence raw_seq(std::initializer_list<std::pair<BigNat, BigNat>> pairs) {
  std::vector<HnPair> v;
  for (const auto& [c, p] : pairs) v.push_back({c, p});
  return HnSequence(std::move(v), Flavor::raw);
}

void require(bool ok, const FamilySpec& spec, const char* inequality) {
  if (!ok) fail(ErrorCode::param_out_of_domain, spec.to_string() + " violates " + inequality);
}

struct RunBuilder {
  std::vector<MultRun> runs;
  RunBuilder& add(const BigNat& value, const BigNat& count = BigNat(1)) {
    if (!value.is_one() && !count.is_zero()) runs.push_back({value, count});
    return *this;
  }
  MultiplicitySequence done() { return MultiplicitySequence(std::move(runs), MultForm::reduced); }
};

// Degree as a function of the parameters, in u64 with saturation so the
// enumeration loops can compare against the bound without overflow.
u64 sat_mul(u64 a, u64 b) { return (a != 0 && b > UINT64_MAX / a) ? UINT64_MAX : a * b; }
u64 sat_add(u64 a, u64 b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

u64 degree_u64(const FamilySpec& spec) {
  const auto& q = spec.params;
  switch (spec.id) {
    case FamilyId::FZ1: return q[0];
    case FamilyId::A: return sat_add(sat_mul(sat_mul(q[0] + 1, q[1]), q[2]), 1);
    case FamilyId::B: return sat_mul(sat_mul(q[0] + 1, q[1]), q[2]) - q[0];
    case FamilyId::C: return sat_add(sat_mul(sat_add(sat_mul(q[0], q[2]), q[2] + 1), q[1]), 1);
    case FamilyId::D: return sat_mul(sat_add(sat_mul(q[0], q[2]), q[2] + 1), q[1]) - q[0];
    case FamilyId::E: return sat_add(sat_mul(8, q[0]), 6);
    case FamilyId::F: return sat_add(sat_mul(8, q[0]), 2);
    case FamilyId::G: return sat_mul(2, q[0]) - 1;
    case FamilyId::OR1:
    case FamilyId::OR2: {
      if (q[0] > 20) return UINT64_MAX;
      const u64 f = *fibonacci(4 * q[0] + 2).to_u64();
      return spec.id == FamilyId::OR1 ? f : 2 * f;
    }
  }
  return UINT64_MAX;
}

bool in_domain(const FamilySpec& spec) {
  try {
    check_domain(spec);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::string_view family_name(FamilyId id) noexcept {
  switch (id) {
    case FamilyId::FZ1: return "FZ1";
    case FamilyId::A: return "A";
    case FamilyId::B: return "B";
    case FamilyId::C: return "C";
    case FamilyId::D: return "D";
    case FamilyId::E: return "E";
    case FamilyId::F: return "F";
    case FamilyId::G: return "G";
    case FamilyId::OR1: return "OR1";
    case FamilyId::OR2: return "OR2";
  }
  return "?";
}

std::optional<FamilyId> family_from_name(std::string_view name) {
  for (FamilyId id : kAllFamilies) {
    if (family_name(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<std::string_view> param_names(FamilyId id) {
  switch (id) {
    case FamilyId::FZ1: return {"d", "k"};
    case FamilyId::A:
    case FamilyId::B:
    case FamilyId::C:
    case FamilyId::D: return {"gamma", "p", "s"};
    case FamilyId::G: return {"gamma"};
    default: return {"k"};
  }
}

FamilySpec FamilySpec::parse(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') fail(ErrorCode::parse, "family spec '" + s + "' is not NAME(params)");
  const auto id = family_from_name(s.substr(0, open));
  if (!id) fail(ErrorCode::parse, "unknown family '" + s.substr(0, open) + "'");
  FamilySpec spec{*id, {}};
  for (const auto& tok : detail::split_top_level(s.substr(open + 1, s.size() - open - 2))) {
    const auto v = BigNat::parse(tok).to_u64();
    if (!v) fail(ErrorCode::parse, "family parameter '" + tok + "' is too large");
    spec.params.push_back(*v);
  }
  if (spec.params.size() != param_names(*id).size()) {
    fail(ErrorCode::parse, "family " + std::string(family_name(*id)) + " takes " + std::to_string(param_names(*id).size()) +
                               " parameters");
  }
  return spec;
}

std::string FamilySpec::to_string() const {
  std::string out(family_name(id));
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(params[i]);
  }
  return out + ')';
}

void check_domain(const FamilySpec& spec) {
  if (spec.params.size() != param_names(spec.id).size()) {
    fail(ErrorCode::param_out_of_domain, spec.to_string() + " has the wrong number of parameters");
  }
  const auto& q = spec.params;
  switch (spec.id) {
    case FamilyId::FZ1: {
      const u64 d = q[0], k = q[1];
      require(d >= 4, spec, "d/2 - 1 >= 1");
      require(d - 3 >= k, spec, "d - 3 >= k");
      // k >= d/2 - 1 for integer k
      require(2 * k + 2 >= d, spec, "k >= d/2 - 1");
      break;
    }
    case FamilyId::A:
      require(q[1] >= 2, spec, "p >= 2");
      require(q[0] >= 1 && q[2] >= 1, spec, "gamma, s >= 1");
      require(!(q[0] == 1 && q[1] == 2), spec, "(gamma, p) != (1, 2)");
      break;
    case FamilyId::B:
      require(q[1] >= 2 && q[2] >= 2, spec, "p, s >= 2");
      require(q[0] >= 1, spec, "gamma >= 1");
      require(!(q[0] == 1 && q[1] == 2), spec, "(gamma, p) != (1, 2)");
      break;
    case FamilyId::C:
    case FamilyId::D:
      require(q[1] >= 2, spec, "p >= 2");
      require(q[0] >= 1 && q[2] >= 1, spec, "gamma, s >= 1");
      break;
    case FamilyId::G: require(q[0] >= 3, spec, "gamma >= 3"); break;
    default: require(q[0] >= 1, spec, "k >= 1"); break;
  }
}

CurveRecord CurveRecord::from_raw(BigNat degree, BigNat gamma, const std::vector<HnSequence>& raw) {
  CurveRecord r;
  r.degree = std::move(degree);
  r.gamma = std::move(gamma);
  for (const auto& s : raw) {
    const HnSequence as_raw(s.pairs(), Flavor::raw);
    r.cusps.push_back({as_raw, standardize(as_raw)});
  }
  return r;
}

BigNat family_degree(const FamilySpec& spec) {
  check_domain(spec);
  const auto& q = spec.params;
  const BigNat x = q[0];
  switch (spec.id) {
    case FamilyId::FZ1: return x;
    case FamilyId::A: return (x + 1) * q[1] * q[2] + 1;
    case FamilyId::B: return (x + 1) * q[1] * q[2] - x;
    case FamilyId::C: return (x * q[2] + q[2] + 1) * q[1] + 1;
    case FamilyId::D: return (x * q[2] + q[2] + 1) * q[1] - x;
    case FamilyId::E: return BigNat(8) * x + 6;
    case FamilyId::F: return BigNat(8) * x + 2;
    case FamilyId::G: return BigNat(2) * x - 1;
    case FamilyId::OR1: return fibonacci(4 * q[0] + 2);
    case FamilyId::OR2: return BigNat(2) * fibonacci(4 * q[0] + 2);
  }
  fail(ErrorCode::internal, "unknown family");
}

BigNat family_gamma(const FamilySpec& spec) {
  check_domain(spec);
  switch (spec.id) {
    case FamilyId::FZ1: return BigNat(spec.params[0]) - 2;
    case FamilyId::A:
    case FamilyId::B:
    case FamilyId::C:
    case FamilyId::D:
    case FamilyId::G: return spec.params[0];
    default: return 2;
  }
}

std::vector<HnSequence> family_raw_cusps(const FamilySpec& spec) {
  check_domain(spec);
  const auto& q = spec.params;
  const BigNat one = 1;
  switch (spec.id) {
    case FamilyId::FZ1: {
      const BigNat d = q[0], k = q[1];
      return {raw_seq({{BigNat(2) * k + 1, 2}}), raw_seq({{d - 1, d - 2}}), raw_seq({{BigNat(2) * (d - 2 - k) + 1, 2}})};
    }
    case FamilyId::A: {
      const BigNat g = q[0], p = q[1], ps = BigNat(q[1]) * q[2];
      return {raw_seq({{ps * (g + 1), ps * g}, {ps, p}, {p, one}}),
              raw_seq({{g * (ps + 1) + p * (BigNat(q[2]) - 1) + 1, ps + 1}})};
    }
    case FamilyId::B: {
      const BigNat g = q[0], p = q[1], s = q[2], m = p * s - 1;
      return {raw_seq({{m * (g + 1), m * g}, {m, p}}), raw_seq({{p * (g * s + s - 1), p * s}, {p, one}})};
    }
    case FamilyId::C: {
      const BigNat g = q[0], p = q[1], s = q[2], ps = p * s;
      return {raw_seq({{p * (g * s + s + 1), p * (g * s + 1)}, {p, one}}), raw_seq({{(g + 1) * (ps + 1) + p, ps + 1}})};
    }
    case FamilyId::D: {
      const BigNat g = q[0], p = q[1], s = q[2], m = p * s - 1;
      return {raw_seq({{(g + 1) * m + p, g * m + p}}), raw_seq({{p * (g * s + s + 1), p * s}, {p, one}})};
    }
    case FamilyId::E: {
      const BigNat k = q[0];
      return {raw_seq({{BigNat(8) * k + 8, BigNat(4) * k + 2}, {2, one}}),
              raw_seq({{BigNat(8) * k + 4, BigNat(4) * k + 4}, {4, one}})};
    }
    case FamilyId::F: {
      const BigNat k = q[0];
      return {raw_seq({{BigNat(8) * k, BigNat(4) * k + 2}, {2, one}}), raw_seq({{BigNat(8) * k + 4, BigNat(4) * k}, {4, one}})};
    }
    case FamilyId::G: {
      const BigNat g = q[0];
      return {raw_seq({{BigNat(4) * g - 3, g - 1}}), raw_seq({{BigNat(2) * g - 1, 2}})};
    }
    case FamilyId::OR1:
    case FamilyId::OR2: {
      const BigNat f = spec.id == FamilyId::OR1 ? 1 : 2;
      return {raw_seq({{f * fibonacci(4 * q[0] + 4), f * fibonacci(4 * q[0])}, {f * 3, one}})};
    }
  }
  fail(ErrorCode::internal, "unknown family");
}

CurveRecord generate(const FamilySpec& spec) {
  CurveRecord r = CurveRecord::from_raw(family_degree(spec), family_gamma(spec), family_raw_cusps(spec));
  r.family = spec;
  return r;
}

std::vector<MultiplicitySequence> table_multiplicities(const FamilySpec& spec) {
  check_domain(spec);
  const auto& q = spec.params;
  switch (spec.id) {
    case FamilyId::FZ1: {
      const BigNat d = q[0], k = q[1];
      return {RunBuilder().add(2, k).done(), RunBuilder().add(d - 2).done(), RunBuilder().add(2, d - 2 - k).done()};
    }
    case FamilyId::A: {
      const BigNat g = q[0], p = q[1], s = q[2], ps = p * s;
      return {RunBuilder().add(g * ps).add(ps, g).add(p, s).done(),
              RunBuilder().add(ps + 1, g).add(p * (s - 1) + 1).add(p, s - 1).done()};
    }
    case FamilyId::B: {
      const BigNat g = q[0], p = q[1], s = q[2], ps = p * s;
      return {RunBuilder().add(g * ps - g).add(ps - 1, g).add(p, s - 1).add(p - 1).done(),
              RunBuilder().add(ps, g).add(p * (s - 1)).add(p, s - 1).done()};
    }
    case FamilyId::C: {
      const BigNat g = q[0], p = q[1], s = q[2], ps = p * s;
      return {RunBuilder().add(g * ps + p).add(ps, g).add(p, s).done(), RunBuilder().add(ps + 1, g + 1).add(p, s).done()};
    }
    case FamilyId::D: {
      const BigNat g = q[0], p = q[1], s = q[2], m = p * s - 1;
      return {RunBuilder().add(g * m + p).add(m, g).add(p, s - 1).add(p - 1).done(),
              RunBuilder().add(p * s, g + 1).add(p, s).done()};
    }
    case FamilyId::E: {
      const BigNat k = q[0];
      return {RunBuilder().add(BigNat(4) * k + 2, 2).add(4, k).add(2, 2).done(),
              RunBuilder().add(BigNat(4) * k + 4).add(BigNat(4) * k).add(4, k).done()};
    }
    case FamilyId::F: {
      const BigNat k = q[0];
      return {RunBuilder().add(BigNat(4) * k + 2).add(BigNat(4) * k - 2).add(4, k - 1).add(2, 2).done(),
              RunBuilder().add(BigNat(4) * k, 2).add(4, k).done()};
    }
    case FamilyId::G: {
      const BigNat g = q[0];
      return {RunBuilder().add(g - 1, 4).done(), RunBuilder().add(2, g - 1).done()};
    }
    case FamilyId::OR1:
    case FamilyId::OR2: {
      const BigNat f = spec.id == FamilyId::OR1 ? 1 : 2;
      RunBuilder b;
      b.add(f * fibonacci(4 * q[0]));
      for (u64 l = q[0]; l >= 1; --l) b.add(f * fibonacci(4 * l), 5).add(f * (fibonacci(4 * l) - fibonacci(4 * l - 4)));
      return {b.done()};
    }
  }
  fail(ErrorCode::internal, "unknown family");
}

std::vector<FamilySpec> enumerate_specs(u64 max_degree) {
  std::vector<FamilySpec> out;
  auto push = [&](FamilySpec s) {
    if (out.size() >= kMaxEnumerated) {
      fail(ErrorCode::too_large, "more than " + std::to_string(kMaxEnumerated) + " instances up to degree " +
                                     std::to_string(max_degree));
    }
    out.push_back(std::move(s));
  };
  auto fits = [&](const FamilySpec& s) { return degree_u64(s) <= max_degree; };
  for (FamilyId id : kAllFamilies) {
    switch (id) {
      case FamilyId::FZ1:
        for (u64 d = 4; d <= max_degree; ++d) {
          for (u64 k = (d + 1) / 2 - 1; k + 3 <= d; ++k) push({id, {d, k}});
        }
        break;
      case FamilyId::A:
      case FamilyId::B:
      case FamilyId::C:
      case FamilyId::D: {
        // every degree formula increases in each parameter; loops stop at the
        // first value exceeding the bound with the others at their minimum
        const u64 s_min = id == FamilyId::B ? 2 : 1;
        for (u64 g = 1; fits({id, {g, 2, s_min}}); ++g) {
          for (u64 p = 2; fits({id, {g, p, s_min}}); ++p) {
            for (u64 s = s_min; fits({id, {g, p, s}}); ++s) {
              FamilySpec spec{id, {g, p, s}};
              if (in_domain(spec)) push(spec);
            }
          }
        }
        break;
      }
      case FamilyId::G:
        for (u64 g = 3; fits({id, {g}}); ++g) push({id, {g}});
        break;
      default:
        for (u64 k = 1; fits({id, {k}}); ++k) push({id, {k}});
        break;
    }
  }
  return out;
}

std::vector<CurveRecord> enumerate(u64 max_degree, unsigned threads) {
  const std::vector<FamilySpec> specs = enumerate_specs(max_degree);
  std::vector<CurveRecord> out(specs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(specs.size() / 64 + 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) out[i] = generate(specs[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        // strided blocks keep the per-family cost spread across workers
        for (std::size_t i = w; i < specs.size(); i += workers) out[i] = generate(specs[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

DistinctnessReport distinctness_audit(const std::vector<CurveRecord>& records) {
  DistinctnessReport rep;
  rep.records = records.size();
  std::map<std::vector<std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::vector<std::string> key;
    for (const auto& c : records[i].cusps) key.push_back(c.standard.to_string());
    std::sort(key.begin(), key.end());
    auto [it, fresh] = seen.emplace(std::move(key), i);
    if (!fresh) rep.collisions.push_back({it->second, i});
  }
  return rep;
}

std::optional<std::pair<BigNat, BigNat>> degree_gamma_from_cusps(const std::vector<HnSequence>& cusps) {
  BigInt sum_m = 0;
  BigInt sum_i = 0;
  for (const auto& s : cusps) {
    const MIPair mi = compute_M_I(s);
    sum_m += mi.M.value();
    sum_i += mi.I.value();
  }
  // d^2 - 3d + (sum M + 2 - sum I) = 0
  const BigInt disc = 9 - 4 * (sum_m + 2 - sum_i);
  if (sgn(disc) < 0) return std::nullopt;
  const BigInt root = sqrt(disc);
  if (root * root != disc) return std::nullopt;
  const BigInt twice = 3 + root;
  if (twice % 2 != 0) return std::nullopt;
  const BigInt d = twice / 2;
  const BigInt gamma = sum_m + 2 - 3 * d;
  if (sgn(d) <= 0 || sgn(gamma) < 0) return std::nullopt;
  return std::make_pair(BigNat(d), BigNat(gamma));
}

}  // namespace cuspforge
