#include <set>

#include "cuspforge/error.hpp"
#include "cuspforge/families.hpp"
#include "doctest.h"
#include "family_table.hpp"

using namespace cuspforge;

namespace {

std::vector<std::string> standard_strings(const CurveRecord& r) {
  std::vector<std::string> out;
  for (const auto& c : r.cusps) out.push_back(c.standard.to_string());
  return out;
}

std::vector<family_table::u64> reduced_entries(const HnSequence& s) {
  std::vector<family_table::u64> out;
  for (const auto& m : hn_to_multiplicity(s, MultForm::reduced).entries()) out.push_back(*m.to_u64());
  return out;
}

}  // namespace

TEST_CASE("family spec parsing and domains") {
  CHECK(FamilySpec::parse("A(2,2,1)") == FamilySpec{FamilyId::A, {2, 2, 1}});
  CHECK(FamilySpec::parse(" OR1 ( 2 ) ").to_string() == "OR1(2)");
  CHECK_THROWS_AS(FamilySpec::parse("A(2,2)"), Error);
  CHECK_THROWS_AS(FamilySpec::parse("Z(1)"), Error);
  CHECK_THROWS_AS(FamilySpec::parse("G3"), Error);
  auto domain_error = [](const char* text) {
    try {
      check_domain(FamilySpec::parse(text));
    } catch (const Error& e) {
      return e.code() == ErrorCode::param_out_of_domain ? std::string(e.what()) : std::string("wrong code");
    }
    return std::string();
  };
  CHECK(domain_error("A(1,2,3)").find("(gamma, p) != (1, 2)") != std::string::npos);
  CHECK(domain_error("B(2,3,1)").find("p, s >= 2") != std::string::npos);
  CHECK(domain_error("G(2)").find("gamma >= 3") != std::string::npos);
  CHECK(domain_error("FZ1(6,1)").find("k >= d/2 - 1") != std::string::npos);
  CHECK(domain_error("FZ1(6,4)").find("d - 3 >= k") != std::string::npos);
  CHECK(domain_error("FZ1(5,2)").empty());
  CHECK(domain_error("FZ1(7,2)").find("k >= d/2 - 1") != std::string::npos);
  CHECK(domain_error("FZ1(7,3)").empty());
  CHECK(domain_error("E(0)").find("k >= 1") != std::string::npos);
  CHECK_THROWS_AS(generate(FamilySpec{FamilyId::C, {1, 1, 1}}), Error);
}

TEST_CASE("generate examples") {
  const auto a = generate(FamilySpec::parse("A(2,2,1)"));
  REQUIRE(a.cusps.size() == 2);
  CHECK(a.cusps[0].raw.to_string() == "6/4,2/2,2/1");
  CHECK(a.cusps[0].standard.to_string() == "6/4,2/3");
  CHECK(a.cusps[1].raw.to_string() == "7/3");
  CHECK(a.degree == BigNat(7));
  CHECK(a.gamma == BigNat(2));

  const auto g = generate(FamilySpec::parse("G(3)"));
  CHECK(standard_strings(g) == std::vector<std::string>{"9/2", "5/2"});
  CHECK(g.degree == BigNat(5));
  CHECK(g.gamma == BigNat(3));

  const auto or1 = generate(FamilySpec::parse("OR1(2)"));
  REQUIRE(or1.cusps.size() == 1);
  CHECK(or1.cusps[0].raw.to_string() == "144/21,3/1");
  CHECK(or1.degree == BigNat(55));

  const auto fz = generate(FamilySpec::parse("FZ1(5,2)"));
  CHECK(standard_strings(fz) == std::vector<std::string>{"5/2", "4/3", "3/2"});
  CHECK(fz.gamma == BigNat(3));
}

TEST_CASE("special standard forms") {
  CHECK(generate(FamilySpec::parse("OR1(1)")).cusps[0].standard.to_string() == "22/3");
  CHECK(generate(FamilySpec::parse("OR2(1)")).cusps[0].standard.to_string() == "43/6");
  CHECK(generate(FamilySpec::parse("F(1)")).cusps[1].standard.to_string() == "13/4");
  CHECK(generate(FamilySpec::parse("A(3,2,1)")).cusps[0].standard.to_string() == "8/6,2/3");
  CHECK(generate(FamilySpec::parse("D(2,3,1)")).cusps[1].standard.to_string() == "13/3");
  CHECK(generate(FamilySpec::parse("A(1,3,2)")).cusps[0].standard.to_string() == "15/6,3/1");
  CHECK(generate(FamilySpec::parse("A(1,3,1)")).cusps[0].standard.to_string() == "10/3");
  CHECK(generate(FamilySpec::parse("B(1,3,2)")).cusps[0].standard.to_string() == "13/5");
}

TEST_CASE("every instance up to degree 100 matches the table") {
  const auto specs = enumerate_specs(100);
  for (const auto& spec : specs) {
    const std::string name(family_name(spec.id));
    const auto row = family_table::row(name, spec.params);
    const auto rec = generate(spec);
    INFO(spec.to_string());
    CHECK(*rec.degree.to_u64() == row.degree);
    CHECK(*rec.gamma.to_u64() == row.minus_e2);
    REQUIRE(rec.cusps.size() == row.mult.size());
    const auto lib = table_multiplicities(spec);
    for (std::size_t i = 0; i < rec.cusps.size(); ++i) {
      CHECK(reduced_entries(rec.cusps[i].standard) == row.mult[i]);
      CHECK(reduced_entries(rec.cusps[i].raw) == row.mult[i]);
      std::vector<family_table::u64> from_lib;
      for (const auto& m : lib[i].entries()) from_lib.push_back(*m.to_u64());
      CHECK(from_lib == row.mult[i]);
      const auto special = family_table::special_standard(name, spec.params, i);
      if (special) {
        CHECK(rec.cusps[i].standard.to_string() == *special);
        CHECK(rec.cusps[i].raw != rec.cusps[i].standard);
      } else {
        CHECK(rec.cusps[i].raw == rec.cusps[i].standard);
      }
    }
    std::vector<HnSequence> std_cusps;
    for (const auto& c : rec.cusps) std_cusps.push_back(c.standard);
    const auto dg = degree_gamma_from_cusps(std_cusps);
    REQUIRE(dg);
    CHECK(dg->first == rec.degree);
    CHECK(dg->second == rec.gamma);
  }
}

TEST_CASE("enumeration agrees with a brute-force sweep") {
  const family_table::u64 n = 60;
  const auto brute = family_table::sweep(n);
  const auto specs = enumerate_specs(n);
  std::set<std::string> got;
  for (const auto& s : specs) got.insert(s.to_string());
  CHECK(got.size() == specs.size());
  CHECK(got == brute);
  CHECK(std::is_sorted(specs.begin(), specs.end()));
  CHECK(enumerate_specs(2).empty());
  const auto five = enumerate_specs(5);
  std::set<std::string> five_names;
  for (const auto& s : five) five_names.insert(s.to_string());
  CHECK(five_names.count("FZ1(4,1)"));
  CHECK(five_names.count("FZ1(5,2)"));
  CHECK(five_names.count("G(3)"));
  for (const auto& s : five) CHECK(family_degree(s) <= BigNat(5));
  bool has_or1 = false;
  for (const auto& s : enumerate_specs(8)) has_or1 |= s.to_string() == "OR1(1)";
  CHECK(has_or1);
}

TEST_CASE("parallel enumeration is deterministic") {
  const auto one = enumerate(80, 1);
  const auto many = enumerate(80, 6);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].family == many[i].family);
    CHECK(standard_strings(one[i]) == standard_strings(many[i]));
  }
}

TEST_CASE("distinctness") {
  const auto recs = enumerate(100, 4);
  const auto rep = distinctness_audit(recs);
  CHECK(rep.records == recs.size());
  CHECK(rep.ok());
  const auto twice = distinctness_audit({generate(FamilySpec::parse("A(2,2,1)")), generate(FamilySpec::parse("A(2,2,1)"))});
  REQUIRE(twice.collisions.size() == 1);
  CHECK(twice.collisions[0].first == 0);
  CHECK(twice.collisions[0].second == 1);
}

TEST_CASE("degree and gamma from cusps") {
  const auto dg = degree_gamma_from_cusps({HnSequence::parse("6/4,2/3"), HnSequence::parse("7/3")});
  REQUIRE(dg);
  CHECK(dg->first == BigNat(7));
  CHECK(dg->second == BigNat(2));
  CHECK_FALSE(degree_gamma_from_cusps({HnSequence::parse("3/2")}));
}
