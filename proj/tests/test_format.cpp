#include "cuspforge/error.hpp"
#include "cuspforge/format.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cuspforge;
using nlohmann::json;

TEST_CASE("cusp record JSON") {
  const auto j = json::parse(cusp_record_json(make_cusp_record(HnSequence::parse("6/4,2/3"))));
  CHECK(j["hn"] == json::parse(R"([["6","4"],["2","3"]])"));
  CHECK(j["mult_reduced"] == json::parse(R"(["4","2","2","2"])"));
  CHECK(j["puiseux_char"] == json::parse(R"(["4","6","9"])"));
  CHECK(j["zariski_pairs"] == json::parse(R"([["2","3"],["2","3"]])"));
  CHECK(j["semigroup_generators"] == json::parse(R"(["4","6","15"])"));
  CHECK(j["gaps"].size() == 9);
  CHECK(j["M"] == "12");
  CHECK(j["I"] == "30");
}

TEST_CASE("curve record JSON round trip") {
  for (const char* spec : {"A(2,2,1)", "G(3)", "OR2(1)", "FZ1(9,4)", "E(2)"}) {
    const CurveRecord rec = generate(FamilySpec::parse(spec));
    const std::string text = curve_record_json(rec);
    const CurveRecord back = curve_record_from_json(text);
    CHECK(back.family == rec.family);
    CHECK(back.degree == rec.degree);
    CHECK(back.gamma == rec.gamma);
    REQUIRE(back.cusps.size() == rec.cusps.size());
    for (std::size_t i = 0; i < rec.cusps.size(); ++i) {
      CHECK(back.cusps[i].raw == rec.cusps[i].raw);
      CHECK(back.cusps[i].standard == rec.cusps[i].standard);
    }
    CHECK(curve_record_json(back) == text);
  }
}

TEST_CASE("curve record JSON rejects bad input") {
  auto code_of = [](const char* text) {
    try {
      curve_record_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  CHECK(code_of("{") == ErrorCode::parse);
  CHECK(code_of(R"({"degree":"7","gamma":"2"})") == ErrorCode::parse);
  CHECK(code_of(R"({"degree":7,"gamma":"2","cusps":[[["7","3"]]]})") == ErrorCode::parse);
  CHECK(code_of(R"({"degree":"7","gamma":"2","cusps":[{"raw":[["7","3"]],"standard":[["7","2"]]}]})") ==
        ErrorCode::inconsistent);
  // bare raw arrays are accepted
  const auto rec = curve_record_from_json(R"({"degree":"7","gamma":"2","cusps":[[["6","4"],["2","2"],["2","1"]]]})");
  CHECK(rec.cusps[0].standard.to_string() == "6/4,2/3");
  CHECK_FALSE(rec.family);
}

TEST_CASE("audit and resolution JSON") {
  const auto a = json::parse(audit_report_json(fibration_ledger({2, 1, {1, 2}, std::nullopt}, LedgerMode::generic)));
  REQUIRE(a["checks"].is_array());
  for (const auto& c : a["checks"]) {
    CHECK(c["lhs"].is_string());
    CHECK(c["pass"].is_boolean());
  }
  const auto r = json::parse(resolution_json(resolution_graph(HnSequence::parse("13/4"))));
  CHECK(r["weights"].size() == 7);
  CHECK(r["chain"] == "[2,2,2,1,5,2,2]");
  CHECK(semigroup_text(semigroup_of(PuiseuxCharacteristic::parse("3;7"))) == "<3,7>");
}

TEST_CASE("text renderers") {
  const std::string t = cusp_record_text(make_cusp_record(HnSequence::parse("7/3")));
  CHECK(t.find("semigroup      <3,7>") != std::string::npos);
  const std::string c = curve_record_text(generate(FamilySpec::parse("A(2,2,1)")));
  CHECK(c.find("6/4,2/3  (raw 6/4,2/2,2/1)") != std::string::npos);
  CHECK(audit_report_text(AuditReport{}).find("result  pass") != std::string::npos);
}
