#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "cuspforge/cuspforge.h"
#include "doctest.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  cf_string_free(s);
  return out;
}

std::string convert(cf_repr from, cf_repr to, const char* text) {
  cf_cusp* c = nullptr;
  REQUIRE(cf_cusp_parse(from, text, &c) == CF_OK);
  char* out = nullptr;
  REQUIRE(cf_cusp_format(c, to, &out) == CF_OK);
  cf_cusp_free(c);
  return take(out);
}

}  // namespace

TEST_CASE("conversions through the C API") {
  CHECK(convert(CF_REPR_MULT, CF_REPR_HN, "4,2,2,2") == "6/4,2/3");
  CHECK(convert(CF_REPR_HN, CF_REPR_MULT, "6/4,2/3") == "(4,(2)_3)");
  CHECK(convert(CF_REPR_HN, CF_REPR_CHAR, "6/4,2/3") == "(4;6,9)");
  CHECK(convert(CF_REPR_HN, CF_REPR_PUISEUX, "6/4,2/3") == "(3,2),(9,2)");
  CHECK(convert(CF_REPR_HN, CF_REPR_ZARISKI, "7/3") == "(3,7)");
  CHECK(convert(CF_REPR_HN, CF_REPR_SEMIGROUP, "6/4,2/3") == "<4,6,15>");
  CHECK(convert(CF_REPR_HN, CF_REPR_HN, "6/4,2/2,2/1") == "6/4,2/3");
  const cf_repr reprs[] = {CF_REPR_HN, CF_REPR_MULT, CF_REPR_CHAR, CF_REPR_ZARISKI};
  for (const char* hn : {"6/4,2/3", "7/3", "13/4", "22/3", "15/6,3/1", "144/21,3/1"}) {
    for (cf_repr a : reprs) {
      const std::string x = convert(CF_REPR_HN, a, hn);
      for (cf_repr b : reprs) {
        const std::string y = convert(a, b, x.c_str());
        CHECK(convert(b, a, y.c_str()) == x);
      }
    }
  }
}

TEST_CASE("errors carry status and message") {
  cf_cusp* c = nullptr;
  CHECK(cf_cusp_parse(CF_REPR_HN, "6/4,2/x", &c) == CF_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(std::string(cf_last_error()).find("2/x") != std::string::npos);
  CHECK(cf_cusp_parse(CF_REPR_HN, nullptr, &c) == CF_ERR_NULL_ARGUMENT);
  CHECK(cf_cusp_parse(CF_REPR_SEMIGROUP, "<3,7>", &c) == CF_ERR_INVALID_ARGUMENT);
  cf_curve* k = nullptr;
  CHECK(cf_curve_from_family("FZ1(7,2)", &k) == CF_ERR_PARAM_OUT_OF_DOMAIN);
  CHECK(cf_curve_from_family("Q(1)", &k) == CF_ERR_PARSE);
  CHECK(std::string(cf_status_name(CF_ERR_NOT_COPRIME)) == "NotCoprime");
  REQUIRE(cf_cusp_parse(CF_REPR_HN, "7/3", &c) == CF_OK);
  CHECK(std::strlen(cf_last_error()) == 0);
  cf_cusp_free(c);
}

TEST_CASE("last error is per thread") {
  cf_cusp* c = nullptr;
  CHECK(cf_cusp_parse(CF_REPR_HN, "bad", &c) != CF_OK);
  std::thread([] { CHECK(std::strlen(cf_last_error()) == 0); }).join();
  CHECK(std::strlen(cf_last_error()) > 0);
}

TEST_CASE("curves, audits and kkd") {
  cf_curve* c = nullptr;
  REQUIRE(cf_curve_from_family("A(2,2,1)", &c) == CF_OK);
  int pass = -1;
  char* out = nullptr;
  REQUIRE(cf_curve_audit(c, CF_FORMAT_JSON, &pass, &out) == CF_OK);
  CHECK(pass == 1);
  CHECK(take(out).rfind("{\"checks\":[", 0) == 0);
  REQUIRE(cf_curve_kkd(c, &out) == CF_OK);
  CHECK(take(out) == "0");
  REQUIRE(cf_curve_format(c, CF_FORMAT_JSON, &out) == CF_OK);
  const std::string json = take(out);
  cf_curve_free(c);

  REQUIRE(cf_curve_from_json(json.c_str(), &c) == CF_OK);
  REQUIRE(cf_curve_format(c, CF_FORMAT_JSON, &out) == CF_OK);
  CHECK(take(out) == json);
  cf_curve_free(c);

  const char* cusps[] = {"6/4,2/3", "7/3"};
  REQUIRE(cf_curve_new("8", "2", cusps, 2, &c) == CF_OK);
  REQUIRE(cf_curve_audit(c, CF_FORMAT_TEXT, &pass, nullptr) == CF_OK);
  CHECK(pass == 0);
  cf_curve_free(c);
  CHECK(cf_curve_new("7", "2", cusps, 0, &c) == CF_ERR_INVALID_ARGUMENT);
  CHECK(cf_curve_new("seven", "2", cusps, 2, &c) == CF_ERR_PARSE);
}

TEST_CASE("enumeration handles") {
  cf_curve_list* l = nullptr;
  REQUIRE(cf_enumerate(30, 3, &l) == CF_OK);
  const std::size_t n = cf_curve_list_size(l);
  CHECK(n > 0);
  CHECK(cf_curve_list_get(l, n) == nullptr);
  size_t collisions = 99;
  char* out = nullptr;
  REQUIRE(cf_curve_list_distinctness(l, &collisions, &out) == CF_OK);
  CHECK(collisions == 0);
  CHECK(take(out).empty());
  REQUIRE(cf_curve_list_format(l, CF_FORMAT_TEXT, &out) == CF_OK);
  const std::string text = take(out);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == n);
  cf_curve_list* one = nullptr;
  REQUIRE(cf_enumerate(30, 0, &one) == CF_OK);
  REQUIRE(cf_curve_list_format(one, CF_FORMAT_TEXT, &out) == CF_OK);
  CHECK(take(out) == text);
  cf_curve_list_free(one);
  cf_curve_list_free(l);
}

TEST_CASE("ledgers and resolutions") {
  const long s3[] = {2, 1, 1}, c3[] = {0, 0, 0};
  int pass = -1;
  char* out = nullptr;
  REQUIRE(cf_ledger_audit(3, 0, s3, 3, c3, 3, CF_LEDGER_CSTST, CF_FORMAT_TEXT, &pass, &out) == CF_OK);
  CHECK(pass == 1);
  CHECK(take(out).find("euler_identity") != std::string::npos);
  const long s1[] = {1, 3};
  REQUIRE(cf_ledger_audit(2, 1, s1, 2, nullptr, 0, CF_LEDGER_GENERIC, CF_FORMAT_JSON, &pass, nullptr) == CF_OK);
  CHECK(pass == 0);

  cf_cusp* c = nullptr;
  REQUIRE(cf_cusp_parse(CF_REPR_HN, "13/4", &c) == CF_OK);
  REQUIRE(cf_cusp_resolution(c, CF_FORMAT_DOT, &out) == CF_OK);
  CHECK(take(out).rfind("graph Q {", 0) == 0);
  REQUIRE(cf_cusp_resolution(c, CF_FORMAT_TEXT, &out) == CF_OK);
  CHECK(take(out).find("[2,2,2,1,5,2,2]") != std::string::npos);
  CHECK(cf_cusp_invariants(c, CF_FORMAT_DOT, &out) == CF_ERR_INVALID_ARGUMENT);
  cf_cusp_free(c);
}
