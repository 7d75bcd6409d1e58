#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "reserves/errors.hpp"
#include "reserves/io.hpp"
#include "reserves/types.hpp"

using namespace reserves;

TEST_CASE("applicant CSV parsing maps fields directly") {
  auto pool = parse_applicants("id,merit,category,traits\nw1c,86.5,SC,WOMEN\n");
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].id == "w1c");
  CHECK(pool[0].merit == 86.5);
  CHECK(*pool[0].category == "SC");
  CHECK(pool[0].traits == std::set<std::string>{"WOMEN"});
}

TEST_CASE("empty category and traits mean general with no traits") {
  auto pool = parse_applicants("id,merit,category,traits\nm1g,99.0,,\n");
  REQUIRE(pool.size() == 1);
  CHECK(!pool[0].category.has_value());
  CHECK(pool[0].traits.empty());
}

TEST_CASE("pipe-separated traits and CRLF line endings") {
  auto pool = parse_applicants("id,merit,category,traits\r\na,50,,WOMEN|PWD\r\n");
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].traits == std::set<std::string>{"WOMEN", "PWD"});
}

TEST_CASE("parse errors name the line") {
  CHECK_THROWS_WITH_AS(parse_applicants("id,merit,category,traits\na,xx,,\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_applicants("id,merit,category,traits\na,1,,\nb,1,,2,\n"),
                       doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse_applicants("id,merit,category,traits\na,50,,\nb,50,,\n"),
                       doctest::Contains("duplicate merit at line 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse_applicants("id,merit,category,traits\na,1,,\na,2,,\n"),
                       doctest::Contains("duplicate id"), ParseError);
}

TEST_CASE("id-lex tie-breaking keeps relative order and distinctness") {
  auto pool = parse_applicants("id,merit,category,traits\nb,50,,\na,50,,\nc,60,,\n",
                               TieBreak::kIdLex);
  REQUIRE(pool.size() == 3);
  double a = 0, b = 0, c = 0;
  for (const auto& i : pool) (i.id == "a" ? a : i.id == "b" ? b : c) = i.merit;
  CHECK(a > b);   // lexicographically first keeps the higher score
  CHECK(c > a);   // untied applicant unaffected in order
  CHECK(a != b);
}

TEST_CASE("quota JSON parsing derives open capacity") {
  auto q = parse_quotas(R"({"total": 3,
                            "categories": [{"name": "SC", "capacity": 1, "hr": {}}],
                            "open": {"hr": {"WOMEN": 1}},
                            "traits": ["WOMEN"]})");
  CHECK(q.open_capacity() == 2);
  CHECK(q.open_hr.at("WOMEN") == 1);
  CHECK(q.capacity("SC") == 1);
}

TEST_CASE("quota validation rejects over-committed capacities") {
  CHECK_THROWS_AS(parse_quotas(R"({"total": 1,
                                   "categories": [{"name": "SC", "capacity": 2, "hr": {}}],
                                   "open": {"hr": {}}, "traits": []})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_quotas(R"({"total": 2, "categories": [],
                                   "open": {"hr": {"t1": 3}}, "traits": ["t1"]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_quotas(R"({"total": 2, "categories": [],
                                   "open": {"hr": {"bogus": 1}}, "traits": ["t1"]})"),
                  ValidationError);
}

TEST_CASE("instance validation classifies overlap and checks references") {
  CHECK(!fixtures::example1().overlapping);
  CHECK(fixtures::order_dependence_a().overlapping);

  auto quotas = fixtures::example1().quotas;
  CHECK_THROWS_WITH_AS(
      validate_instance({fixtures::person("x", 10, "UNDECLARED")}, quotas),
      doctest::Contains("UNDECLARED"), ValidationError);
  CHECK_THROWS_WITH_AS(
      validate_instance({fixtures::person("x", 10, "", {"NOPE"})}, quotas),
      doctest::Contains("NOPE"), ValidationError);

  Instance empty = validate_instance({}, quotas);
  CHECK(empty.pool.empty());
}

TEST_CASE("zero open capacity is legal") {
  QuotaScheme q;
  q.total = 1;
  q.categories = {{"SC", 1, {}}};
  Instance inst = validate_instance({fixtures::person("g", 10)}, q);
  CHECK(inst.quotas.open_capacity() == 0);
}

TEST_CASE("parse-serialize-parse round-trips applicants and quotas") {
  auto inst = fixtures::example1();
  auto pool2 = parse_applicants(serialize_applicants(inst.pool));
  REQUIRE(pool2.size() == inst.pool.size());
  for (std::size_t i = 0; i < pool2.size(); ++i) {
    CHECK(pool2[i].id == inst.pool[i].id);
    CHECK(pool2[i].merit == inst.pool[i].merit);
    CHECK(pool2[i].category == inst.pool[i].category);
    CHECK(pool2[i].traits == inst.pool[i].traits);
  }
  auto q2 = parse_quotas(serialize_quotas(inst.quotas));
  CHECK(q2.total == inst.quotas.total);
  CHECK(q2.open_hr == inst.quotas.open_hr);
  CHECK(q2.trait_universe == inst.quotas.trait_universe);
}
