#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "reserves/axioms.hpp"
#include "reserves/errors.hpp"
#include "reserves/generator.hpp"
#include "reserves/rules.hpp"

using namespace reserves;

TEST_CASE("SCI-AKG produces justified envy on the distilled flaw case") {
  auto inst = fixtures::example1();
  auto alloc = sci_akg(inst);
  auto v = check_no_justified_envy(alloc, inst.pool, inst.quotas);
  REQUIRE(v.size() == 1);
  CHECK(v[0].category == kOpenCategory);
  CHECK(v[0].individual == "w1g");  // selected at merit 75
  CHECK(v[0].rival == "w1c");       // rejected at merit 80, same trait
}

TEST_CASE("SCI-AKG rewards withholding the category declaration") {
  auto inst = fixtures::example1();
  auto v = check_incentive_compatibility(RuleKind::kSciAkg, inst.pool, inst.quotas);
  REQUIRE(!v.empty());
  bool found = false;
  for (const auto& viol : v)
    if (viol.individual == "w1c" && viol.withholding && viol.withholding->drop_category &&
        viol.withholding->dropped_traits.empty())
      found = true;
  CHECK(found);
}

TEST_CASE("2SMG and 2SMH pass all five audits on the flaw case") {
  auto inst = fixtures::example1();
  for (auto rule : {RuleKind::kTwoStepMinimumGuarantee, RuleKind::kTwoStepMeritoriousHorizontal}) {
    auto report = full_audit(rule, inst);
    CHECK(report.all_pass());
    CHECK(report.scope == "single");
    CHECK(report.axioms.size() == 5);
  }
}

TEST_CASE("all-subsets audit passes 2SMH and fails SCI-AKG on the flaw case") {
  auto inst = fixtures::example1();
  AuditOptions opts;
  opts.scope = AuditScope::kAllSubsets;

  auto good = full_audit(RuleKind::kTwoStepMeritoriousHorizontal, inst, opts);
  CHECK(good.all_pass());
  CHECK(good.scope == "all-subsets");
  // 2^5 subsets for each allocation axiom.
  CHECK(good.axioms.at("NJE").checked == 32);

  auto bad = full_audit(RuleKind::kSciAkg, inst, opts);
  CHECK(!bad.all_pass());
  CHECK(!bad.axioms.at("NJE").pass);
  CHECK(!bad.axioms.at("IC").pass);
}

TEST_CASE("all-subsets audit refuses oversized pools") {
  auto inst = fixtures::example1();
  AuditOptions opts;
  opts.scope = AuditScope::kAllSubsets;
  opts.max_pool_for_subsets = 4;  // pool has 5
  CHECK_THROWS_AS(full_audit(RuleKind::kTwoStepMeritoriousHorizontal, inst, opts),
                  ValidationError);
}

TEST_CASE("non-wastefulness flags an idle seat with an eligible reject") {
  auto inst = fixtures::example1();
  Allocation alloc;
  alloc.rule = "2smh";
  alloc.categories[kOpenCategory].chosen = {"m1g"};  // one open seat idle
  alloc.categories["SC"].chosen = {"m1c"};
  alloc.unassigned = {"m2g", "w1c", "w1g"};
  auto v = check_non_wasteful(alloc, inst.pool, inst.quotas);
  CHECK(!v.empty());
  CHECK(v[0].category == kOpenCategory);
}

TEST_CASE("maximal HR flags a reject whose admission raises utilization") {
  auto inst = fixtures::example1();
  Allocation alloc;
  alloc.rule = "2smh";
  alloc.categories[kOpenCategory].chosen = {"m1g", "m2g"};  // no woman selected
  alloc.categories["SC"].chosen = {"m1c"};
  alloc.unassigned = {"w1c", "w1g"};
  auto v = check_maximal_hr(alloc, inst.pool, inst.quotas);
  REQUIRE(!v.empty());
  CHECK(v[0].category == kOpenCategory);
}

TEST_CASE("justified envy is detected inside a reserve category") {
  auto inst = fixtures::example1();
  Allocation alloc;
  alloc.rule = "2smg";
  alloc.categories[kOpenCategory].chosen = {"m1g", "w1g"};
  alloc.categories["SC"].chosen = {"w1c"};  // m1c outscores w1c within SC
  alloc.unassigned = {"m2g", "m1c"};
  auto v = check_no_justified_envy(alloc, inst.pool, inst.quotas);
  bool found = false;
  for (const auto& viol : v)
    if (viol.category == "SC" && viol.individual == "w1c" && viol.rival == "m1c") found = true;
  CHECK(found);
}

TEST_CASE("VR compliance flags each of its three conditions") {
  auto inst = fixtures::example1();

  // Condition 1: SC seat used while an open seat sits empty.
  Allocation under;
  under.categories[kOpenCategory].chosen = {"m1g"};
  under.categories["SC"].chosen = {"m1c"};
  under.unassigned = {"m2g", "w1c", "w1g"};
  auto v1 = check_vr_compliance(under, inst.pool, inst.quotas);
  REQUIRE(!v1.empty());
  CHECK(v1[0].vrc_condition == 1);
  CHECK(v1[0].individual == "m1c");

  // Condition 2: m1c parked on the SC seat while lower-merit w1g holds an
  // open seat; swapping her for m1c keeps the WOMEN slot covered by w1c, so
  // there is no HR justification for the difference.
  Allocation parked;
  parked.categories[kOpenCategory].chosen = {"w1c", "w1g"};
  parked.categories["SC"].chosen = {"m1c"};
  parked.unassigned = {"m1g", "m2g"};
  bool c2 = false;
  for (const auto& viol : check_vr_compliance(parked, inst.pool, inst.quotas))
    if (viol.vrc_condition == 2 && viol.individual == "m1c" && viol.rival == "w1g") c2 = true;
  CHECK(c2);

  // Condition 3: w1c on the SC seat while the open WOMEN protection is idle.
  Allocation idle;
  idle.categories[kOpenCategory].chosen = {"m1g", "m2g"};
  idle.categories["SC"].chosen = {"w1c"};
  idle.unassigned = {"m1c", "w1g"};
  bool c3 = false;
  for (const auto& viol : check_vr_compliance(idle, inst.pool, inst.quotas))
    if (viol.vrc_condition == 3 && viol.individual == "w1c") c3 = true;
  CHECK(c3);
}

TEST_CASE("vacuous audits pass: empty pool and no HR quotas") {
  QuotaScheme q;
  q.total = 2;
  Instance empty = validate_instance({}, q);
  CHECK(full_audit(RuleKind::kTwoStepMeritoriousHorizontal, empty).all_pass());

  Instance plain =
      validate_instance({fixtures::person("a", 2), fixtures::person("b", 1)}, q);
  CHECK(full_audit(RuleKind::kTwoStepMeritoriousHorizontal, plain).all_pass());
}

TEST_CASE("random 2SMH allocations pass every audit") {
  std::mt19937 rng(37);
  GeneratorParams p;
  p.max_traits = 3;
  for (int trial = 0; trial < 150; ++trial) {
    Instance inst = random_instance(rng, p);
    auto report = full_audit(RuleKind::kTwoStepMeritoriousHorizontal, inst);
    if (!report.all_pass()) {
      CAPTURE(audit_report_to_json(report));
      CHECK(report.all_pass());
    }
  }
}

TEST_CASE("audit report JSON carries rule, scope, and per-axiom status") {
  auto inst = fixtures::example1();
  auto report = full_audit(RuleKind::kSciAkg, inst);
  auto json = audit_report_to_json(report);
  CHECK(json.find("\"rule\": \"sci-akg\"") != std::string::npos);
  CHECK(json.find("\"NJE\"") != std::string::npos);
  CHECK(json.find("\"violations\"") != std::string::npos);
}
