// Command-line front end: allocation runs, axiom audits, rule comparisons,
// and oracle self-checks over applicant/quota files.
//
// Exit codes: 0 success, 1 input error, 2 axiom or oracle failure,
// 3 internal invariant breach.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "reserves/axioms.hpp"
#include "reserves/errors.hpp"
#include "reserves/generator.hpp"
#include "reserves/io.hpp"
#include "reserves/matching.hpp"
#include "reserves/oracle.hpp"
#include "reserves/rules.hpp"

namespace {

using namespace reserves;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFailure = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  // Write-then-rename so rerun outputs are replaced atomically.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp + " for writing");
    out << content;
  }
  std::rename(tmp.c_str(), path.c_str());
}

// `--trait-order open:t1,t2 SC:t2,t1` or the global shorthand `t1,t2`.
TraitOrders parse_trait_orders(const std::vector<std::string>& specs, const QuotaScheme& quotas) {
  TraitOrders orders;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  for (const auto& spec : specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
      for (const auto& v : quotas.vertical_categories()) orders[v] = split_list(spec);
    } else {
      orders[spec.substr(0, colon)] = split_list(spec.substr(colon + 1));
    }
  }
  return orders;
}

struct InputOptions {
  std::string applicants_path;
  std::string quotas_path;
  std::string tie_break = "reject";
  std::vector<std::string> trait_order_specs;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--applicants", in.applicants_path, "Applicant CSV file")->required();
  cmd->add_option("--quotas", in.quotas_path, "Quota config JSON file")->required();
  cmd->add_option("--tie-break", in.tie_break, "Duplicate-merit handling: reject | id-lex")
      ->check(CLI::IsMember({"reject", "id-lex"}));
  cmd->add_option("--trait-order", in.trait_order_specs,
                  "Trait processing order: global 't1,t2' or per-category 'open:t1,t2'");
}

struct LoadedInstance {
  Instance inst;
  TraitOrders orders;
};

LoadedInstance load(const InputOptions& in) {
  auto tie = in.tie_break == "id-lex" ? TieBreak::kIdLex : TieBreak::kReject;
  auto pool = parse_applicants(read_file(in.applicants_path), tie);
  auto quotas = parse_quotas(read_file(in.quotas_path));
  Instance inst = validate_instance(std::move(pool), std::move(quotas));
  TraitOrders orders = parse_trait_orders(in.trait_order_specs, inst.quotas);
  return {std::move(inst), std::move(orders)};
}

RuleKind parse_rule(const std::string& token) {
  auto rule = rule_from_token(token);
  if (!rule)
    throw ParseError("unknown rule '" + token +
                     "'; expected one of sci-akg, sci-akg-original, 2smg, 2smh, "
                     "min-guarantee, meritorious");
  return *rule;
}

int cmd_allocate(const InputOptions& in, const std::string& rule_token_str,
                 const std::string& out_path, const std::string& format) {
  auto loaded = load(in);
  Allocation alloc = run_rule(parse_rule(rule_token_str), loaded.inst, loaded.orders);
  write_output(out_path, format == "table" ? allocation_to_table(alloc, loaded.inst)
                                           : allocation_to_json(alloc));
  return kExitOk;
}

int cmd_audit(const InputOptions& in, const std::string& rule_token_str,
              const std::string& scope, int max_individuals, const std::string& out_path) {
  auto loaded = load(in);
  AuditOptions opts;
  opts.scope = scope == "all-subsets" ? AuditScope::kAllSubsets : AuditScope::kSingle;
  opts.max_pool_for_subsets = max_individuals;
  opts.orders = loaded.orders;
  AuditReport report = full_audit(parse_rule(rule_token_str), loaded.inst, opts);
  write_output(out_path, audit_report_to_json(report));
  return report.all_pass() ? kExitOk : kExitFailure;
}

int cmd_compare(const InputOptions& in, const std::vector<std::string>& rule_tokens,
                const std::string& out_path) {
  auto loaded = load(in);
  const Instance& inst = loaded.inst;
  Allocation a = run_rule(parse_rule(rule_tokens[0]), inst, loaded.orders);
  Allocation b = run_rule(parse_rule(rule_tokens[1]), inst, loaded.orders);

  auto general_of = [&](const Allocation& alloc) {
    std::vector<std::string> out;
    for (const auto& id : alloc.aggregate())
      if (!inst.by_id(id).category) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto reserved_counts = [&](const Allocation& alloc) {
    std::map<std::string, int> counts;
    for (const auto& c : inst.quotas.categories) counts[c.name] = 0;
    for (const auto& id : alloc.aggregate()) {
      const auto& cat = inst.by_id(id).category;
      if (cat) counts[*cat] += 1;
    }
    return counts;
  };

  auto gen_a = general_of(a), gen_b = general_of(b);
  const bool containment =
      std::includes(gen_a.begin(), gen_a.end(), gen_b.begin(), gen_b.end());

  bool demand_met = true;
  for (const auto& c : inst.quotas.categories)
    if (static_cast<int>(inst.members(c.name).size()) <
        inst.quotas.open_capacity() + c.capacity)
      demand_met = false;

  auto counts_a = reserved_counts(a), counts_b = reserved_counts(b);
  int sum_a = 0, sum_b = 0;
  for (const auto& [c, n] : counts_a) sum_a += n;
  for (const auto& [c, n] : counts_b) sum_b += n;

  ordered_json doc;
  doc["rules"] = rule_tokens;
  doc["general_selected"][rule_tokens[0]] = gen_a;
  doc["general_selected"][rule_tokens[1]] = gen_b;
  doc["general_containment"] = containment;  // second's generals within first's
  doc["reserved_counts"][rule_tokens[0]] = counts_a;
  doc["reserved_counts"][rule_tokens[1]] = counts_b;
  doc["reserved_total"][rule_tokens[0]] = sum_a;
  doc["reserved_total"][rule_tokens[1]] = sum_b;
  doc["demand_condition_met"] = demand_met;
  doc["count_inequality"] =
      demand_met ? (sum_b >= sum_a ? "holds" : "violated")
                 : "not guaranteed (sufficient-demand hypothesis fails); observed " +
                       std::to_string(sum_b) + " vs " + std::to_string(sum_a);
  write_output(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

struct OracleOptions {
  std::string check;
  unsigned seed = 1;
  int trials = 200;
  int max_individuals = 7;
  std::string applicants_path;
  std::string quotas_path;
};

int run_oracle_checks(const OracleOptions& opts, const std::string& out_path) {
  std::mt19937 rng(opts.seed);
  ordered_json doc;
  doc["check"] = opts.check;
  doc["seed"] = opts.seed;
  doc["trials"] = opts.trials;
  std::vector<std::string> failures;

  GeneratorParams params;
  params.max_individuals = opts.max_individuals;

  auto fixture_instance = [&]() -> std::optional<Instance> {
    if (opts.applicants_path.empty()) return std::nullopt;
    auto pool = parse_applicants(read_file(opts.applicants_path));
    auto quotas = parse_quotas(read_file(opts.quotas_path));
    return validate_instance(std::move(pool), std::move(quotas));
  };

  if (opts.check == "matching") {
    for (int trial = 0; trial < opts.trials; ++trial) {
      GeneratorParams p = params;
      p.max_individuals = std::min(opts.max_individuals, 10);
      p.max_traits = 3;
      p.max_open_capacity = 4;
      Instance inst = random_instance(rng, p);
      HRGraph g = build_hr_graph(kOpenCategory, inst.pool, inst.quotas);
      int fast = max_trait_matching(g).cardinality();
      int slow = oracle::brute_force_matching(g);
      if (fast != slow)
        failures.push_back("trial " + std::to_string(trial) + ": matching " +
                           std::to_string(fast) + " != oracle " + std::to_string(slow));
    }
  } else if (opts.check == "uniqueness") {
    for (int trial = 0; trial < opts.trials; ++trial) {
      Instance inst = random_instance(rng, params);
      auto survivors = oracle::enumerate_axiomatic_allocations(inst);
      Allocation expected = two_step_meritorious_horizontal(inst);
      if (survivors.size() != 1)
        failures.push_back("trial " + std::to_string(trial) + ": " +
                           std::to_string(survivors.size()) + " axiomatic allocations");
      else if (survivors[0].aggregate() != expected.aggregate() ||
               survivors[0].categories.size() != expected.categories.size())
        failures.push_back("trial " + std::to_string(trial) + ": survivor differs from 2SMH");
      else
        for (const auto& [v, sel] : expected.categories)
          if (survivors[0].categories.at(v).chosen != sel.chosen)
            failures.push_back("trial " + std::to_string(trial) + ": survivor differs at " + v);
    }
  } else if (opts.check == "matroid") {
    auto run_one = [&](const Instance& inst, const std::string& label) {
      auto m = oracle::transversal_matroid(inst.pool, inst.quotas.open_hr);
      auto report = oracle::check_matroid_axioms(m);
      for (const auto& f : report.failures) failures.push_back(label + ": " + f);
    };
    if (auto fixture = fixture_instance()) {
      run_one(*fixture, "fixture");
    } else {
      GeneratorParams p = params;
      p.max_individuals = std::min(opts.max_individuals, 6);
      p.max_traits = 3;
      for (int trial = 0; trial < opts.trials; ++trial)
        run_one(random_instance(rng, p), "trial " + std::to_string(trial));
    }
  } else if (opts.check == "greedy") {
    GeneratorParams p = params;
    p.max_individuals = std::min(opts.max_individuals, 8);
    p.max_traits = 3;
    for (int trial = 0; trial < opts.trials; ++trial) {
      Instance inst = random_instance(rng, p);
      auto m = oracle::transversal_matroid(inst.pool, inst.quotas.open_hr);
      std::map<std::string, double> weights;
      for (const auto& i : inst.pool) weights[i.id] = i.merit;
      auto report = oracle::check_greedy_properties(m, weights);
      for (const auto& f : report.failures)
        failures.push_back("trial " + std::to_string(trial) + ": " + f);
    }
  } else if (opts.check == "gale") {
    GeneratorParams p = params;
    p.max_individuals = std::min(opts.max_individuals, 7);
    for (int trial = 0; trial < opts.trials; ++trial) {
      Instance inst = random_instance(rng, p);
      Selection mh = meritorious_horizontal(kOpenCategory, inst.pool, inst.quotas);
      std::vector<Individual> mh_members;
      for (const auto& id : mh.chosen) mh_members.push_back(inst.by_id(id));
      for (const auto& rival : oracle::enumerate_maximally_accommodating(
               inst.pool, inst.quotas.open_hr, inst.quotas.open_capacity()))
        if (!oracle::gale_dominates(mh_members, rival))
          failures.push_back("trial " + std::to_string(trial) +
                             ": meritorious horizontal fails Gale dominance");
    }
  } else if (opts.check == "akg-equivalence") {
    GeneratorParams p = params;
    p.allow_overlapping = false;
    for (int trial = 0; trial < opts.trials; ++trial) {
      Instance inst = random_instance(rng, p);
      Allocation simple = sci_akg(inst);
      Allocation original = sci_akg_original(inst);
      for (const auto& [v, sel] : simple.categories)
        if (original.categories.at(v).chosen != sel.chosen)
          failures.push_back("trial " + std::to_string(trial) +
                             ": formulations disagree at " + v);
    }
  } else {
    throw ParseError("unknown check '" + opts.check +
                     "'; expected matching | uniqueness | matroid | greedy | gale | "
                     "akg-equivalence");
  }

  doc["status"] = failures.empty() ? "pass" : "fail";
  doc["failures"] = failures;
  write_output(out_path, doc.dump(2) + "\n");
  return failures.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertical/horizontal reservation choice rules, audits, and oracles"};
  app.require_subcommand(1);

  InputOptions alloc_in, audit_in, compare_in;
  std::string alloc_rule, audit_rule;
  std::string alloc_out = "-", audit_out = "-", compare_out = "-", oracle_out = "-";
  std::string alloc_format = "json";
  std::string audit_scope = "single";
  int audit_max_individuals = 14;
  std::vector<std::string> compare_rules;
  OracleOptions oracle_opts;

  auto* allocate = app.add_subcommand("allocate", "Run a choice rule and write the allocation");
  add_input_options(allocate, alloc_in);
  allocate->add_option("--rule", alloc_rule, "Rule token")->required();
  allocate->add_option("--out", alloc_out, "Output path or - for stdout");
  allocate->add_option("--format", alloc_format, "json | table")
      ->check(CLI::IsMember({"json", "table"}));

  auto* audit = app.add_subcommand("audit", "Audit the legal axioms for a rule");
  add_input_options(audit, audit_in);
  audit->add_option("--rule", audit_rule, "Rule token")->required();
  audit->add_option("--scope", audit_scope, "single | all-subsets")
      ->check(CLI::IsMember({"single", "all-subsets"}));
  audit->add_option("--max-individuals", audit_max_individuals,
                    "Refusal bound for all-subsets enumeration");
  audit->add_option("--out", audit_out, "Output path or - for stdout");

  auto* compare = app.add_subcommand("compare", "Compare two rules on the same instance");
  add_input_options(compare, compare_in);
  compare->add_option("--rules", compare_rules, "Two rule tokens (baseline, replacement)")
      ->expected(2)
      ->required();
  compare->add_option("--out", compare_out, "Output path or - for stdout");

  auto* oracle_cmd = app.add_subcommand("oracle", "Run brute-force cross-checks");
  oracle_cmd->add_option("--check", oracle_opts.check,
                         "matching | uniqueness | matroid | greedy | gale | akg-equivalence")
      ->required();
  oracle_cmd->add_option("--seed", oracle_opts.seed, "Random seed");
  oracle_cmd->add_option("--trials", oracle_opts.trials, "Number of random trials");
  oracle_cmd->add_option("--max-individuals", oracle_opts.max_individuals,
                         "Pool size bound for generated instances");
  oracle_cmd->add_option("--applicants", oracle_opts.applicants_path,
                         "Optional fixture applicants (matroid check)");
  oracle_cmd->add_option("--quotas", oracle_opts.quotas_path, "Optional fixture quotas");
  oracle_cmd->add_option("--out", oracle_out, "Output path or - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (allocate->parsed()) return cmd_allocate(alloc_in, alloc_rule, alloc_out, alloc_format);
    if (audit->parsed())
      return cmd_audit(audit_in, audit_rule, audit_scope, audit_max_individuals, audit_out);
    if (compare->parsed()) return cmd_compare(compare_in, compare_rules, compare_out);
    if (oracle_cmd->parsed()) return run_oracle_checks(oracle_opts, oracle_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ContractError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
