#pragma once

#include <string>
#include <vector>

#include "reserves/types.hpp"

namespace reserves {

enum class TieBreak {
  kReject,  // duplicate merit is a parse error
  kIdLex,   // perturb ties by lexicographic id, warn on stderr
};

// Parses the applicant CSV (header `id,merit,category,traits`; traits
// pipe-separated; empty category = general). LF or CRLF.
// Throws ParseError naming the offending line.
std::vector<Individual> parse_applicants(const std::string& text,
                                         TieBreak tie_break = TieBreak::kReject);

// Parses and validates the quota config JSON.
QuotaScheme parse_quotas(const std::string& text);

// Canonical serializations; parse(serialize(x)) round-trips exactly.
std::string serialize_applicants(const std::vector<Individual>& pool);
std::string serialize_quotas(const QuotaScheme& quotas);

// Allocation document as defined by the output schema. Slot indices are
// dropped from the witness (slots of a trait are interchangeable).
std::string allocation_to_json(const Allocation& alloc);
std::string allocation_to_table(const Allocation& alloc, const Instance& inst);

}  // namespace reserves
