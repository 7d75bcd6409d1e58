#include "reserves/io.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "nlohmann/json.hpp"
#include "reserves/errors.hpp"

namespace reserves {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

// Nudges tied merit scores apart, ordered by lexicographic id within each tie
// group. The nudge is smaller than any gap between distinct scores, so the
// relative order of untied individuals is untouched.
void break_ties_by_id(std::vector<Individual>& pool) {
  std::map<double, std::vector<Individual*>> groups;
  for (auto& i : pool) groups[i.merit].push_back(&i);

  std::size_t max_group = 1;
  double min_gap = 1.0;
  double prev = 0.0;
  bool first = true;
  for (auto& [merit, members] : groups) {
    max_group = std::max(max_group, members.size());
    if (!first) min_gap = std::min(min_gap, merit - prev);
    prev = merit;
    first = false;
  }
  if (max_group == 1) return;

  const double delta = min_gap / static_cast<double>(max_group + 1);
  for (auto& [merit, members] : groups) {
    if (members.size() == 1) continue;
    std::sort(members.begin(), members.end(),
              [](const Individual* a, const Individual* b) { return a->id < b->id; });
    std::cerr << "warning: " << members.size() << " applicants share merit " << merit
              << "; breaking ties by lexicographic id\n";
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (merit == 0.0) {
        // Cannot go below zero: spread the group upward, first id highest.
        members[k]->merit = static_cast<double>(members.size() - 1 - k) * delta;
      } else {
        members[k]->merit = merit - static_cast<double>(k) * delta;
      }
    }
  }
}

}  // namespace

std::vector<Individual> parse_applicants(const std::string& text, TieBreak tie_break) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<Individual> pool;
  std::map<std::string, int> seen_ids;
  std::map<double, int> seen_merits;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "id,merit,category,traits")
        throw ParseError("line 1: expected header 'id,merit,category,traits', got '" + line + "'");
      continue;
    }
    if (line.empty()) continue;

    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));

    Individual ind;
    ind.id = fields[0];
    if (ind.id.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty id");

    try {
      std::size_t pos = 0;
      ind.merit = std::stod(fields[1], &pos);
      if (pos != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric merit '" + fields[1] + "'");
    }

    if (!fields[2].empty()) ind.category = fields[2];
    if (!fields[3].empty())
      for (const auto& t : split(fields[3], '|'))
        if (!t.empty()) ind.traits.insert(t);

    if (auto [it, fresh] = seen_ids.emplace(ind.id, line_no); !fresh)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate id '" + ind.id +
                       "' (first seen at line " + std::to_string(it->second) + ")");
    if (auto [it, fresh] = seen_merits.emplace(ind.merit, line_no); !fresh) {
      if (tie_break == TieBreak::kReject)
        throw ParseError("line " + std::to_string(line_no) + ": duplicate merit at line " +
                         std::to_string(line_no) + " (first seen at line " +
                         std::to_string(it->second) + ")");
    }
    pool.push_back(std::move(ind));
  }

  if (tie_break == TieBreak::kIdLex) break_ties_by_id(pool);
  return pool;
}

QuotaScheme parse_quotas(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("quota config: ") + e.what());
  }

  QuotaScheme q;
  try {
    q.total = doc.at("total").get<int>();
    for (const auto& c : doc.value("categories", nlohmann::json::array())) {
      CategoryQuota cq;
      cq.name = c.at("name").get<std::string>();
      cq.capacity = c.at("capacity").get<int>();
      // items() keeps a reference; the value() copy must outlive the loop.
      const nlohmann::json hr = c.value("hr", nlohmann::json::object());
      for (const auto& [t, n] : hr.items()) cq.hr[t] = n.get<int>();
      q.categories.push_back(std::move(cq));
    }
    if (doc.contains("open")) {
      const nlohmann::json open_hr = doc["open"].value("hr", nlohmann::json::object());
      for (const auto& [t, n] : open_hr.items()) q.open_hr[t] = n.get<int>();
    }
    for (const auto& t : doc.value("traits", nlohmann::json::array()))
      q.trait_universe.push_back(t.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("quota config: ") + e.what());
  }

  // Traits referenced in HR quotas but not declared are accepted in declared
  // order of first appearance only if the `traits` list is absent entirely.
  if (q.trait_universe.empty()) {
    std::vector<std::string> inferred;
    auto add = [&](const std::map<std::string, int>& hr) {
      for (const auto& [t, n] : hr)
        if (std::find(inferred.begin(), inferred.end(), t) == inferred.end())
          inferred.push_back(t);
    };
    add(q.open_hr);
    for (const auto& c : q.categories) add(c.hr);
    q.trait_universe = std::move(inferred);
  }

  validate_instance({}, q);  // quota-side invariants only
  return q;
}

std::string serialize_applicants(const std::vector<Individual>& pool) {
  std::ostringstream out;
  out << "id,merit,category,traits\n";
  for (const auto& i : pool) {
    out << i.id << ',' << format_double(i.merit) << ',' << (i.category ? *i.category : "") << ',';
    bool first = true;
    for (const auto& t : i.traits) {
      if (!first) out << '|';
      out << t;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_quotas(const QuotaScheme& quotas) {
  ordered_json doc;
  doc["total"] = quotas.total;
  doc["categories"] = ordered_json::array();
  for (const auto& c : quotas.categories) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["capacity"] = c.capacity;
    jc["hr"] = ordered_json::object();
    for (const auto& [t, n] : c.hr) jc["hr"][t] = n;
    doc["categories"].push_back(jc);
  }
  doc["open"]["hr"] = ordered_json::object();
  for (const auto& [t, n] : quotas.open_hr) doc["open"]["hr"][t] = n;
  doc["traits"] = quotas.trait_universe;
  return doc.dump(2) + "\n";
}

std::string allocation_to_json(const Allocation& alloc) {
  ordered_json doc;
  doc["rule"] = alloc.rule;
  doc["categories"] = ordered_json::object();

  auto emit = [&](const std::string& v, const Selection& sel) {
    ordered_json jc;
    jc["selected"] = sel.chosen;
    jc["trait_matching"] = ordered_json::object();
    for (const auto& [id, slot] : sel.witness) jc["trait_matching"][id] = slot.first;
    doc["categories"][v] = jc;
  };
  if (auto it = alloc.categories.find(kOpenCategory); it != alloc.categories.end())
    emit(it->first, it->second);
  for (const auto& [v, sel] : alloc.categories)
    if (v != kOpenCategory) emit(v, sel);

  doc["unassigned"] = alloc.unassigned;
  return doc.dump(2) + "\n";
}

std::string allocation_to_table(const Allocation& alloc, const Instance& inst) {
  std::ostringstream out;
  out << "rule: " << alloc.rule << "\n";
  for (const auto& v : inst.quotas.vertical_categories()) {
    auto it = alloc.categories.find(v);
    if (it == alloc.categories.end()) continue;
    const auto& sel = it->second;
    out << "\n" << v << " (" << sel.chosen.size() << "/" << inst.quotas.capacity(v) << ")\n";
    for (const auto& id : sel.chosen) {
      const auto& ind = inst.by_id(id);
      out << "  " << std::left << std::setw(12) << id << " merit " << format_double(ind.merit);
      if (auto w = sel.witness.find(id); w != sel.witness.end())
        out << "  [HR: " << w->second.first << "]";
      out << "\n";
    }
  }
  if (!alloc.unassigned.empty()) {
    out << "\nunassigned\n";
    for (const auto& id : alloc.unassigned)
      out << "  " << std::left << std::setw(12) << id << " merit "
          << format_double(inst.by_id(id).merit) << "\n";
  }
  return out.str();
}

}  // namespace reserves
