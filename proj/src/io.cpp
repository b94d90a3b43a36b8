#include "cardvote/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cardvote/errors.hpp"

namespace cardvote {

using nlohmann::json;

namespace {

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>(), 10);
  throw ParseError("expected an integer, got " + j.dump());
}

Preference make_pref(std::vector<Rational> values, bool relaxed) {
  return relaxed ? Preference::relaxed(std::move(values)) : Preference::normalized(std::move(values));
}

}  // namespace

json profile_to_json(const Profile& u) {
  json prefs = json::array();
  for (const auto& p : u.prefs()) {
    json row = json::array();
    for (const auto& v : p.values()) row.push_back(json::array({integer_json(v.get_num()), integer_json(v.get_den())}));
    prefs.push_back(std::move(row));
  }
  json doc = {{"m", u.m()}, {"n", u.n()}, {"prefs", std::move(prefs)}};
  if (!u.is_normalized()) doc["relaxed"] = true;
  return doc;
}

Profile profile_from_json(const json& doc) {
  try {
    bool relaxed = doc.value("relaxed", false);
    int m = doc.at("m").get<int>();
    int n = doc.at("n").get<int>();
    std::vector<Preference> voters;
    for (const auto& row : doc.at("prefs")) {
      std::vector<Rational> values;
      for (const auto& pair : row) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("each value must be a [numerator, denominator] pair");
        values.push_back(make_rational(integer_from_json(pair[0]), integer_from_json(pair[1])));
      }
      if (static_cast<int>(values.size()) != m) throw ParseError("voter row length differs from m");
      voters.push_back(make_pref(std::move(values), relaxed));
    }
    if (static_cast<int>(voters.size()) != n) throw ParseError("number of voter rows differs from n");
    return Profile(std::move(voters));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed profile JSON: ") + e.what());
  }
}

std::string profile_to_csv(const Profile& u) {
  std::string out;
  for (const auto& p : u.prefs()) {
    for (int j = 0; j < p.m(); ++j) {
      if (j) out += ',';
      out += to_string(p.values()[j]);
    }
    out += '\n';
  }
  return out;
}

Profile profile_from_csv(std::string_view text, bool relaxed) {
  std::vector<Preference> voters;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Rational> values;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) values.push_back(parse_rational(cell));
    voters.push_back(make_pref(std::move(values), relaxed));
  }
  return Profile(std::move(voters));
}

Profile load_profile(const std::string& path, bool relaxed) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error("cannot open profile file '" + path + "'");
    buffer << file.rdbuf();
  }
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return profile_from_csv(buffer.str(), relaxed);
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw ParseError("profile file '" + path + "' is not valid JSON: " + e.what());
  }
  // reports from `gen` wrap the profile next to their config line
  if (doc.is_object() && doc.contains("profile")) doc = doc["profile"];
  if (relaxed) doc["relaxed"] = true;
  return profile_from_json(doc);
}

std::string decimal(const Rational& r, int digits) {
  mpf_class f(r, 512);
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
  return buf;
}

json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", decimal(r)}}; }

json distribution_to_json(const CandidateDistribution& d) {
  json probs = json::array(), decimals = json::array();
  for (const auto& p : d.probs()) {
    probs.push_back(to_string(p));
    decimals.push_back(decimal(p));
  }
  return {{"exact", std::move(probs)}, {"decimal", std::move(decimals)}};
}

namespace {

json grid_json(const Grid& g) { return {{"m", g.m}, {"n", g.n}, {"k", g.k}, {"tie_free", g.tie_free}}; }

json pref_json(const Preference& p) {
  json row = json::array();
  for (const auto& v : p.values()) row.push_back(to_string(v));
  return row;
}

}  // namespace

json report_to_json(const WitnessReport& report) {
  json doc = {{"property", report.property},
              {"mechanism", report.mechanism},
              {"search_space", grid_json(report.grid)},
              {"verdict", report.holds() ? "holds" : "violated"},
              {"profiles_checked", report.profiles_checked}};
  if (!report.witness) return doc;
  doc["witness"] = std::visit(
      [](const auto& w) -> json {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, TruthfulnessWitness>) {
          return {{"kind", "misreport"},           {"profile", profile_to_json(w.profile)},
                  {"voter", w.voter},              {"misreport", pref_json(w.misreport)},
                  {"honest_utility", to_string(w.honest_utility)},
                  {"misreport_utility", to_string(w.misreport_utility)},
                  {"gain", to_string(w.gain)}};
        } else if constexpr (std::is_same_v<W, OrdinalWitness>) {
          return {{"kind", "ordinal_pair"},
                  {"profile", profile_to_json(w.first)},
                  {"other_profile", profile_to_json(w.second)},
                  {"distribution", distribution_to_json(w.first_dist)},
                  {"other_distribution", distribution_to_json(w.second_dist)}};
        } else if constexpr (std::is_same_v<W, NeutralityWitness>) {
          return {{"kind", "candidate_permutation"},
                  {"profile", profile_to_json(w.profile)},
                  {"permutation", w.permutation},
                  {"expected", distribution_to_json(w.expected)},
                  {"actual", distribution_to_json(w.actual)}};
        } else {
          return {{"kind", "voter_permutation"},
                  {"profile", profile_to_json(w.profile)},
                  {"voter_order", w.voter_order},
                  {"distribution", distribution_to_json(w.original)},
                  {"permuted_distribution", distribution_to_json(w.permuted)}};
        }
      },
      *report.witness);
  return doc;
}

json reduction_to_json(const ReductionResult& result) {
  json steps = json::array();
  for (const auto& s : result.steps)
    steps.push_back({{"voter", s.voter},
                     {"block", {s.block_low, s.block_high}},
                     {"direction", s.direction < 0 ? "left" : "right"},
                     {"g_before", to_string(s.g_before)},
                     {"g_after", to_string(s.g_after)},
                     {"both_directions_increase", s.both_directions_increase}});
  return {{"profile", profile_to_json(result.profile)}, {"steps", std::move(steps)}};
}

json projection_to_json(const ProjectionResult& result) {
  json steps = json::array();
  for (const auto& s : result.steps)
    steps.push_back({{"voter", s.voter}, {"rule", s.rule}, {"before", pref_json(s.before)}, {"after", pref_json(s.after)}});
  return {{"profile", profile_to_json(result.profile)}, {"steps", std::move(steps)}};
}

}  // namespace cardvote
