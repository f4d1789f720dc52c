#include <sstream>

#include "fulldp/cli.hpp"

namespace fulldp::cli {

using nlohmann::json;

json quartic_json(const quartic::TernaryQuartic& Q) {
  return {{"coefficients", Q.serialize()}, {"polynomial", Q.to_polynomial()}};
}

json histogram_json(const config::ConfigReport& r) {
  json out = json::array();
  const auto hist = config::histogram(r.profiles);
  // Largest groups first, ties by profile.
  std::vector<std::pair<config::Profile, int>> rows(hist.begin(), hist.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [p, n] : rows) out.push_back({{"profile", config::format(p)}, {"count", n}});
  return out;
}

json config_json(const config::ConfigReport& r) {
  const gf::Field& F = *r.field;
  json profiles = json::array();
  for (const auto& p : r.profiles)
    profiles.push_back({{"line", plane::format(F, p.line)},
                        {"h", p.counts.h},
                        {"e", p.counts.e},
                        {"f", p.counts.f},
                        {"g", p.counts.g},
                        {"c", p.counts.c}});
  const auto& id = r.identities;
  return {
      {"quartic", quartic_json(r.quartic)},
      {"counts",
       {{"surface_points", r.counts.surface_points},
        {"branch_points", r.counts.branch_points},
        {"split_target", r.counts.weil_target}}},
      {"split", true},
      {"rational_bitangents", r.profiles.size()},
      {"hyperflexes", r.hyperflexes},
      {"profiles", profiles},
      {"histogram", histogram_json(r)},
      {"aggregates", {{"h", r.agg.h}, {"e", r.agg.e}, {"f", r.agg.f}, {"g", r.agg.g}, {"c", r.agg.c}}},
      {"l2q", {{"direct", r.l2q_direct}, {"closed", r.l2q_closed}, {"closed_contacts", r.l2q_closed_contacts}}},
      {"points_on_surface", {{"eckardt", r.eckardt_on_X}, {"generalized_eckardt", r.generalized_eckardt_on_X}}},
      {"identities",
       {{"per_line", id.per_line},
        {"f_relation", id.f_relation},
        {"l2q_agree", id.l2q_agree},
        {"g_relation", id.g_relation},
        {"l2q_agree_contacts", id.l2q_agree_contacts},
        {"g_relation_contacts", id.g_relation_contacts},
        {"bounds", id.bounds},
        {"contacts_cover_branch", id.contacts_cover_branch}}},
      {"fullness",
       {{"full", r.fullness.full},
        {"surface_points", r.fullness.surface_points},
        {"l2q", r.fullness.l2q},
        {"equation_lhs", r.fullness.eq_lhs},
        {"equation_rhs", r.fullness.eq_rhs}}},
  };
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json at(const json& j, std::initializer_list<const char*> path) {
  const json* cur = &j;
  for (const char* key : path) {
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
  }
  return *cur;
}

}  // namespace

std::string to_csv(const json& report) {
  std::ostringstream os;
  const auto row = [&](std::initializer_list<json> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) os << ',';
      first = false;
      os << csv_field(c);
    }
    os << '\n';
  };
  if (report.contains("curves")) {
    os << "source,status,full,surface_points,branch_points,h,e,f,g,c,hyperflexes,class\n";
    for (const auto& c : report["curves"]) {
      const json r = at(c, {"report"});
      row({c["source"], c["status"], at(r, {"fullness", "full"}), at(r, {"counts", "surface_points"}),
           at(r, {"counts", "branch_points"}), at(r, {"aggregates", "h"}), at(r, {"aggregates", "e"}),
           at(r, {"aggregates", "f"}), at(r, {"aggregates", "g"}), at(r, {"aggregates", "c"}), at(r, {"hyperflexes"}),
           at(c, {"class"})});
    }
  }
  if (report.contains("classes")) {
    os << "class,full,members,kuwata_triples,branch_points,hyperflexes,representative\n";
    for (const auto& c : report["classes"]) {
      const json r = at(c, {"report"});
      row({c["index"], c["full"], c["members"], at(c, {"kuwata_triples"}), at(r, {"counts", "branch_points"}),
           at(r, {"hyperflexes"}), at(c, {"representative", "polynomial"})});
    }
  }
  return os.str();
}

}  // namespace fulldp::cli
