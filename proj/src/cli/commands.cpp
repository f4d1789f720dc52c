#include <omp.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fulldp/cli.hpp"

namespace fulldp::cli {

using nlohmann::json;
using quartic::TernaryQuartic;

namespace {

json field_json(const gf::Field& F) {
  return {{"q", F.q()}, {"p", F.p()}, {"k", F.k()}, {"serialization", F.serialize()}};
}

json header(const char* command, const Options& opt) {
  json r = {{"tool", {{"name", "fulldp"}, {"version", FULLDP_VERSION}}},
            {"schema_version", kSchemaVersion},
            {"command", command},
            {"field", field_json(*opt.field)}};
  return r;
}

void apply_workers(const Options& opt) {
  if (opt.workers > 0) omp_set_num_threads(opt.workers);
  omp_set_max_active_levels(1);
}

// Outcome of auditing one curve.
struct Audited {
  std::string status = "ok";  // ok | singular | not-split | anomaly
  std::string message;
  std::optional<config::ConfigReport> report;
  bool anomaly = false;
};

// Whatever must hold on every split smooth quartic; a failure is an anomaly.
std::optional<std::string> invariant_failure(const config::ConfigReport& r) {
  const auto& id = r.identities;
  if (!id.per_line) return "per-line counting identities fail";
  if (!id.f_relation) return "2f relation fails";
  if (!id.l2q_agree_contacts) return "L_{2,q} direct and closed (with c) disagree";
  if (!id.g_relation_contacts) return "2g relation (with c) fails";
  if (!id.bounds) return "h <= 63 or e <= 121 violated";
  if (!r.fullness.consistent()) return "fullness equation disagrees with the direct fullness test";
  if (r.field->p() > 3 && r.hyperflexes > 12) return "more than 12 hyperflexes";
  return std::nullopt;
}

Audited audit_one(const TernaryQuartic& Q) {
  Audited a;
  try {
    a.report = config::audit(Q);
    if (auto why = invariant_failure(*a.report)) {
      a.status = "anomaly";
      a.message = *why;
      a.anomaly = true;
    }
  } catch (const cover::NotSmoothError& e) {
    a.status = "singular";
    a.message = e.what();
  } catch (const quartic::LineComponentError& e) {
    a.status = "singular";
    a.message = e.what();
  } catch (const quartic::NotSplitError& e) {
    a.status = "not-split";
    a.message = std::to_string(e.count()) + " rational bitangents";
  } catch (const quartic::QuarticError& e) {
    a.status = "anomaly";
    a.message = e.what();
    a.anomaly = true;
  }
  return a;
}

json curve_json(const std::string& source, const Audited& a) {
  json c = {{"source", source}, {"status", a.status}};
  if (!a.message.empty()) c["message"] = a.message;
  if (a.report) c["report"] = config_json(*a.report);
  return c;
}

json class_json(std::size_t index, const classify::IsoClass& cls) {
  return {{"index", index},
          {"full", cls.full},
          {"representative", quartic_json(cls.representative)},
          {"members", cls.members},
          {"report", config_json(cls.report)}};
}

std::vector<std::pair<std::string, TernaryQuartic>> resolve_all(const Options& opt) {
  std::vector<std::pair<std::string, TernaryQuartic>> out;
  for (const auto& src : opt.sources) {
    try {
      out.emplace_back(src.text, resolve(src, opt.field));
    } catch (const InputError& e) {
      throw InputError(src.text + ": " + e.what());
    }
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Outcome cmd_audit(const Options& opt) {
  apply_workers(opt);
  const auto t0 = std::chrono::steady_clock::now();
  const auto curves = resolve_all(opt);
  Outcome out{header("audit", opt), kExitClean};
  json list = json::array(), anomalies = json::array();
  std::size_t full = 0, ok = 0;
  for (const auto& [label, Q] : curves) {
    const Audited a = audit_one(Q);
    list.push_back(curve_json(label, a));
    if (a.status != "ok") {
      out.exit_code = kExitAnomalies;
      anomalies.push_back({{"source", label}, {"status", a.status}, {"message", a.message}});
    } else {
      ++ok;
      if (a.report->fullness.full) ++full;
    }
  }
  out.report["curves"] = list;
  out.report["anomalies"] = anomalies;
  out.report["summary"] = {{"curves", curves.size()}, {"audited", ok}, {"full", full}, {"failed", anomalies.size()}};
  if (opt.timing) out.report["timing"] = {{"seconds", seconds_since(t0)}};
  return out;
}

Outcome cmd_classify(const Options& opt) {
  apply_workers(opt);
  const auto t0 = std::chrono::steady_clock::now();
  const auto curves = resolve_all(opt);
  Outcome out{header("classify", opt), kExitClean};
  std::vector<Audited> audited;
  std::vector<config::ConfigReport> reports;
  std::vector<std::size_t> report_of_curve(curves.size(), SIZE_MAX);
  json anomalies = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    audited.push_back(audit_one(curves[i].second));
    const auto& a = audited.back();
    if (a.status == "ok") {
      report_of_curve[i] = reports.size();
      reports.push_back(*a.report);
    } else {
      out.exit_code = kExitAnomalies;
      anomalies.push_back({{"source", curves[i].first}, {"status", a.status}, {"message", a.message}});
    }
  }
  const auto classes = classify::classify(reports);
  std::vector<std::size_t> class_of_report(reports.size());
  json cls_list = json::array();
  std::size_t full = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    json j = class_json(c, classes[c]);
    json sources = json::array();
    for (auto r : classes[c].source_indices) {
      class_of_report[r] = c;
      for (std::size_t i = 0; i < curves.size(); ++i)
        if (report_of_curve[i] == r) sources.push_back(curves[i].first);
    }
    j["sources"] = sources;
    cls_list.push_back(j);
    if (classes[c].full) ++full;
  }
  json list = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    json c = curve_json(curves[i].first, audited[i]);
    if (report_of_curve[i] != SIZE_MAX) c["class"] = class_of_report[report_of_curve[i]];
    list.push_back(c);
  }
  out.report["curves"] = list;
  out.report["classes"] = cls_list;
  out.report["anomalies"] = anomalies;
  out.report["summary"] = {{"curves", curves.size()},
                           {"classes", classes.size()},
                           {"full_classes", full},
                           {"nonfull_classes", classes.size() - full}};
  if (opt.timing) out.report["timing"] = {{"seconds", seconds_since(t0)}};
  return out;
}

Outcome cmd_scan_kuwata(const Options& opt) {
  apply_workers(opt);
  const auto t0 = std::chrono::steady_clock::now();
  const gf::FieldPtr& field = opt.field;
  const gf::Field& F = *field;
  if (F.q() < 9 || F.q() > 37) throw InputError("scan-kuwata needs 9 <= q <= 37");
  const auto extras = resolve_all(opt);
  Outcome out{header("scan-kuwata", opt), kExitClean};
  // Closed forms alone certify the 28 bitangents; a full line scan is done for every
  // curve in full mode, and always for small fields.
  const bool exhaustive = opt.mode == Options::Mode::Full || F.q() <= 23;
  out.report["mode"] = opt.mode == Options::Mode::Full ? "full" : "fast";

  // Triples grouped by canonical quartic.
  const auto triples = kuwata::enumerate_kuwata(F);
  std::map<TernaryQuartic, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < triples.size(); ++i)
    groups[kuwata::kuwata_quartic(field, triples[i]).canonical()].push_back(i);
  std::vector<const TernaryQuartic*> distinct;
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [Q, idx] : groups) {
    distinct.push_back(&Q);
    members.push_back(&idx);
  }

  struct Item {
    Audited audited;
    bool line_scanned = false;
    std::size_t closed_form_checked = 0;
    std::vector<plane::ProjLine> closed_lines;  // scan order
  };
  std::vector<Item> items(distinct.size());

  const auto process = [&](std::size_t d) {
    Item& it = items[d];
    const TernaryQuartic& Q = *distinct[d];
    const auto& group = *members[d];
    try {
      if (!quartic::is_smooth(Q)) {
        it.audited.status = "singular";
        it.audited.message = "singular Kuwata curve";
        // A zero parameter is the only way we have seen this happen; anything else is news.
        for (auto t : group)
          if (!kuwata::has_zero_parameter(triples[t])) {
            it.audited.status = "anomaly";
            it.audited.message = "singular Kuwata curve " + kuwata::format(F, triples[t]);
            it.audited.anomaly = true;
          }
        return;
      }
      const auto closed = kuwata::kuwata_bitangents(field, triples[group.front()]);
      const std::set<plane::ProjLine> closed_set(closed.begin(), closed.end());
      quartic::BitangentScan scan;
      it.closed_lines.assign(closed_set.begin(), closed_set.end());
      if (exhaustive) {
        scan = quartic::scan_bitangents(Q);
        it.line_scanned = true;
        if (!std::equal(scan.lines.begin(), scan.lines.end(), closed_set.begin(), closed_set.end()))
          throw quartic::QuarticError("closed-form bitangents differ from the line scan");
      } else {
        // The set iterates in line-scan order, so both paths report lines identically.
        for (const auto& L : closed_set) {
          const auto t = quartic::tangency_of(F, quartic::restrict_to_line(Q, L));
          if (!t.bitangent) throw quartic::QuarticError("closed-form line " + plane::format(F, L) + " is not a bitangent");
          scan.lines.push_back(L);
          scan.detail.push_back(t);
        }
      }
      for (auto t : group) {
        const auto lines = kuwata::kuwata_bitangents(field, triples[t]);
        if (!std::all_of(lines.begin(), lines.end(), [&](const plane::ProjLine& L) { return closed_set.count(L) == 1; }))
          throw quartic::QuarticError("closed-form bitangents of " + kuwata::format(F, triples[t]) +
                                      " differ from those of " + kuwata::format(F, triples[group.front()]));
        ++it.closed_form_checked;
      }
      it.audited.report = config::audit_with(Q, std::move(scan), false);
      if (auto why = invariant_failure(*it.audited.report)) {
        it.audited.status = "anomaly";
        it.audited.message = *why;
        it.audited.anomaly = true;
      }
    } catch (const quartic::NotSplitError& e) {
      it.audited.status = "anomaly";
      it.audited.message = "Kuwata curve not split: " + std::to_string(e.count()) + " rational bitangents";
      it.audited.anomaly = true;
    } catch (const std::exception& e) {
      it.audited.status = "anomaly";
      it.audited.message = e.what();
      it.audited.anomaly = true;
    }
  };

  const auto n = static_cast<std::int64_t>(distinct.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t d = 0; d < n; ++d) process(static_cast<std::size_t>(d));

  // Fast mode: a seeded sample of the smooth curves still gets the full line scan.
  if (!exhaustive) {
    std::vector<std::size_t> pool;
    for (std::size_t d = 0; d < distinct.size(); ++d)
      if (items[d].audited.status == "ok") pool.push_back(d);
    std::mt19937_64 rng(opt.seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(pool.size(), opt.sample));
    const auto m = static_cast<std::int64_t>(pool.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < m; ++i) {
      Item& it = items[pool[static_cast<std::size_t>(i)]];
      const auto scan = quartic::scan_bitangents(*distinct[pool[static_cast<std::size_t>(i)]]);
      it.line_scanned = true;
      if (scan.lines != it.closed_lines) {
        it.audited.status = "anomaly";
        it.audited.message = "closed-form bitangents differ from the line scan";
        it.audited.anomaly = true;
        it.audited.report.reset();
      }
    }
  }

  // Extra (non-Kuwata) curves.
  std::vector<Audited> extra_audits;
  for (const auto& [label, Q] : extras) extra_audits.push_back(audit_one(Q));

  // Classification input: audited Kuwata curves, then extras.
  std::vector<config::ConfigReport> reports;
  std::vector<std::size_t> origin;  // index into distinct, or distinct.size() + extra index
  for (std::size_t d = 0; d < distinct.size(); ++d)
    if (items[d].audited.status == "ok") {
      reports.push_back(*items[d].audited.report);
      origin.push_back(d);
    }
  for (std::size_t e = 0; e < extras.size(); ++e)
    if (extra_audits[e].status == "ok") {
      reports.push_back(*extra_audits[e].report);
      origin.push_back(distinct.size() + e);
    }
  const auto classes = classify::classify(reports);

  json anomalies = json::array();
  std::size_t singular_triples = 0, smooth_triples = 0, smooth_distinct = 0, line_scanned = 0, closed_checked = 0;
  std::size_t full_distinct = 0;
  for (std::size_t d = 0; d < distinct.size(); ++d) {
    const auto& it = items[d];
    if (it.audited.status == "singular") {
      singular_triples += members[d]->size();
      continue;
    }
    smooth_triples += members[d]->size();
    ++smooth_distinct;
    if (it.line_scanned) ++line_scanned;
    closed_checked += it.closed_form_checked;
    if (it.audited.report && it.audited.report->fullness.full) ++full_distinct;
    if (it.audited.anomaly)
      anomalies.push_back({{"source", kuwata::format(F, triples[members[d]->front()])},
                           {"status", it.audited.status},
                           {"message", it.audited.message}});
  }
  json extra_list = json::array();
  for (std::size_t e = 0; e < extras.size(); ++e) {
    extra_list.push_back(curve_json(extras[e].first, extra_audits[e]));
    if (extra_audits[e].status != "ok")
      anomalies.push_back({{"source", extras[e].first},
                           {"status", extra_audits[e].status},
                           {"message", extra_audits[e].message}});
  }

  json cls_list = json::array();
  std::size_t full = 0, kuwata_full = 0, kuwata_nonfull = 0;
  std::vector<json> extra_class(extras.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    json j = class_json(c, classes[c]);
    std::size_t kuwata_triples = 0;
    std::optional<std::size_t> example;
    json extra_sources = json::array();
    for (auto r : classes[c].source_indices) {
      const std::size_t o = origin[r];
      if (o < distinct.size()) {
        kuwata_triples += members[o]->size();
        const std::size_t first = members[o]->front();
        if (!example || first < *example) example = first;
      } else {
        extra_sources.push_back(extras[o - distinct.size()].first);
        extra_class[o - distinct.size()] = c;
      }
    }
    j["kuwata_triples"] = kuwata_triples;
    j["kuwata_example"] = example ? json(kuwata::format(F, triples[*example])) : json(nullptr);
    j["extra_sources"] = extra_sources;
    cls_list.push_back(j);
    if (classes[c].full) ++full;
    if (kuwata_triples > 0) ++(classes[c].full ? kuwata_full : kuwata_nonfull);
  }
  for (std::size_t e = 0; e < extras.size(); ++e)
    if (!extra_class[e].is_null()) extra_list[e]["class"] = extra_class[e];

  out.report["scan"] = {{"triples", triples.size()},
                        {"singular_triples", singular_triples},
                        {"smooth_triples", smooth_triples},
                        {"distinct_quartics", smooth_distinct},
                        {"full_quartics", full_distinct},
                        {"closed_form_checked_triples", closed_checked},
                        {"line_scanned_quartics", line_scanned}};
  out.report["extra"] = extra_list;
  out.report["classes"] = cls_list;
  out.report["anomalies"] = anomalies;
  out.report["summary"] = {{"classes", classes.size()},
                           {"full_classes", full},
                           {"nonfull_classes", classes.size() - full},
                           {"kuwata_full_classes", kuwata_full},
                           {"kuwata_nonfull_classes", kuwata_nonfull}};
  if (opt.details) {
    json list = json::array();
    for (std::size_t d = 0; d < distinct.size(); ++d)
      list.push_back(curve_json(kuwata::format(F, triples[members[d]->front()]), items[d].audited));
    out.report["kuwata_curves"] = list;
  }
  if (!anomalies.empty()) out.exit_code = kExitAnomalies;
  if (opt.timing) out.report["timing"] = {{"seconds", seconds_since(t0)}};
  return out;
}

}  // namespace fulldp::cli
