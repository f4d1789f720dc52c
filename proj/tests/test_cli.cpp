#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fulldp/cli.hpp"
#include "support.hpp"

using namespace fulldp;
using namespace fulldp::cli;
using nlohmann::json;

namespace {

const std::filesystem::path kSource = FULLDP_SOURCE_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Options options(std::uint32_t q, std::vector<std::string> sources) {
  Options opt;
  opt.field = gf::make_field_of_order(q);
  for (const auto& s : sources)
    for (auto& src : read_sources(s)) opt.sources.push_back(std::move(src));
  return opt;
}

std::string at_data(const std::string& name) { return "@" + (kSource / "data" / name).string(); }

std::map<std::string, int> histogram(const json& report) {
  std::map<std::string, int> out;
  for (const auto& h : report["histogram"]) out[h["profile"].get<std::string>()] = h["count"].get<int>();
  return out;
}

}  // namespace

TEST_CASE("parse_quartic") {
  const auto F9 = gf::make_field(3, 2);
  CHECK(parse_quartic("x^4+y^4+z^4", F9) ==
        quartic::TernaryQuartic::from_ints(F9, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}));
  const auto F13 = gf::make_field(13, 1);
  const auto eq9 = parse_quartic("x^4 + y^4 + z^4 - x^2y^2", F13);
  CHECK(eq9.serialize() == "1,0,0,12,0,0,0,0,0,0,1,0,0,0,1");
  CHECK(parse_quartic("w^2=x^4 + y^4 + z^4 + 8(x^2y^2 + x^2z^2 + y^2z^2)", F13) ==
        parse_quartic("x^4+y^4+z^4+8x^2y^2+8x^2z^2+8y^2z^2", F13));
  CHECK(parse_quartic("(x^2+y^2+z^2)^2", F13) == parse_quartic("x^4+2x^2y^2+2x^2z^2+y^4+2y^2z^2+z^4", F13));
  CHECK(parse_quartic("3*x*x*y*z - 2 x y^3 + 30 z^4", F13).serialize() == "0,0,0,0,3,0,11,0,0,0,0,0,0,0,4");
  CHECK(parse_quartic("x^4 + x^3*(y - y) ", F13).serialize() == "1,0,0,0,0,0,0,0,0,0,0,0,0,0,0");
  CHECK(parse_quartic("w**2 = x^4 - y^4", F13).serialize() == "1,0,0,0,0,0,0,0,0,0,12,0,0,0,0");

  CHECK_THROWS_WITH_AS(parse_quartic("x^3+y^4", F13), "monomial x^3 has degree 3, expected 4", InputError);
  CHECK_THROWS_AS(parse_quartic("x^4+u^4", F13), ParseError);
  try {
    parse_quartic("x^4 + y^4 +* z^4", F13);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  try {
    parse_quartic("w^2 = x^4 + q", F13);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 12);
  }
  CHECK_THROWS_AS(parse_quartic("(x^4", F13), ParseError);
  CHECK_THROWS_AS(parse_quartic("x^99", F13), ParseError);
  CHECK_THROWS_AS(parse_quartic("y^2 = x^4", F13), ParseError);
  CHECK_THROWS_AS(parse_quartic("x^4 - x^4", F13), InputError);
}

TEST_CASE("coefficient vectors and sources") {
  const auto F13 = gf::make_field(13, 1);
  CHECK(parse_coefficients("1,0,0,8,0,8,0,0,0,0,1,0,8,0,1", F13) == parse_quartic("x^4+y^4+z^4+8(x^2y^2+x^2z^2+y^2z^2)", F13));
  CHECK_THROWS_AS(parse_coefficients("1,2,3", F13), InputError);
  const auto F9 = gf::make_field(3, 2);
  const auto fermat = parse_quartic("x^4+y^4+z^4", F9);
  CHECK(parse_coefficients(fermat.serialize(), F9) == fermat);

  CHECK(classify_source("x^4+y^4").kind == QuarticSource::Kind::Polynomial);
  CHECK(classify_source(" 17;2;3;4 ").kind == QuarticSource::Kind::Kuwata);
  CHECK(classify_source(" 17;2;3;4 ").text == "17;2;3;4");
  CHECK(classify_source("1,0,0,8,0,8,0,0,0,0,1,0,8,0,1").kind == QuarticSource::Kind::Coefficients);
  CHECK(resolve(classify_source("17;2;3;4"), gf::make_field(17, 1)) ==
        kuwata::kuwata_quartic(gf::make_field(17, 1), kuwata::parse("17;2;3;4").second));
  CHECK_THROWS_AS(resolve(classify_source("17;2;3;4"), F13), InputError);
  CHECK_THROWS_AS(resolve(classify_source("17;1;3;4"), gf::make_field(17, 1)), InputError);

  const auto sources = read_sources(at_data("f13_full.txt"));
  REQUIRE(sources.size() == 2);
  CHECK(sources[1].text == "w^2=x^4+y^4+z^4-x^2y^2");
  CHECK_THROWS_AS(read_sources("@/nonexistent/file.txt"), InputError);
}

TEST_CASE("audit command") {
  auto out = cmd_audit(options(9, {"x^4+y^4+z^4"}));
  CHECK(out.exit_code == kExitClean);
  const auto& r = out.report["curves"][0]["report"];
  CHECK(r["fullness"]["full"] == true);
  CHECK(r["profiles"].size() == 28);
  CHECK(histogram(r) == std::map<std::string, int>{{"(9,0,0,0,1)", 28}});

  out = cmd_audit(options(17, {"x^4 + y^4 + z^4"}));
  const auto& r17 = out.report["curves"][0]["report"];
  CHECK(histogram(r17) == std::map<std::string, int>{{"(1,8,8,0,1)", 12}, {"(3,3,12,0,0)", 16}});
  CHECK(r17["counts"]["branch_points"] == 12);

  out = cmd_audit(options(13, {"(x^2+y^2+z^2)^2", "x^4+y^4+z^4+8(x^2y^2+x^2z^2+y^2z^2)"}));
  CHECK(out.exit_code == kExitAnomalies);
  CHECK(out.report["curves"][0]["status"] == "singular");
  CHECK(out.report["curves"][1]["status"] == "ok");
  CHECK(out.report["anomalies"].size() == 1);
  CHECK(out.report["summary"]["failed"] == 1);

  CHECK_THROWS_AS(cmd_audit(options(13, {"x^3+y^4"})), InputError);
}

TEST_CASE("classify command") {
  auto out = cmd_classify(options(23, {at_data("f23_full.txt")}));
  CHECK(out.exit_code == kExitClean);
  CHECK(out.report["classes"].size() == 2);
  CHECK(out.report["summary"]["full_classes"] == 2);

  // A curve and a random transform of it.
  testing::Gen gen(61);
  const auto field = gf::make_field(19, 1);
  const auto Q = parse_quartic("x^4 + y^4 + z^4 + 4x^2y^2 + 4x^2z^2 + 5y^2z^2", field);
  const auto moved = classify::apply_transform(gen.transform(*field), Q);
  out = cmd_classify(options(19, {Q.serialize(), moved.serialize()}));
  REQUIRE(out.report["classes"].size() == 1);
  CHECK(out.report["classes"][0]["sources"].size() == 2);
  CHECK(out.report["curves"][1]["class"] == 0);

  out = cmd_classify(options(19, {}));
  CHECK(out.exit_code == kExitClean);
  CHECK(out.report["classes"].empty());
  CHECK(out.report["curves"].empty());
}

TEST_CASE("scan-kuwata command") {
  auto opt = options(11, {});
  auto out = cmd_scan_kuwata(opt);
  CHECK(out.exit_code == kExitClean);
  CHECK(out.report["summary"]["full_classes"] == 1);
  CHECK(out.report["classes"][0]["full"] == true);
  CHECK(histogram(out.report["classes"][0]["report"]) == std::map<std::string, int>{{"(3,9,0,0,0)", 28}});
  CHECK_THROWS_AS(cmd_scan_kuwata(options(7, {})), InputError);

  // Fast and full mode agree on everything but the sampling counters.
  opt = options(25, {});
  opt.mode = Options::Mode::Fast;
  opt.sample = 5;
  auto fast = cmd_scan_kuwata(opt).report;
  opt.mode = Options::Mode::Full;
  auto full = cmd_scan_kuwata(opt).report;
  CHECK(fast["scan"]["line_scanned_quartics"] == 5);
  CHECK(full["scan"]["line_scanned_quartics"] == full["scan"]["distinct_quartics"]);
  for (auto* r : {&fast, &full}) {
    (*r)["scan"].erase("line_scanned_quartics");
    r->erase("mode");
  }
  CHECK(dump(fast) == dump(full));
}

TEST_CASE("csv summary") {
  const auto out = cmd_classify(options(13, {at_data("f13_full.txt")}));
  const std::string csv = to_csv(out.report);
  CHECK(csv.rfind("source,status,full,", 0) == 0);
  CHECK(csv.find("class,full,members,kuwata_triples,branch_points,hyperflexes,representative") != std::string::npos);
  CHECK(csv.find("w^2=x^4+y^4+z^4-x^2y^2,ok,true,274,4,7,104,24,0,4,4,1") != std::string::npos);
}

TEST_CASE("golden reports") {
  const bool update = std::getenv("FULLDP_UPDATE_GOLDEN") != nullptr;
  for (std::uint32_t q : {9u, 11u, 13u, 17u, 19u, 23u}) {
    const std::string name = "f" + std::to_string(q) + "_full.txt";
    // Sources are labelled by their text, so the file path does not leak into the report.
    auto opt = options(q, {at_data(name)});
    const std::string text = dump(cmd_classify(opt).report);
    const auto golden = kSource / "tests" / "golden" / ("classify_f" + std::to_string(q) + ".json");
    if (update) {
      std::ofstream(golden, std::ios::binary) << text;
      continue;
    }
    INFO("golden file ", golden.string());
    CHECK(text == slurp(golden));
  }
  for (std::uint32_t q : {13u, 17u}) {
    auto opt = options(q, {});
    if (q == 17) opt.sources = read_sources(at_data("f17_extra.txt"));
    const std::string text = dump(cmd_scan_kuwata(opt).report);
    const auto golden = kSource / "tests" / "golden" / ("scan_kuwata_f" + std::to_string(q) + ".json");
    if (update) {
      std::ofstream(golden, std::ios::binary) << text;
      continue;
    }
    INFO("golden file ", golden.string());
    CHECK(text == slurp(golden));
  }
}
