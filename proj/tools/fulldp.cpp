// fulldp: audit, scan-kuwata and classify subcommands.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fulldp/cli.hpp"

namespace {

struct Args {
  std::string field;
  std::vector<std::string> quartics;
  std::vector<std::string> extras;
  std::string mode = "full";
  std::string format = "json";
  std::string output;
  int workers = 0;
  std::uint64_t seed = 1;
  std::size_t sample = 16;
  bool timing = false;
  bool details = false;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--field", a.field, "field: q, p^k or p^k:m0,...,mk")->required();
  cmd->add_option("--workers", a.workers, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output,-o", a.output, "write the report here instead of stdout");
  cmd->add_flag("--timing", a.timing, "include wall-clock timing (makes output nondeterministic)");
}

fulldp::cli::Options to_options(const Args& a) {
  using namespace fulldp::cli;
  Options opt;
  try {
    opt.field = fulldp::gf::parse_field(a.field);
  } catch (const std::exception& e) {
    throw InputError(std::string("--field: ") + e.what());
  }
  for (const auto& q : a.quartics)
    for (auto& s : read_sources(q)) opt.sources.push_back(std::move(s));
  for (const auto& path : a.extras)
    for (auto& s : read_source_file(path)) opt.sources.push_back(std::move(s));
  opt.mode = a.mode == "fast" ? Options::Mode::Fast : Options::Mode::Full;
  opt.workers = a.workers;
  opt.seed = a.seed;
  opt.sample = a.sample;
  opt.timing = a.timing;
  opt.details = a.details;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fulldp::cli;
  CLI::App app{"Fullness of split degree-two del Pezzo surfaces over finite fields"};
  app.set_version_flag("--version", FULLDP_VERSION);
  app.require_subcommand(1);
  Args a;

  auto* audit = app.add_subcommand("audit", "audit curves: smoothness, split, bitangent profiles, fullness");
  add_common(audit, a);
  audit->add_option("--quartic,-q", a.quartics, "curve text or @file (repeatable)")->required();

  auto* scan = app.add_subcommand("scan-kuwata", "audit and classify every Kuwata curve over the field");
  add_common(scan, a);
  scan->add_option("--extra", a.extras, "file of further (non-Kuwata) curves to classify alongside");
  scan->add_option("--mode", a.mode, "full: line-scan every curve; fast: closed-form bitangents plus a sample")
      ->check(CLI::IsMember({"fast", "full"}));
  scan->add_option("--seed", a.seed, "fast-mode sampling seed");
  scan->add_option("--sample", a.sample, "fast mode: number of curves re-checked by a line scan");
  scan->add_flag("--details", a.details, "include the report of every distinct Kuwata curve");

  auto* cls = app.add_subcommand("classify", "group curves up to projective equivalence");
  add_common(cls, a);
  cls->add_option("--quartic,-q", a.quartics, "curve text or @file (repeatable)");
  cls->add_option("--extra", a.extras, "file of further curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  Outcome out;
  try {
    const Options opt = to_options(a);
    if (*audit)
      out = cmd_audit(opt);
    else if (*scan)
      out = cmd_scan_kuwata(opt);
    else
      out = cmd_classify(opt);
  } catch (const InputError& e) {
    std::cerr << "fulldp: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string text = a.format == "csv" ? to_csv(out.report) : dump(out.report);
  if (a.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) {
      std::cerr << "fulldp: cannot write " << a.output << "\n";
      return kExitInputError;
    }
    f << text;
  }
  return out.exit_code;
}
