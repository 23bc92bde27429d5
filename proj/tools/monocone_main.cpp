// monocone command-line tool: sample | scan-gg | eval | verify.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "monocone/commands.hpp"
#include "monocone/version.hpp"

namespace {

std::vector<monocone::StateFamily> parse_families(const std::string& csv) {
  std::vector<monocone::StateFamily> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(monocone::family_from_name(item));
  }
  if (out.empty()) throw std::invalid_argument("--family: no families given");
  return out;
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("--amps: bad number: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(monocone::kToolName) +
               " - correlation measures and monogamy light cones for three-qubit pure states"};
  app.set_version_flag("--version", monocone::kToolVersion);
  app.require_subcommand(1);

  monocone::RunConfig config;
  std::string families_csv = "haar";
  std::string measure = "tangle";
  std::string amps_csv;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "base RNG seed");
    sub->add_option("--out", config.out_path, "output file path");
    sub->add_option("--workers", config.workers, "worker thread count")->check(CLI::PositiveNumber);
    sub->add_option("--tol-tangle", config.tol_tangle, "entanglement-cone tolerance");
    sub->add_option("--tol-discord", config.tol_discord, "discord-cone tolerance (bits)");
  };

  CLI::App* sample = app.add_subcommand("sample", "sample random states and record cone data");
  sample->add_option("--family", families_csv, "comma-separated families to sample");
  sample->add_option("--n", config.n_samples, "total number of states across families");
  sample->add_option("--measure", measure, "cone to gate the exit code on: tangle | discord");
  sample->add_option("--node", config.node, "nodal observer for the discord axis");
  sample->add_option("--svg", config.svg_path, "optional scatter-plot output path");
  add_common(sample);

  CLI::App* scan = app.add_subcommand("scan-gg", "scan the generalized-GHZ family");
  scan->add_option("--alpha-grid", config.alpha_grid, "number of alpha^2 grid points");
  add_common(scan);

  CLI::App* eval = app.add_subcommand("eval", "evaluate all measures for one state");
  eval->add_option("--amps", amps_csv, "16 comma-separated reals: re,im per amplitude");
  eval->add_option("--family", families_csv, "state family (with --alpha or --seed/--stream)");
  eval->add_option("--alpha", config.alpha, "generalized-GHZ alpha in [1/sqrt(2), 1]");
  eval->add_option("--stream", config.stream, "RNG stream id for sampled families");
  add_common(eval);

  CLI::App* verify = app.add_subcommand("verify", "re-check invariants over sampled states");
  verify->add_option("--family", families_csv, "comma-separated families to sample")
      ->default_str("haar,ghz_class,w_class,gen_ghz");
  verify->add_option("--n", config.n_samples, "number of states to check");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (sample->parsed() || eval->parsed()) config.families = parse_families(families_csv);
    if (verify->parsed()) {
      const bool family_given = verify->count("--family") > 0;
      config.families = parse_families(family_given ? families_csv
                                                    : "haar,ghz_class,w_class,gen_ghz");
    }
    if (measure == "tangle") config.measure = monocone::MeasureTag::concurrence_squared;
    else if (measure == "discord") config.measure = monocone::MeasureTag::discord;
    else throw std::invalid_argument("--measure must be tangle or discord");
    if (!amps_csv.empty()) config.eval_amps = parse_reals(amps_csv);

    if (sample->parsed()) return monocone::cmd_sample(config);
    if (scan->parsed()) return monocone::cmd_scan_gg(config);
    if (eval->parsed()) return monocone::cmd_eval(config);
    if (verify->parsed()) return monocone::cmd_verify(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
