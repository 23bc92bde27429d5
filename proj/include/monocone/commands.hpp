#pragma once

// Command implementations behind the CLI: Monte Carlo sampling campaigns,
// the generalized-GHZ scan, single-state evaluation and the invariant
// verifier. Kept header-only and callable from tests.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "monocone/cone.hpp"
#include "monocone/records.hpp"
#include "monocone/svg_plot.hpp"
#include "monocone/version.hpp"

namespace monocone {

struct RunConfig {
  uint64_t n_samples = 1000;
  std::vector<StateFamily> families{StateFamily::haar};
  uint64_t seed = 0;
  MeasureTag measure = MeasureTag::concurrence_squared;
  std::string node = "max-schmidt";  // A | B | C | max-schmidt
  int alpha_grid = 101;
  std::string out_path;
  std::string svg_path;
  int workers = 1;
  double tol_tangle = kEntanglementConeTol;
  double tol_discord = kDiscordConeTol;
  // eval inputs
  std::vector<double> eval_amps;  // 16 reals: re0, im0, ..., re7, im7
  double alpha = -1.0;
  uint64_t stream = 0;
};

namespace detail {

template <typename Fn>
void parallel_for(uint64_t n, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    for (uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  const auto worker = [&] {
    constexpr uint64_t kChunk = 16;
    for (;;) {
      const uint64_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const uint64_t end = std::min(n, begin + kChunk);
      for (uint64_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

inline PureState3Q sample_family(StateFamily fam, RngStream rng) {
  switch (fam) {
    case StateFamily::haar: return sample_haar(rng);
    case StateFamily::ghz_class: return sample_ghz_class(rng);
    case StateFamily::w_class: return sample_w_class(rng);
    case StateFamily::gen_ghz: {
      const double alpha_sq = 0.5 + 0.5 * rng.next_unit();
      return generalized_ghz(std::sqrt(alpha_sq));
    }
    case StateFamily::explicit_state: break;
  }
  throw std::invalid_argument("sample_family: family is not sampleable");
}

inline std::string families_csv(const std::vector<StateFamily>& fams) {
  std::string s;
  for (size_t i = 0; i < fams.size(); ++i) {
    if (i) s += ',';
    s += family_name(fams[i]);
  }
  return s;
}

inline const char* family_color(StateFamily f) {
  switch (f) {
    case StateFamily::ghz_class: return "#1f77b4";
    case StateFamily::w_class: return "#2ca02c";
    case StateFamily::gen_ghz: return "#e6a117";
    case StateFamily::haar: return "#555555";
    case StateFamily::explicit_state: break;
  }
  return "#888888";
}

inline double record_x_value(const MeasureRecord& r, MeasureTag measure, const std::string& node) {
  if (measure == MeasureTag::concurrence_squared) return r.delta_c;
  if (node == "A") return r.delta_d_node_a;
  if (node == "B") return r.delta_d_node_b;
  if (node == "C") return r.delta_d_node_c;
  if (node == "max-schmidt") return r.delta_d_max_schmidt;
  throw std::invalid_argument("node must be one of A, B, C, max-schmidt");
}

inline void write_sample_svg(const std::string& path, const std::vector<MeasureRecord>& records,
                             const std::vector<StateFamily>& fams, MeasureTag measure,
                             const std::string& node) {
  std::vector<SvgSeries> series;
  for (StateFamily f : fams) {
    SvgSeries s{family_name(f), family_color(f), {}};
    for (const MeasureRecord& r : records)
      if (r.family == f) s.points.push_back({record_x_value(r, measure, node), r.ggm});
    if (!s.points.empty()) series.push_back(std::move(s));
  }

  std::vector<SvgCurve> curves;
  constexpr int kCurvePoints = 512;
  if (measure == MeasureTag::concurrence_squared) {
    SvgCurve cone{"boundary", "#d62728", {}};
    for (int k = 0; k <= kCurvePoints; ++k) {
      const double d = static_cast<double>(k) / kCurvePoints;
      cone.points.push_back({d, entanglement_boundary(d)});
    }
    curves.push_back(std::move(cone));
    curves.push_back(SvgCurve{"", "#d62728", {{0.0, 0.0}, {0.0, 0.5}}});
    write_scatter_svg(path, "GGM vs tangle monogamy score", "delta_C", "GGM", series, curves);
  } else {
    SvgCurve plus{"boundary", "#d62728", {}};
    SvgCurve minus{"", "#d62728", {}};
    for (int k = 0; k <= kCurvePoints; ++k) {
      const double e = 0.5 * static_cast<double>(k) / kCurvePoints;
      plus.points.push_back({discord_bound(e), e});
      minus.points.push_back({-discord_bound(e), e});
    }
    curves.push_back(std::move(plus));
    curves.push_back(std::move(minus));
    write_scatter_svg(path, "GGM vs discord monogamy score", "delta_D", "GGM", series, curves);
  }
}

}  // namespace detail

/// Sample states, evaluate records, emit CSV (and optionally SVG). Exit code
/// 0 on a clean run, 1 if any sampled state violates the selected cone at the
/// configured tolerance, 2 if any state failed to evaluate.
inline int cmd_sample(const RunConfig& config) {
  if (config.n_samples < 1) throw std::invalid_argument("sample: --n must be at least 1");
  if (config.families.empty()) throw std::invalid_argument("sample: at least one family");
  if (config.out_path.empty()) throw std::invalid_argument("sample: --out is required");
  if (config.node != "A" && config.node != "B" && config.node != "C" &&
      config.node != "max-schmidt")
    throw std::invalid_argument("sample: --node must be one of A, B, C, max-schmidt");

  const uint64_t n = config.n_samples;
  std::vector<MeasureRecord> records(n);
  std::vector<uint8_t> failed(n, 0);
  std::atomic<uint64_t> failures{0};

  detail::parallel_for(n, config.workers, [&](uint64_t i) {
    const StateFamily fam = config.families[i % config.families.size()];
    try {
      const PureState3Q psi = detail::sample_family(fam, RngStream::make(config.seed, i));
      records[i] = evaluate_record(psi, i, config.seed, i);
    } catch (const std::exception&) {
      failed[i] = 1;
      failures.fetch_add(1);
    }
  });

  std::vector<MeasureRecord> ok;
  ok.reserve(n);
  for (uint64_t i = 0; i < n; ++i)
    if (!failed[i]) ok.push_back(records[i]);

  uint64_t violations = 0;
  for (const MeasureRecord& r : ok) {
    const bool bad = config.measure == MeasureTag::concurrence_squared
                         ? r.theorem1_margin < -config.tol_tangle
                         : r.theorem2_margin < -config.tol_discord;
    violations += bad ? 1 : 0;
  }

  CsvMetadata meta{"sample", config.seed, n, detail::families_csv(config.families),
                   config.tol_tangle, config.tol_discord};
  write_records_csv(config.out_path, ok, meta);
  if (!config.svg_path.empty())
    detail::write_sample_svg(config.svg_path, ok, config.families, config.measure, config.node);

  std::cerr << "sample: n=" << n << " evaluated=" << ok.size() << " failures=" << failures.load()
            << " violations=" << violations << " -> " << config.out_path << "\n";
  if (failures.load() > 0) return 2;
  return violations > 0 ? 1 : 0;
}

/// Scan the generalized-GHZ family on a uniform alpha^2 grid and emit the
/// computed scores next to their analytic values.
inline int cmd_scan_gg(const RunConfig& config) {
  if (config.alpha_grid < 2) throw std::invalid_argument("scan-gg: --alpha-grid must be at least 2");
  if (config.out_path.empty()) throw std::invalid_argument("scan-gg: --out is required");

  std::ofstream out(config.out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + config.out_path);
  CsvMetadata meta{"scan-gg", config.seed, static_cast<uint64_t>(config.alpha_grid), "gen_ghz",
                   config.tol_tangle, config.tol_discord};
  write_csv_preamble(out, meta);
  out << "alpha_sq,delta_c,delta_d,ggm,delta_c_analytic,delta_d_analytic,ggm_analytic,"
         "residual_delta_c,residual_delta_d,residual_ggm\n";

  for (int k = 0; k < config.alpha_grid; ++k) {
    const double alpha_sq = 0.5 + 0.5 * static_cast<double>(k) / (config.alpha_grid - 1);
    const PureState3Q psi = generalized_ghz(std::sqrt(alpha_sq));
    const double delta_c = monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value;
    const double delta_d = monogamy_score(MeasureTag::discord, psi, Party::A).value;
    const double e = ggm(psi).ggm;
    const double delta_c_ref = 4.0 * alpha_sq * (1.0 - alpha_sq);
    const double delta_d_ref = binary_entropy(alpha_sq);
    const double ggm_ref = 1.0 - alpha_sq;
    out << format_g17(alpha_sq) << ',' << format_g17(delta_c) << ',' << format_g17(delta_d) << ','
        << format_g17(e) << ',' << format_g17(delta_c_ref) << ',' << format_g17(delta_d_ref) << ','
        << format_g17(ggm_ref) << ',' << format_g17(std::abs(delta_c - delta_c_ref)) << ','
        << format_g17(std::abs(delta_d - delta_d_ref)) << ','
        << format_g17(std::abs(e - ggm_ref)) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + config.out_path);
  return 0;
}

namespace detail {

inline PureState3Q eval_input_state(const RunConfig& config, double& input_norm) {
  if (!config.eval_amps.empty()) {
    if (config.eval_amps.size() != 16)
      throw std::invalid_argument("eval: --amps needs 16 comma-separated reals (re,im per amplitude)");
    std::array<cplx, 8> amps;
    double n2 = 0.0;
    for (size_t i = 0; i < 8; ++i) {
      amps[i] = cplx(config.eval_amps[2 * i], config.eval_amps[2 * i + 1]);
      n2 += std::norm(amps[i]);
    }
    input_norm = std::sqrt(n2);
    return PureState3Q::renormalized(amps);
  }
  const StateFamily fam = config.families.empty() ? StateFamily::haar : config.families.front();
  if (fam == StateFamily::gen_ghz) {
    if (config.alpha < 0.0) throw std::invalid_argument("eval: --alpha is required for gen_ghz");
    input_norm = 1.0;
    return generalized_ghz(config.alpha);
  }
  input_norm = 1.0;
  return sample_family(fam, RngStream::make(config.seed, config.stream));
}

}  // namespace detail

/// Evaluate every measure for one state and emit a JSON report.
inline int cmd_eval(const RunConfig& config, std::ostream& fallback = std::cout) {
  double input_norm = 1.0;
  const PureState3Q psi = detail::eval_input_state(config, input_norm);

  nlohmann::json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  {
    nlohmann::json amps = nlohmann::json::array();
    for (int i = 0; i < 8; ++i)
      amps.push_back({std::real(psi.amp(i)), std::imag(psi.amp(i))});
    j["input"] = {{"family", family_name(psi.family())},
                  {"input_norm", input_norm},
                  {"renormalized", std::abs(input_norm - 1.0) > 1e-12},
                  {"amplitudes", amps}};
  }

  for (Party p : kParties) {
    const DensityMatrix rho = psi.marginal(p);
    const std::vector<double> ev = hermitian_eigs(rho.matrix());
    const std::string key(1, party_label(p));
    j["marginals"][key] = {{"eigenvalues", ev}, {"entropy", von_neumann_entropy(rho)}};
    j["tangle_node_rest"][key] = tangle_bipartition(psi, p);
  }

  const std::array<std::pair<Party, Party>, 3> pairs{
      {{Party::A, Party::B}, {Party::A, Party::C}, {Party::B, Party::C}}};
  for (const auto& [x, y] : pairs) {
    const DensityMatrix rho = psi.pair_reduction(x, y);
    const std::string key = std::string(1, party_label(x)) + party_label(y);
    const double c = concurrence(rho);
    j["pairs"][key] = {{"concurrence", c},
                       {"eof", eof_from_concurrence(c)},
                       {"mutual_information", quantum_mutual_information(rho)}};
  }
  for (Party node : kParties)
    for (Party other : partners_of(node)) {
      const std::string key = std::string(1, party_label(node)) + party_label(other);
      j["discords"][key] = quantum_discord(psi.pair_reduction(node, other));
    }

  const GgmResult g = ggm(psi);
  j["ggm"] = {{"value", g.ggm},
              {"max_schmidt_party", std::string(1, party_label(g.max_schmidt_party))},
              {"eigen_triple", g.eigen_triple},
              {"tie", g.tie}};

  j["monogamy"]["delta_c"] = monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value;
  for (Party p : kParties) {
    const std::string key(1, party_label(p));
    j["monogamy"]["delta_d"][key] = monogamy_score(MeasureTag::discord, psi, p).value;
    j["monogamy"]["delta_d_koashi_winter"][key] = delta_d_koashi_winter(psi, p);
  }
  j["monogamy"]["delta_d_max_schmidt"] =
      j["monogamy"]["delta_d"][std::string(1, party_label(g.max_schmidt_party))];

  j["dissension"] = dissension(psi);
  j["koashi_winter_residual"] = koashi_winter_residual(psi);

  const ConeVerdict t1 = verify_theorem1(psi, config.tol_tangle);
  const ConeVerdict t2 = verify_theorem2(psi, config.tol_discord);
  j["cone"]["theorem1"] = {{"inside", t1.inside},
                           {"margin", t1.margin},
                           {"node", std::string(1, party_label(t1.node_used))}};
  j["cone"]["theorem2"] = {{"inside", t2.inside},
                           {"margin", t2.margin},
                           {"node", std::string(1, party_label(t2.node_used))}};

  if (config.out_path.empty()) {
    fallback << j.dump(2) << "\n";
  } else {
    std::ofstream out(config.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + config.out_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

namespace detail {

struct VerifyCheck {
  std::string name;
  double worst = 0.0;      // signed; positive means in violation by that much
  double tolerance = 0.0;
  uint64_t worst_id = 0;
  bool pass() const { return worst <= tolerance; }
};

}  // namespace detail

/// Re-derive the core invariants over freshly sampled states and report the
/// worst deviation per check. Exit 0 iff every check passes; on failure the
/// worst offending state is serialized for replay.
inline int cmd_verify(const RunConfig& config, std::ostream& fallback = std::cout) {
  if (config.n_samples < 1) throw std::invalid_argument("verify: --n must be at least 1");
  if (config.families.empty()) throw std::invalid_argument("verify: at least one family");

  const uint64_t n = config.n_samples;
  struct Row {
    double t1_excess, t2_excess, delta_c_neg, node_spread, kw, dissension_gap;
    std::array<double, 3> t2_excess_node;
  };
  std::vector<Row> rows(n);
  std::vector<PureState3Q> states;
  states.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    const StateFamily fam = config.families[i % config.families.size()];
    states.push_back(detail::sample_family(fam, RngStream::make(config.seed, i)));
  }

  detail::parallel_for(n, config.workers, [&](uint64_t i) {
    const PureState3Q& psi = states[i];
    Row& row = rows[i];
    const GgmResult g = ggm(psi);
    std::array<double, 3> delta_c{};
    for (Party p : kParties)
      delta_c[static_cast<size_t>(p)] =
          monogamy_score(MeasureTag::concurrence_squared, psi, p).value;
    std::array<double, 3> delta_d{};
    for (Party p : kParties)
      delta_d[static_cast<size_t>(p)] = monogamy_score(MeasureTag::discord, psi, p).value;

    row.t1_excess = -theorem1_margin(delta_c[0], g.ggm);
    row.t2_excess = -theorem2_margin(delta_d[static_cast<size_t>(g.max_schmidt_party)], g.ggm);
    for (Party p : kParties)
      row.t2_excess_node[static_cast<size_t>(p)] =
          -theorem2_margin(delta_d[static_cast<size_t>(p)], g.ggm);
    row.delta_c_neg = -delta_c[0];
    row.node_spread = std::max({delta_c[0], delta_c[1], delta_c[2]}) -
                      std::min({delta_c[0], delta_c[1], delta_c[2]});
    row.kw = koashi_winter_residual(psi);
    row.dissension_gap = std::abs(dissension(psi) + delta_d[0]);
  });

  std::vector<detail::VerifyCheck> checks{
      {"theorem1_membership", -1e300, config.tol_tangle, 0},
      {"theorem2_membership_max_schmidt", -1e300, config.tol_discord, 0},
      {"delta_c_nonnegative", -1e300, -kDeltaCNoiseFloor, 0},
      {"delta_c_node_spread", -1e300, kEntanglementConeTol, 0},
      {"koashi_winter_identity", -1e300, config.tol_discord, 0},
      {"dissension_is_minus_delta_d", -1e300, config.tol_discord, 0},
  };
  std::array<double, 3> t2_node_worst{-1e300, -1e300, -1e300};
  for (uint64_t i = 0; i < n; ++i) {
    const Row& row = rows[i];
    const std::array<double, 6> vals{row.t1_excess, row.t2_excess,    row.delta_c_neg,
                                     row.node_spread, row.kw, row.dissension_gap};
    for (size_t k = 0; k < 6; ++k)
      if (vals[k] > checks[k].worst) {
        checks[k].worst = vals[k];
        checks[k].worst_id = i;
      }
    for (size_t p = 0; p < 3; ++p)
      t2_node_worst[p] = std::max(t2_node_worst[p], row.t2_excess_node[p]);
  }

  bool all_pass = true;
  for (const detail::VerifyCheck& c : checks) all_pass = all_pass && c.pass();

  const bool json_out =
      config.out_path.size() > 5 &&
      config.out_path.compare(config.out_path.size() - 5, 5, ".json") == 0;
  const auto serialize_state = [&](uint64_t id) {
    nlohmann::json s;
    s["state_id"] = id;
    s["family"] = family_name(states[id].family());
    s["seed"] = config.seed;
    s["stream"] = id;
    nlohmann::json amps = nlohmann::json::array();
    for (int i = 0; i < 8; ++i)
      amps.push_back({std::real(states[id].amp(i)), std::imag(states[id].amp(i))});
    s["amplitudes"] = amps;
    return s;
  };

  if (json_out) {
    nlohmann::json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["config"] = {{"n", n},
                   {"seed", config.seed},
                   {"families", detail::families_csv(config.families)},
                   {"tol_tangle", config.tol_tangle},
                   {"tol_discord", config.tol_discord}};
    for (const detail::VerifyCheck& c : checks) {
      nlohmann::json row = {{"name", c.name},
                            {"worst", c.worst},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass()},
                            {"worst_state_id", c.worst_id}};
      if (!c.pass()) row["worst_state"] = serialize_state(c.worst_id);
      j["checks"].push_back(row);
    }
    j["observations"]["theorem2_excess_by_node"] = {
        {"A", t2_node_worst[0]}, {"B", t2_node_worst[1]}, {"C", t2_node_worst[2]}};
    j["pass"] = all_pass;
    std::ofstream out(config.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + config.out_path);
    out << j.dump(2) << "\n";
  } else {
    std::ostream* osp = &fallback;
    std::ofstream file;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) throw std::runtime_error("cannot open output file: " + config.out_path);
      osp = &file;
    }
    std::ostream& os = *osp;
    os << "verify: n=" << n << " seed=" << config.seed
       << " families=" << detail::families_csv(config.families) << "\n";
    for (const detail::VerifyCheck& c : checks) {
      os << "  " << c.name << ": worst=" << format_g17(c.worst)
         << " tolerance=" << format_g17(c.tolerance) << " " << (c.pass() ? "ok" : "VIOLATION")
         << "\n";
      if (!c.pass()) os << "    worst_state=" << serialize_state(c.worst_id).dump() << "\n";
    }
    os << "  theorem2 excess by node: A=" << format_g17(t2_node_worst[0])
       << " B=" << format_g17(t2_node_worst[1]) << " C=" << format_g17(t2_node_worst[2]) << "\n";
    os << "result: " << (all_pass ? "PASS" : "FAIL") << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace monocone
