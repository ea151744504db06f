#include "coalbranch/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "coalbranch/branching.hpp"
#include "coalbranch/coalescent.hpp"
#include "coalbranch/duality.hpp"
#include "coalbranch/frequency.hpp"
#include "coalbranch/parallel.hpp"
#include "coalbranch/params_json.hpp"
#include "coalbranch/rng.hpp"

namespace coalbranch {

namespace {

using nlohmann::json;

// Raised for malformed configuration; mapped to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json state_json(const std::vector<double>& x) { return json(x); }
json state_json(const BlockCounts& n) { return json(n); }
json state_json(const FreqMass& s) {
  return json{{"r", s.r}, {"z", s.z}, {"stopped", s.stopped}};
}
json state_json(const TypedPartition& pi) {
  json blocks = json::array();
  for (const TypedBlock& b : pi.blocks)
    blocks.push_back(json{{"elements", b.elements}, {"type", b.type}});
  return json{{"M", pi.ground_size}, {"blocks", std::move(blocks)}};
}

std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (char ch : field) {
    out += ch;
    if (ch == '"') out += '"';
  }
  out += '"';
  return out;
}

// Simulates `reps` independent trajectories (stream k = derive_stream(seed,k))
// and writes them as rep,time,state rows, ordered by (rep, time) no matter how
// the work was scheduled.
template <class Simulate>
void write_trajectories(const std::string& out_path, long long reps,
                        std::uint64_t seed, Simulate&& simulate) {
  if (out_path.empty())
    throw ConfigError("--out is required for trajectory output");
  if (reps <= 0) throw ConfigError("--reps must be positive");
  std::vector<std::string> chunks(static_cast<std::size_t>(reps));
  parallel_for(reps, [&](std::int64_t k) {
    const auto traj = simulate(derive_stream(seed, static_cast<std::uint64_t>(k)));
    std::ostringstream rows;
    for (std::size_t idx = 0; idx < traj.times.size(); ++idx) {
      json jt = traj.times[idx];
      rows << k << ',' << jt.dump() << ','
           << csv_quote(state_json(traj.states[idx]).dump()) << '\n';
    }
    chunks[static_cast<std::size_t>(k)] = rows.str();
  });
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file: " + out_path);
  out << "rep,time,state\n";
  for (const std::string& chunk : chunks) out << chunk;
}

void write_or_print(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file: " + out_path);
  out << j.dump(2) << '\n';
}

std::vector<double> need_vector(const std::vector<double>& v, const char* flag) {
  if (v.empty()) throw ConfigError(std::string(flag) + " is required");
  return v;
}

int run_validate(const RunConfig& cfg) {
  const json j = load_json_file(cfg.params_path);
  ValidationReport report;
  if (detect_params_kind(j) == ParamsKind::kBranching)
    report = validate_branching(branching_from_json(j));
  else
    report = validate_coalescent(coalescent_from_json(j));
  write_or_print(report_to_json(report), cfg.out_path);
  return report.ok ? 0 : 1;
}

int run_transform(const RunConfig& cfg) {
  const std::string in_path = cfg.in_path.empty() ? cfg.params_path : cfg.in_path;
  if (in_path.empty()) throw ConfigError("--in is required");
  const json j = load_json_file(in_path);
  const MassLevel z(need_vector(cfg.z, "--z"));
  json out;
  if (cfg.dir == "forward") {
    out = coalescent_to_json(h_z(branching_from_json(j), z));
  } else if (cfg.dir == "inverse") {
    const DiagonalAnchor anchor =
        cfg.a.empty() ? DiagonalAnchor::zeros(z.dim()) : DiagonalAnchor(cfg.a);
    out = branching_to_json(h_z_inverse(coalescent_from_json(j), z, anchor));
  } else {
    throw ConfigError("--dir must be 'forward' or 'inverse'");
  }
  if (cfg.out_path.empty()) throw ConfigError("--out is required");
  write_or_print(out, cfg.out_path);
  return 0;
}

int run_simulate_csbp(const RunConfig& cfg) {
  const BranchingParams p = branching_from_json(load_json_file(cfg.params_path));
  const std::vector<double> x0 = need_vector(cfg.x0, "--x0");
  write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
    return simulate_csbp(p, x0, cfg.horizon, cfg.dt, stream);
  });
  return 0;
}

int run_simulate_pair(const RunConfig& cfg) {
  const BranchingParams p = branching_from_json(load_json_file(cfg.params_path));
  const std::vector<double> r0 = need_vector(cfg.r0, "--r0");
  const std::vector<double> z0 = need_vector(cfg.z0, "--z0");
  write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
    return simulate_pair_rz(p, r0, z0, cfg.horizon, cfg.dt, stream, cfg.eps, cfg.L);
  });
  return 0;
}

int run_simulate_coalescent(const RunConfig& cfg) {
  const json j = load_json_file(cfg.params_path);
  if (cfg.mode == "blocks") {
    if (cfg.n0.empty()) throw ConfigError("--n0 is required in blocks mode");
    if (!cfg.z.empty()) {
      const BranchingParams p = branching_from_json(j);
      const MassLevel z(cfg.z);
      write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
        return simulate_block_counting(cfg.n0, p, z, cfg.horizon, stream);
      });
    } else {
      const CoalescentParams p = coalescent_from_json(j);
      write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
        return simulate_block_counting(cfg.n0, p, cfg.horizon, stream);
      });
    }
    return 0;
  }
  if (cfg.mode == "partition") {
    if (cfg.ground_size <= 0) throw ConfigError("--M is required in partition mode");
    std::vector<int> types = cfg.types;
    if (types.empty()) types.assign(static_cast<std::size_t>(cfg.ground_size), 0);
    const TypedPartition pi0 = TypedPartition::singletons(cfg.ground_size, types);
    const CoalescentParams p = cfg.z.empty()
                                   ? coalescent_from_json(j)
                                   : h_z(branching_from_json(j), MassLevel(cfg.z));
    write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
      return simulate_partition(pi0, p, cfg.horizon, stream);
    });
    return 0;
  }
  throw ConfigError("--mode must be 'blocks' or 'partition'");
}

int run_simulate_frequency(const RunConfig& cfg) {
  const BranchingParams p = branching_from_json(load_json_file(cfg.params_path));
  const MassLevel z(need_vector(cfg.z, "--z"));
  const std::vector<double> r0 = need_vector(cfg.r0, "--r0");
  if (cfg.mode == "sde") {
    const FreqParams fp = build_freq_params(p, z);
    write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
      return simulate_limit_sde(fp, r0, cfg.horizon, cfg.dt, stream);
    });
    return 0;
  }
  if (cfg.mode == "culling") {
    if (cfg.intensity < 1) throw ConfigError("--n is required in culling mode");
    const SeqSampleConfig sc{cfg.intensity, cfg.eps, cfg.L, cfg.inner_dt};
    write_trajectories(cfg.out_path, cfg.reps, cfg.seed, [&](std::uint64_t stream) {
      return sequential_sampling(p, z, r0, sc, cfg.horizon, stream);
    });
    return 0;
  }
  throw ConfigError("--mode must be 'sde' or 'culling'");
}

int run_verify_duality(const RunConfig& cfg) {
  const BranchingParams p = branching_from_json(load_json_file(cfg.params_path));
  const MassLevel z(need_vector(cfg.z, "--z"));
  const std::vector<double> r = need_vector(cfg.r, "--r");
  if (cfg.n0.empty()) throw ConfigError("--n is required");
  const DualityReport report =
      duality_check(p, z, r, cfg.n0, cfg.t, cfg.reps, cfg.dt, cfg.seed,
                    cfg.zthreshold, cfg.exact_backward);
  write_or_print(report_to_json(report), cfg.out_path);
  return report.passed ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::kValidate: return run_validate(cfg);
      case Command::kTransform: return run_transform(cfg);
      case Command::kSimulateCsbp: return run_simulate_csbp(cfg);
      case Command::kSimulatePair: return run_simulate_pair(cfg);
      case Command::kSimulateCoalescent: return run_simulate_coalescent(cfg);
      case Command::kSimulateFrequency: return run_simulate_frequency(cfg);
      case Command::kVerifyDuality: return run_verify_duality(cfg);
    }
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"multitype coalescent / branching-process simulation toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "base RNG seed");
    sub->add_option("--out", cfg.out_path, "output file");
    sub->add_option("--reps", cfg.reps, "independent repetitions");
  };
  auto add_vec = [&](CLI::App* sub, const char* flag, std::vector<double>& slot,
                     const char* help) {
    sub->add_option(flag, slot, help)->delimiter(',');
  };

  CLI::App* validate = app.add_subcommand("validate", "check a parameter file");
  validate->add_option("--params", cfg.params_path, "parameter JSON")->required();
  validate->add_option("--out", cfg.out_path, "report file (default stdout)");

  CLI::App* transform = app.add_subcommand("transform",
                                           "map parameters between the branching and coalescent worlds");
  transform->add_option("--dir", cfg.dir, "forward|inverse")->required();
  add_vec(transform, "--z", cfg.z, "mass level (csv)");
  add_vec(transform, "--a", cfg.a, "diagonal anchor for the inverse (csv)");
  transform->add_option("--in", cfg.in_path, "input parameter JSON")->required();
  transform->add_option("--out", cfg.out_path, "output parameter JSON")->required();

  CLI::App* csbp = app.add_subcommand("simulate-csbp", "branching-process paths");
  csbp->add_option("--params", cfg.params_path)->required();
  add_vec(csbp, "--x0", cfg.x0, "initial mass (csv)");
  csbp->add_option("--T", cfg.horizon, "time horizon");
  csbp->add_option("--dt", cfg.dt, "time step");
  add_common(csbp);

  CLI::App* pair = app.add_subcommand("simulate-pair",
                                      "paired frequency/total-mass paths");
  pair->add_option("--params", cfg.params_path)->required();
  add_vec(pair, "--r0", cfg.r0, "initial frequency (csv)");
  add_vec(pair, "--z0", cfg.z0, "initial total mass (csv)");
  pair->add_option("--eps", cfg.eps, "lower mass guard")->required();
  pair->add_option("--L", cfg.L, "upper mass guard")->required();
  pair->add_option("--T", cfg.horizon, "time horizon");
  pair->add_option("--dt", cfg.dt, "time step");
  add_common(pair);

  CLI::App* coal = app.add_subcommand("simulate-coalescent",
                                      "block-counting or partition-valued paths");
  coal->add_option("--mode", cfg.mode, "blocks|partition")->required();
  coal->add_option("--params", cfg.params_path)->required();
  add_vec(coal, "--z", cfg.z, "mass level: treat params as branching (csv)");
  coal->add_option("--n0", cfg.n0, "initial block counts (csv)")->delimiter(',');
  coal->add_option("--M", cfg.ground_size, "partition ground set size");
  coal->add_option("--types", cfg.types, "initial singleton types (csv)")->delimiter(',');
  coal->add_option("--T", cfg.horizon, "time horizon");
  add_common(coal);

  CLI::App* freq = app.add_subcommand("simulate-frequency",
                                      "frequency SDE or sequential sampling");
  freq->add_option("--mode", cfg.mode, "sde|culling")->required();
  freq->add_option("--params", cfg.params_path)->required();
  add_vec(freq, "--z", cfg.z, "mass level (csv)");
  add_vec(freq, "--r0", cfg.r0, "initial frequency (csv)");
  freq->add_option("--T", cfg.horizon, "time horizon");
  freq->add_option("--dt", cfg.dt, "time step (sde mode)");
  freq->add_option("--n", cfg.intensity, "sampling intensity (culling mode)");
  freq->add_option("--eps", cfg.eps, "lower mass guard (culling mode)");
  freq->add_option("--L", cfg.L, "upper mass guard (culling mode)");
  freq->add_option("--inner-dt", cfg.inner_dt, "inner pair step (culling mode)");
  add_common(freq);

  CLI::App* dual = app.add_subcommand("verify-duality",
                                      "compare forward and backward moments");
  dual->add_option("--params", cfg.params_path)->required();
  add_vec(dual, "--z", cfg.z, "mass level (csv)");
  add_vec(dual, "--r", cfg.r, "dual variable r (csv)");
  dual->add_option("--n", cfg.n0, "block counts n (csv)")->delimiter(',');
  dual->add_option("--t", cfg.t, "time");
  dual->add_option("--dt", cfg.dt, "forward time step");
  dual->add_option("--zthreshold", cfg.zthreshold, "pass threshold in z units");
  dual->add_flag("--exact-backward", cfg.exact_backward,
                 "solve the backward chain exactly");
  add_common(dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (validate->parsed()) cfg.command = Command::kValidate;
  else if (transform->parsed()) cfg.command = Command::kTransform;
  else if (csbp->parsed()) cfg.command = Command::kSimulateCsbp;
  else if (pair->parsed()) cfg.command = Command::kSimulatePair;
  else if (coal->parsed()) cfg.command = Command::kSimulateCoalescent;
  else if (freq->parsed()) cfg.command = Command::kSimulateFrequency;
  else cfg.command = Command::kVerifyDuality;

  return run(cfg);
}

}  // namespace coalbranch
