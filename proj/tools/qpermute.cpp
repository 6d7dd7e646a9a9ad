#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpermute/config.hpp"
#include "qpermute/device.hpp"
#include "qpermute/errors.hpp"
#include "qpermute/noise.hpp"
#include "qpermute/oracle.hpp"

namespace {

using namespace qpermute;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInternal = 2;

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path);
  }
  out << content;
}

std::string timelineSummary(const PulseSchedule& schedule) {
  std::ostringstream out;
  out << "pulse timeline (" << schedule.timeline.size() << " pulses)\n";
  const SwitchId* current = nullptr;
  for (const PulseInterval& interval : schedule.timeline) {
    if (!current || !(*current == interval.id)) {
      out << to_string(interval.id) << ":\n";
      current = &interval.id;
    }
    out << "  [" << interval.startPs << " ps, " << interval.endPs << " ps]\n";
  }
  return out.str();
}

int cmdSchedule(const std::string& configPath, const std::string& outPath,
                const std::string& format) {
  const SimulationConfig config = loadSimulationConfig(configPath);
  const SwitchNetwork net = SwitchNetwork::build(config.nOperators);
  const PulseSchedule schedule =
      buildSchedule(config.schedulerParams(), net, config.occupiedBins());
  const ordered_json j = scheduleToJson(schedule);
  writeFile(outPath, j.dump(2) + "\n");
  if (format == "machine") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "schedule written to " << outPath << "\n"
              << "switches: " << net.switchCount() << ", logical entries: "
              << schedule.logical.size() << "\n"
              << timelineSummary(schedule);
  }
  return kExitOk;
}

int cmdSimulate(const std::string& configPath, const std::string& outPath,
                const std::string& format) {
  const SimulationConfig config = loadSimulationConfig(configPath);
  const SwitchNetwork net = SwitchNetwork::build(config.nOperators);
  const PulseSchedule schedule =
      buildSchedule(config.schedulerParams(), net, config.occupiedBins());

  const PhotonState input = config.inputState();
  OperatorProvider provider = fixedOperators(config.operators);
  if (config.driftSigma && *config.driftSigma > 0) {
    provider = driftedOperators(config.operators,
                                {*config.driftSigma, config.seed});
  }
  const PhotonState output = runDevice(config, schedule, provider);

  const PhotonState oracle = metaOperatorOutput(
      config.operators, config.normalizedControlAmplitudes(),
      config.normalizedPolarization(), config.nOperators, config.passes);
  const double fid = fidelity(output, oracle);
  const double normResidual = std::abs(output.norm() - 1.0);

  ordered_json report;
  report["config"] = simulationConfigToJson(config);
  report["fidelity_vs_oracle"] = fid;
  report["norm_residual"] = normResidual;
  report["occupied_bins"] = output.amplitudes().size();
  report["output"] = ordered_json::array();
  for (const auto& [key, spinor] : output.amplitudes()) {
    report["output"].push_back(
        {{"bin", key.bin},
         {"mode", key.mode},
         {"h", {spinor.h.real(), spinor.h.imag()}},
         {"v", {spinor.v.real(), spinor.v.imag()}}});
  }
  writeFile(outPath, report.dump(2) + "\n");

  if (format == "machine") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(15) << "fidelity vs oracle: " << fid << "\n"
              << "norm residual:      " << normResidual << "\n"
              << "occupied bins:      " << output.amplitudes().size() << "\n";
    for (const auto& [key, spinor] : output.amplitudes()) {
      std::cout << "  t_" << key.bin << " x_" << key.mode << "  h=("
                << spinor.h.real() << ", " << spinor.h.imag() << ")  v=("
                << spinor.v.real() << ", " << spinor.v.imag() << ")\n";
    }
    std::cout << "report written to " << outPath << "\n";
  }
  return kExitOk;
}

SimulationConfig randomConfig(int n, int m, std::mt19937_64& rng) {
  SimulationConfig config;
  config.nOperators = n;
  config.passes = m;
  for (int i = 0; i < n; ++i) {
    config.operators.push_back(haarRandomUnitary(rng));
  }
  config.inputPolarization = randomSpinor(rng);
  const std::int64_t bins = ipow(n, m);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::int64_t support = std::min<std::int64_t>(bins, 16);
  std::uniform_int_distribution<std::int64_t> pick(0, bins - 1);
  for (std::int64_t i = 0; i < support; ++i) {
    config.controlAmplitudes[pick(rng)] = {gauss(rng), gauss(rng)};
  }
  config.timing.binSpacingPs = 40;
  config.timing.loopDelayPs = static_cast<double>(bins) * 40;
  config.seed = rng();
  return config;
}

int cmdVerify(int n, int m, int trials, std::uint64_t seed,
              std::int64_t binBudget) {
  std::int64_t bins = 0;
  bool overflow = false;
  try {
    bins = ipow(n, m);
  } catch (const ConfigError&) {
    overflow = true;
  }
  if (overflow || bins > binBudget) {
    std::cerr << "refusing: " << n << "^" << m
              << " time bins exceeds the budget of " << binBudget
              << "; lower --n/--m or raise --bin-budget\n";
    return kExitInvalid;
  }

  const SwitchNetwork net = SwitchNetwork::build(n);
  int checks = 0;

  // Routing reaches every leaf and returns, exhaustively.
  {
    SchedulerParams params{n, 1, 40, static_cast<double>(n) * 40, 10, 5, 0};
    for (int leaf = 0; leaf < n; ++leaf) {
      PulseSchedule schedule;
      schedule.params = params;
      for (Side side : {Side::Mux, Side::Demux}) {
        for (const SwitchSetting& setting : routeSettings(leaf, net, side)) {
          schedule.logical[{setting.id, 0, 0}] = setting.on;
        }
      }
      PhotonState probe(n, 1);
      probe.set(0, 0, {1, 0});
      PhotonState routed = probe;
      for (int level = 0; level < net.levels(); ++level) {
        for (const SwitchId& id : net.switches(Side::Mux)) {
          if (id.level == level) {
            routed = applySwitch(routed, net, id, schedule.isOn(id, 0, 0), 0);
          }
        }
      }
      if (!routed.find(0, leaf)) {
        std::cerr << "FAIL: mux routing missed leaf x_" << leaf << "\n";
        return kExitInternal;
      }
      ++checks;
    }
  }

  // Device vs brute-force oracle on random instances.
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const SimulationConfig config = randomConfig(n, m, rng);
    try {
      const PulseSchedule schedule =
          buildSchedule(config.schedulerParams(), net, config.occupiedBins());
      const PhotonState out = runDevice(config, schedule);
      const PhotonState oracle = metaOperatorOutput(
          config.operators, config.normalizedControlAmplitudes(),
          config.normalizedPolarization(), n, m);
      const double fid = fidelity(out, oracle);
      const double normResidual = std::abs(out.norm() - 1.0);
      if (fid < 1.0 - kStateNormTol || normResidual > kStateNormTol) {
        throw std::logic_error("device/oracle mismatch, fidelity " +
                               std::to_string(fid));
      }

      // Serial and parallel engines agree.
      const PhotonState serial =
          runDeviceSerial(config.inputState(), net, schedule,
                          fixedOperators(config.operators), m);
      if (fidelity(out, serial) < 1.0 - kAlgebraTol) {
        throw std::logic_error("serial/parallel engine mismatch");
      }

      // Schedule compilation is deterministic.
      const PulseSchedule again =
          buildSchedule(config.schedulerParams(), net, config.occupiedBins());
      if (scheduleToJson(schedule) != scheduleToJson(again)) {
        throw std::logic_error("schedule compilation not deterministic");
      }
      ++checks;
    } catch (const std::exception& e) {
      std::cerr << "FAIL (trial " << trial << "): " << e.what() << "\n";
      const std::string dump = "failing_config.json";
      writeFile(dump, simulationConfigToJson(config).dump(2) + "\n");
      std::cerr << "failing config dumped to " << dump << "\n";
      return kExitInternal;
    }
  }

  if (m == n) {
    const auto bins = permutationBins(n);
    std::int64_t factorial = 1;
    for (int i = 2; i <= n; ++i) {
      factorial *= i;
    }
    if (static_cast<std::int64_t>(bins.size()) != factorial) {
      std::cerr << "FAIL: permutation bin count " << bins.size() << " != "
                << factorial << "\n";
      return kExitInternal;
    }
    ++checks;
  }

  const auto discrepancies = routingDiscrepancies({n});
  std::cout << "all " << checks << " checks passed (" << trials
            << " random trials)\n"
            << "closed-form routing comparison: " << discrepancies.size()
            << " disagreements recorded\n";
  return kExitOk;
}

int cmdDriftSweep(const std::string& configPath, std::vector<double> sigmas,
                  int trials, const std::string& outPath) {
  const SimulationConfig config = loadSimulationConfig(configPath);
  if (sigmas.empty()) {
    sigmas = {0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05};
  }
  const auto rows = driftFidelitySweep(config, sigmas, trials);
  std::ostringstream table;
  table << "sigma\tmean_fidelity\tstd_fidelity\ttrials\n"
        << std::setprecision(12);
  for (const DriftSweepRow& row : rows) {
    table << row.sigma << "\t" << row.meanFidelity << "\t" << row.stdFidelity
          << "\t" << row.trials << "\n";
  }
  std::cout << table.str();
  if (!outPath.empty()) {
    writeFile(outPath, table.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and pulse-schedule compiler for the tree-switched "
               "operator-permutation device"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outPath;
  std::string format = "text";

  auto* schedule = app.add_subcommand(
      "schedule", "Compile a config into a pulse schedule");
  schedule->add_option("--config", configPath, "config file (JSON)")
      ->required();
  std::string scheduleOut = "schedule.json";
  schedule->add_option("--out", scheduleOut, "schedule output path");
  schedule->add_option("--format", format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* simulate = app.add_subcommand(
      "simulate", "Run the device and compare against the brute-force oracle");
  simulate->add_option("--config", configPath, "config file (JSON)")
      ->required();
  std::string simulateOut = "report.json";
  simulate->add_option("--out", simulateOut, "report output path");
  simulate->add_option("--format", format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* verify = app.add_subcommand(
      "verify", "Randomized property suite over all modules");
  int n = 2;
  int m = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  std::int64_t binBudget = 65536;
  verify->add_option("--n", n, "operator count (power of two)");
  verify->add_option("--m", m, "pass count");
  verify->add_option("--trials", trials, "random instances");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--bin-budget", binBudget, "max N^M time bins");

  auto* drift = app.add_subcommand(
      "drift-sweep", "Fidelity vs operator drift magnitude");
  drift->add_option("--config", configPath, "config file (JSON)")->required();
  std::vector<double> sigmas;
  int driftTrials = 50;
  drift->add_option("--sigmas", sigmas, "drift std-devs (radians)");
  drift->add_option("--trials", driftTrials, "trials per sigma");
  drift->add_option("--out", outPath, "also write the table to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (schedule->parsed()) {
      return cmdSchedule(configPath, scheduleOut, format);
    }
    if (simulate->parsed()) {
      return cmdSimulate(configPath, simulateOut, format);
    }
    if (verify->parsed()) {
      return cmdVerify(n, m, trials, seed, binBudget);
    }
    if (drift->parsed()) {
      return cmdDriftSweep(configPath, sigmas, driftTrials, outPath);
    }
  } catch (const TimingInfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
