// nestchase: generate instances, run online algorithms, compute offline
// optima and collect run summaries.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nestchase/adversary.hpp"
#include "nestchase/baselines.hpp"
#include "nestchase/errors.hpp"
#include "nestchase/harness.hpp"
#include "nestchase/io.hpp"

namespace fs = std::filesystem;
using namespace nestchase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;
constexpr int kExitConvergence = 4;

int exit_code_for(const std::exception_ptr& failure) {
  try {
    std::rethrow_exception(failure);
  } catch (const ParseError&) {
    return kExitParse;
  } catch (const ConvergenceError&) {
    return kExitConvergence;
  } catch (...) {
    return kExitInfeasible;
  }
}

struct GenArgs {
  std::string generator;
  std::size_t d = 2;
  std::size_t n = 20;
  std::uint64_t seed = 1;
  std::string out;
};

struct RunArgs {
  std::vector<std::string> algorithms;
  std::vector<std::string> instances;
  std::string adversary;
  double alpha = 0.5;
  std::size_t n = 50;
  std::uint64_t seed = 0x5eed;
  bool strict = false;
  std::string out_dir = "runs";
  unsigned jobs = 1;
};

struct Task {
  std::string algorithm;
  std::string instance_id;
  std::optional<NestedInstance> instance;
};

int do_gen(const GenArgs& a) {
  NestedInstance inst;
  if (a.generator == "random") {
    inst = gen_random_nested(a.d, a.n, a.seed);
  } else if (a.generator == "covering") {
    inst = gen_covering_lp(a.d, a.n, a.seed);
  } else {
    throw ContractViolation("unknown generator '" + a.generator + "' (expected random or covering)");
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << format_instance(inst);
  } else {
    save_instance(inst, a.out);
  }
  return kExitOk;
}

RunResult execute(const Task& task, const RunArgs& a) {
  AlgorithmOptions options;
  options.chase.strict = a.strict;
  options.centroid.seed = a.seed;
  RunFlags flags;
  flags.strict = a.strict;

  std::unique_ptr<RequestSource> source;
  if (task.instance) {
    source = std::make_unique<InstanceSource>(*task.instance);
  } else {
    source = std::make_unique<Section4Adversary>(a.alpha, a.n);
  }
  auto algorithm = make_algorithm(task.algorithm, source->start(), options);
  return run(*algorithm, *source, task.instance_id, flags);
}

int do_run(const RunArgs& a) {
  if (a.instances.empty() == a.adversary.empty()) {
    throw ContractViolation("run: give either --instance or --adversary");
  }
  if (!a.adversary.empty() && a.adversary != "section4") {
    throw ContractViolation("unknown adversary '" + a.adversary + "' (expected section4)");
  }

  std::vector<Task> tasks;
  for (const auto& alg : a.algorithms) {
    // Validate the name before any work starts.
    make_algorithm(alg, Vector::Zero(1));
    if (a.instances.empty()) {
      tasks.push_back({alg, "section4-a" + format_real(a.alpha) + "-n" + std::to_string(a.n), std::nullopt});
    }
    for (const auto& path : a.instances) {
      tasks.push_back({alg, fs::path(path).stem().string(), load_instance(path)});
    }
  }

  std::vector<RunReport> reports(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      RunResult result = execute(tasks[i], a);
      const fs::path dir = fs::path(a.out_dir) / (tasks[i].algorithm + "__" + tasks[i].instance_id);
      save_trajectory(result.trajectory, result.report.events, dir / "trajectory.json");
      save_report(result.report, dir / "report.json");
      if (!result.report.error.empty()) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << tasks[i].algorithm << " on " << tasks[i].instance_id << ": " << result.report.error << "\n";
      }
      reports[i] = std::move(result.report);
      failures[i] = result.failure;
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  emit_summary(reports, fs::path(a.out_dir) / "summary.csv");
  std::cout << format_summary(reports);
  for (const auto& f : failures) {
    if (f) return exit_code_for(f);
  }
  return kExitOk;
}

int do_opt(const std::string& path) {
  const NestedInstance inst = load_instance(path);
  std::cout << format_real(opt(inst)) << "\n";
  return kExitOk;
}

int do_report(const std::vector<std::string>& dirs, const std::string& out) {
  std::vector<fs::path> files;
  for (const auto& d : dirs) {
    const fs::path root(d);
    if (fs::is_regular_file(root)) {
      files.push_back(root);
    } else if (fs::is_directory(root)) {
      for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().filename() == "report.json") files.push_back(entry.path());
      }
    } else {
      throw ParseError("no such run directory: " + d);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunReport> reports;
  for (const auto& f : files) reports.push_back(load_report(f));
  if (out.empty() || out == "-") {
    std::cout << format_summary(reports);
  } else {
    emit_summary(reports, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested convex body chasing: instance generation, runs and summaries"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance as JSON");
  gen_cmd->add_option("generator", gen.generator, "random | covering")->required();
  gen_cmd->add_option("--d", gen.d, "Dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Number of batches")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("-o,--out", gen.out, "Output path (stdout when omitted)");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run algorithms on instances or against an adversary");
  run_cmd->add_option("--alg", run_args.algorithms, "greedy | ellipsoid | centroid | chase (repeatable)")
      ->required();
  run_cmd->add_option("--instance", run_args.instances, "Instance JSON file (repeatable)");
  run_cmd->add_option("--adversary", run_args.adversary, "Adaptive adversary: section4");
  run_cmd->add_option("--alpha", run_args.alpha, "Adversary parameter in (0, 1)");
  run_cmd->add_option("--n", run_args.n, "Number of adversary requests");
  run_cmd->add_option("--seed", run_args.seed, "Seed for sampled centroids");
  run_cmd->add_flag("--strict", run_args.strict, "Validate requests and positions");
  run_cmd->add_option("--out-dir", run_args.out_dir, "Directory for per-run output");
  run_cmd->add_option("--jobs", run_args.jobs, "Parallel runs")->check(CLI::PositiveNumber);

  std::string opt_path;
  auto* opt_cmd = app.add_subcommand("opt", "Print the offline optimum of an instance");
  opt_cmd->add_option("instance", opt_path, "Instance JSON file")->required();

  std::vector<std::string> report_dirs;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Collect run reports into a CSV summary");
  report_cmd->add_option("dirs", report_dirs, "Run directories or report files")->required();
  report_cmd->add_option("-o,--out", report_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInfeasible;
  }

  try {
    if (*gen_cmd) return do_gen(gen);
    if (*run_cmd) return do_run(run_args);
    if (*opt_cmd) return do_opt(opt_path);
    if (*report_cmd) return do_report(report_dirs, report_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return kExitParse;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}
