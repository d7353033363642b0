// Command-line front end: generate / recover / sweep / audit.
//
// Exit codes: 0 success, 1 runtime or numeric error, 2 usage error. All
// randomness flows from --seed; outputs are deterministic given flags
// (timing columns excluded via --no-timing).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hsbm/analysis.hpp"
#include "hsbm/io.hpp"
#include "hsbm/kernels.hpp"
#include "hsbm/recovery.hpp"
#include "hsbm/sampler.hpp"
#include "hsbm/spectral.hpp"

namespace {

using hsbm::AlgorithmChoice;
using hsbm::CommentList;

const std::map<std::string, AlgorithmChoice> kAlgorithmNames{
    {"spectral", AlgorithmChoice::spectral},
    {"counting", AlgorithmChoice::counting},
    {"both", AlgorithmChoice::both}};

std::string algorithm_name(AlgorithmChoice a) {
  switch (a) {
    case AlgorithmChoice::spectral: return "spectral";
    case AlgorithmChoice::counting: return "counting";
    default: return "both";
  }
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += hsbm::format_double(values[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void write_csv_output(const std::optional<std::string>& path, const std::string& contents) {
  if (path) {
    hsbm::atomic_write_file(*path, contents);
  } else {
    std::cout << contents;
  }
}

struct GenerateOptions {
  int n = 0, k = 0, d = 0;
  double p = 0.0, q = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::string> partition_out;
};

int cmd_generate(const GenerateOptions& opt) {
  const hsbm::HsbmParams params = hsbm::HsbmParams::make(opt.n, opt.k, opt.d, opt.p, opt.q, opt.seed);
  const hsbm::Sample sample = hsbm::sample_hsbm(params);
  hsbm::write_hypergraph(std::filesystem::path(opt.out), sample.hypergraph);
  const std::string partition_path = opt.partition_out.value_or(opt.out + ".partition");
  hsbm::write_partition(std::filesystem::path(partition_path), sample.ground_truth);

  const hsbm::SpectrumSummary spectrum = hsbm::expected_spectrum(params);
  std::cout << "edges=" << sample.hypergraph.edge_count()
            << " lambda1=" << hsbm::format_double(spectrum.lambda1)
            << " lambda_mid=" << hsbm::format_double(spectrum.lambda_mid)
            << " lambda_tail=" << hsbm::format_double(spectrum.lambda_tail)
            << " gap=" << hsbm::format_double(spectrum.gap) << '\n';
  return 0;
}

struct RecoverOptions {
  std::string in;
  int k = 0;
  AlgorithmChoice algorithm = AlgorithmChoice::spectral;
  std::optional<std::string> out;
  std::optional<std::string> trace;
  std::optional<std::string> ground_truth;
};

int cmd_recover(const RecoverOptions& opt) {
  const hsbm::UniformHypergraph h = hsbm::read_hypergraph(std::filesystem::path(opt.in));
  const int n = h.vertex_count();
  if (opt.k < 1 || n % opt.k != 0) {
    throw hsbm::ParameterError("n=" + std::to_string(n) + " is not divisible by k=" +
                               std::to_string(opt.k));
  }
  const int s = n / opt.k;

  std::optional<hsbm::Partition> truth;
  if (opt.ground_truth) truth = hsbm::read_partition(std::filesystem::path(*opt.ground_truth));

  const std::string out_base = opt.out.value_or(opt.in + ".recovered");
  const bool both = opt.algorithm == AlgorithmChoice::both;

  const auto report = [&](const std::string& name, const hsbm::Partition& partition) {
    std::cout << "algorithm=" << name;
    if (truth) {
      const hsbm::ComparisonResult cmp = hsbm::compare_partitions(partition, *truth);
      std::cout << " exact=" << (cmp.exact ? "true" : "false")
                << " misclassified=" << cmp.misclassified;
    } else {
      std::cout << " clusters=" << partition.k;
    }
    std::cout << '\n';
  };

  if (opt.algorithm != AlgorithmChoice::counting) {
    const hsbm::RecoveryResult result = hsbm::recover(h, opt.k, s, truth ? &*truth : nullptr);
    hsbm::write_partition(std::filesystem::path(both ? out_base + ".spectral" : out_base),
                          result.partition);
    if (opt.trace) {
      CommentList comments{{"subcommand", "recover"},
                           {"in", opt.in},
                           {"k", std::to_string(opt.k)},
                           {"algorithm", algorithm_name(opt.algorithm)}};
      std::ostringstream os;
      hsbm::write_traces(os, result.traces, comments);
      hsbm::atomic_write_file(*opt.trace, os.str());
    }
    report("spectral", result.partition);
  }
  if (opt.algorithm != AlgorithmChoice::spectral) {
    const hsbm::Partition partition = hsbm::counting_recover(h, s);
    hsbm::write_partition(std::filesystem::path(both ? out_base + ".counting" : out_base),
                          partition);
    report("counting", partition);
  }
  if (opt.trace && opt.algorithm == AlgorithmChoice::counting) {
    std::cerr << "warning: --trace applies to the spectral algorithm only; no trace written\n";
  }
  return 0;
}

struct SweepOptions {
  std::vector<int> n, k, d;
  std::vector<double> p, q;
  int trials = 1;
  std::uint64_t seed = 0;
  AlgorithmChoice algorithm = AlgorithmChoice::both;
  std::vector<std::string> metrics{"recovery", "concentration", "projector", "window"};
  std::optional<std::string> out;
  bool no_timing = false;
};

int cmd_sweep(const SweepOptions& opt) {
  hsbm::SweepSpec spec;
  spec.n_values = opt.n;
  spec.k_values = opt.k;
  spec.d_values = opt.d;
  spec.p_values = opt.p;
  spec.q_values = opt.q;
  spec.trials = opt.trials;
  spec.base_seed = opt.seed;
  spec.algorithm = opt.algorithm;
  spec.metrics = {false, false, false, false};
  for (const std::string& m : opt.metrics) {
    if (m == "recovery") spec.metrics.recovery = true;
    else if (m == "concentration") spec.metrics.concentration = true;
    else if (m == "projector") spec.metrics.projector = true;
    else if (m == "window") spec.metrics.window = true;
    else throw hsbm::ParameterError("unknown metric group: " + m);
  }

  const std::vector<hsbm::CellResult> cells = hsbm::run_sweep(spec);
  int skipped = 0;
  for (const hsbm::CellResult& cell : cells) skipped += cell.skipped ? 1 : 0;
  if (skipped == static_cast<int>(cells.size())) {
    std::cerr << "warning: every cell in the grid was infeasible\n";
  }

  CommentList comments{{"subcommand", "sweep"},
                       {"n", join_ints(opt.n)},
                       {"k", join_ints(opt.k)},
                       {"d", join_ints(opt.d)},
                       {"p", join_doubles(opt.p)},
                       {"q", join_doubles(opt.q)},
                       {"trials", std::to_string(opt.trials)},
                       {"seed", std::to_string(opt.seed)},
                       {"algorithm", algorithm_name(opt.algorithm)}};
  std::ostringstream os;
  hsbm::write_sweep_csv(os, cells, !opt.no_timing, comments);
  write_csv_output(opt.out, os.str());
  return 0;
}

struct AuditOptions {
  std::string kind = "concentration";
  int n = 60, k = 2, d = 3;
  double p = 0.5, q = 0.1;
  std::uint64_t seed = 0;
  int trials = 100;
  double epsilon = 0.05;
  bool full_j = false;
  std::vector<double> p_grid;
  std::optional<std::string> out;
};

int cmd_audit(const AuditOptions& opt) {
  const hsbm::HsbmParams params = hsbm::HsbmParams::make(opt.n, opt.k, opt.d, opt.p, opt.q, opt.seed);
  CommentList comments{{"subcommand", "audit"},
                       {"kind", opt.kind},
                       {"n", std::to_string(opt.n)},
                       {"k", std::to_string(opt.k)},
                       {"d", std::to_string(opt.d)},
                       {"p", hsbm::format_double(opt.p)},
                       {"q", hsbm::format_double(opt.q)},
                       {"trials", std::to_string(opt.trials)},
                       {"seed", std::to_string(opt.seed)}};
  std::ostringstream os;
  if (opt.kind == "concentration") {
    hsbm::write_concentration_csv(os, hsbm::concentration_audit(params, opt.trials), comments);
  } else if (opt.kind == "events") {
    comments.emplace_back("epsilon", hsbm::format_double(opt.epsilon));
    const bool full = opt.full_j || params.k <= 12;
    hsbm::write_event_audit_csv(os, hsbm::event_audit(params, opt.trials, opt.epsilon, full),
                                comments);
  } else if (opt.kind == "threshold") {
    if (opt.p_grid.empty()) throw hsbm::ParameterError("threshold audit needs --p-grid");
    comments.emplace_back("p_grid", join_doubles(opt.p_grid));
    hsbm::write_threshold_csv(os, hsbm::threshold_scan(params, opt.p_grid, opt.trials), comments);
  } else {
    throw hsbm::ParameterError("unknown audit kind: " + opt.kind);
  }
  write_csv_output(opt.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-uniform hypergraph stochastic block models: generation, spectral and counting "
               "cluster recovery, and empirical audits of the recovery guarantees"};
  app.require_subcommand(1);
  app.set_config("--config", "", "optional key=value config file (command-line flags win)");

  int workers = hsbm::kernels::max_workers();
  app.add_option("--workers", workers, "worker threads for parallel kernels and trials");

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "sample one instance and write it to disk");
  generate->add_option("--n", gen.n, "vertex count")->required();
  generate->add_option("--k", gen.k, "cluster count")->required();
  generate->add_option("--d", gen.d, "hyperedge size")->required();
  generate->add_option("--p", gen.p, "within-cluster probability")->required();
  generate->add_option("--q", gen.q, "cross-cluster probability")->required();
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("--out", gen.out, "hypergraph output path")->required();
  generate->add_option("--ground-truth", gen.partition_out,
                       "partition output path (default: <out>.partition)");

  RecoverOptions rec;
  CLI::App* recover = app.add_subcommand("recover", "recover clusters from a hypergraph file");
  recover->add_option("--in", rec.in, "hypergraph input path")->required();
  recover->add_option("--k", rec.k, "cluster count")->required();
  recover->add_option("--algorithm", rec.algorithm, "spectral | counting | both")
      ->transform(CLI::CheckedTransformer(kAlgorithmNames, CLI::ignore_case));
  recover->add_option("--out", rec.out, "partition output path (default: <in>.recovered; "
                      "suffixes .spectral/.counting with --algorithm both)");
  recover->add_option("--trace", rec.trace, "iteration trace output path");
  recover->add_option("--ground-truth", rec.ground_truth, "ground-truth partition to score against");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep over a parameter grid");
  sweep_cmd->add_option("--n", sweep.n, "vertex counts")->required()->delimiter(',');
  sweep_cmd->add_option("--k", sweep.k, "cluster counts")->required()->delimiter(',');
  sweep_cmd->add_option("--d", sweep.d, "hyperedge sizes")->required()->delimiter(',');
  sweep_cmd->add_option("--p", sweep.p, "within-cluster probabilities")->required()->delimiter(',');
  sweep_cmd->add_option("--q", sweep.q, "cross-cluster probabilities")->required()->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials, "trials per cell");
  sweep_cmd->add_option("--seed", sweep.seed, "base seed (trial t uses seed+t)");
  sweep_cmd->add_option("--algorithm", sweep.algorithm, "spectral | counting | both")
      ->transform(CLI::CheckedTransformer(kAlgorithmNames, CLI::ignore_case));
  sweep_cmd->add_option("--metrics", sweep.metrics,
                        "metric groups: recovery,concentration,projector,window")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "CSV output path (stdout when omitted)");
  sweep_cmd->add_flag("--no-timing", sweep.no_timing, "omit wall-clock columns for byte-stable CSV");

  AuditOptions audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "measured counterparts of the probabilistic bounds");
  audit_cmd->add_option("--kind", audit.kind, "concentration | events | threshold")
      ->check(CLI::IsMember({"concentration", "events", "threshold"}));
  audit_cmd->add_option("--n", audit.n, "vertex count");
  audit_cmd->add_option("--k", audit.k, "cluster count");
  audit_cmd->add_option("--d", audit.d, "hyperedge size");
  audit_cmd->add_option("--p", audit.p, "within-cluster probability");
  audit_cmd->add_option("--q", audit.q, "cross-cluster probability");
  audit_cmd->add_option("--seed", audit.seed, "base seed");
  audit_cmd->add_option("--trials", audit.trials, "trial count");
  audit_cmd->add_option("--epsilon", audit.epsilon, "epsilon for the degree events");
  audit_cmd->add_flag("--full-j", audit.full_j, "audit all 2^k cluster subsets (k <= 12)");
  audit_cmd->add_option("--p-grid", audit.p_grid, "p values for the threshold scan")->delimiter(',');
  audit_cmd->add_option("--out", audit.out, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  hsbm::kernels::set_max_workers(workers);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (recover->parsed()) return cmd_recover(rec);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (audit_cmd->parsed()) return cmd_audit(audit);
  } catch (const hsbm::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
