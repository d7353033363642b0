#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsbm/params.hpp"
#include "hsbm/recovery.hpp"

namespace hsbm {

enum class AlgorithmChoice { spectral, counting, both };

struct MetricSelection {
  bool recovery = true;
  bool concentration = true;
  bool projector = true;
  bool window = true;
};

// Cross-product grid over the model parameters. Cells violating the model
// invariants are reported as skipped, not fatal. Trial t of every cell uses
// seed base_seed + t, so sweeps share random numbers across cells and can be
// extended without recomputation.
struct SweepSpec {
  std::vector<int> n_values;
  std::vector<int> k_values;
  std::vector<int> d_values;
  std::vector<double> p_values;
  std::vector<double> q_values;
  int trials = 1;
  std::uint64_t base_seed = 0;
  AlgorithmChoice algorithm = AlgorithmChoice::both;
  MetricSelection metrics;
  bool keep_single_trial_result = true;  // retain the full trace when trials == 1
};

struct CellResult {
  int n = 0, k = 0, s = 0, d = 0;
  double p = 0.0, q = 0.0;
  int trials = 0;
  std::uint64_t base_seed = 0;
  bool skipped = false;
  std::string skip_reason;

  std::optional<double> rate_spectral, rate_counting;
  std::optional<double> mean_misclassified_spectral, mean_misclassified_counting;

  std::optional<double> mean_deviation;     // mean ||A - EA||_2
  std::optional<double> deviation_bound;    // 6d sqrt(d C(n,d-1))
  std::optional<double> mean_bound_ratio, max_bound_ratio;
  std::optional<int> concentration_violations;

  std::optional<double> mean_projdist_spectral, mean_projdist_frobenius;
  std::optional<double> mean_proj_ratio_spectral, mean_proj_ratio_frobenius;

  std::optional<EpsilonWindow> dense_window, sparse_window;

  double wall_ms_mean = 0.0, wall_ms_total = 0.0;

  std::optional<RecoveryResult> single_trial_result;
};

std::vector<CellResult> run_sweep(const SweepSpec& spec);

struct ConcentrationSummary {
  HsbmParams params;
  int trials = 0;
  double bound = 0.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  int violations = 0;
};

// Measured counterpart of the spectral-norm concentration statement.
ConcentrationSummary concentration_audit(const HsbmParams& params, int trials);

struct EventAuditSummary {
  HsbmParams params;
  int trials = 0;
  double epsilon = 0.0;
  bool full_subset_audit = false;
  int joint_hold = 0;
  double joint_frequency = 0.0;
  double budget = 0.0;  // 2^k e^{-s} + nk exp(-eps^2 C(s-1,d-1))
  double degree_budget_per_pair = 0.0;
  std::int64_t degree_pairs = 0;
  std::int64_t degree_violations = 0;
  std::int64_t spectral_events = 0;
  std::int64_t spectral_violations = 0;
};

// N_{u,C_i} for every (vertex, cluster) pair in one pass over the edges,
// assuming the contiguous ground-truth layout; counts[u*k + i].
std::vector<std::int64_t> cluster_incident_counts(const UniformHypergraph& h, int k, int s);

// Audits the degree events (every (vertex, cluster) pair against the
// Hoeffding thresholds at epsilon) and the spectral events on cluster
// subhypergraphs: all nonempty subsets when full_subset_audit (k <= 12 only),
// otherwise the nested suffix family delete-and-repeat actually encounters.
EventAuditSummary event_audit(const HsbmParams& params, int trials, double epsilon,
                              bool full_subset_audit);

struct ThresholdPoint {
  double p = 0.0, q = 0.0;
  double rate_spectral = 0.0, rate_counting = 0.0;
  bool counting_condition = false;
  bool dense_window_feasible = false;
};

// Recovery rates of both algorithms along a signal-strength grid under common
// random numbers, with the theoretical threshold booleans alongside.
std::vector<ThresholdPoint> threshold_scan(const HsbmParams& base,
                                           const std::vector<double>& p_values, int trials);

// --- CSV output -------------------------------------------------------------
// One header row with the fixed column order documented in the README, one
// row per record, RFC-4180 quoting, '#'-prefixed comment lines before the
// header. Doubles are printed with %.17g so repeated runs are byte-identical.
using CommentList = std::vector<std::pair<std::string, std::string>>;

void write_sweep_csv(std::ostream& os, std::span<const CellResult> cells, bool include_timing,
                     const CommentList& comments = {});
void write_concentration_csv(std::ostream& os, const ConcentrationSummary& summary,
                             const CommentList& comments = {});
void write_event_audit_csv(std::ostream& os, const EventAuditSummary& summary,
                           const CommentList& comments = {});
void write_threshold_csv(std::ostream& os, std::span<const ThresholdPoint> points,
                         const CommentList& comments = {});

std::string csv_escape(const std::string& field);
std::string format_double(double value);

}  // namespace hsbm
