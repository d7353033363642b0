#include "hsbm/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hsbm/kernels.hpp"
#include "hsbm/sampler.hpp"

namespace hsbm {

namespace {

// Exceptions must not escape an OpenMP region; the loops record the first
// failure and rethrow after joining.
class TrialFailure {
 public:
  void capture() {
#pragma omp critical(hsbm_trial_failure)
    {
      if (message_.empty()) {
        try {
          throw;
        } catch (const std::exception& e) {
          message_ = e.what();
        } catch (...) {
          message_ = "unknown error";
        }
      }
    }
  }

  void rethrow_if_any() const {
    if (!message_.empty()) throw NumericError("trial failed: " + message_);
  }

 private:
  std::string message_;
};

struct TrialMetrics {
  bool spectral_exact = false;
  int spectral_misclassified = 0;
  bool counting_exact = false;
  int counting_misclassified = 0;
  double deviation = 0.0;
  bool violation = false;
  double proj_spectral = 0.0;
  double proj_frobenius = 0.0;
  double proj_ratio_spectral = 0.0;
  double proj_ratio_frobenius = 0.0;
  double wall_ms = 0.0;
};

TrialMetrics run_trial(const HsbmParams& params, const SymmetricMatrix* expected,
                       double expected_gap, const MetricSelection& metrics,
                       AlgorithmChoice algorithm, RecoveryResult* keep_result) {
  const auto start = std::chrono::steady_clock::now();
  TrialMetrics out;
  const Sample sample = sample_hsbm(params);

  if (metrics.recovery) {
    if (algorithm != AlgorithmChoice::counting) {
      RecoveryResult result =
          recover(sample.hypergraph, params.k, params.s, &sample.ground_truth);
      out.spectral_exact = result.exact.value_or(false);
      out.spectral_misclassified =
          compare_partitions(result.partition, sample.ground_truth).misclassified;
      if (keep_result) *keep_result = std::move(result);
    }
    if (algorithm != AlgorithmChoice::spectral) {
      const Partition partition = counting_recover(sample.hypergraph, params.s);
      const ComparisonResult cmp = compare_partitions(partition, sample.ground_truth);
      out.counting_exact = cmp.exact;
      out.counting_misclassified = cmp.misclassified;
    }
  }

  if (metrics.concentration || metrics.projector) {
    const SymmetricMatrix adjacency = adjacency_matrix(sample.hypergraph);
    out.deviation = spectral_norm(adjacency - *expected);
    out.violation = out.deviation > concentration_bound(params.n, params.d);
    if (metrics.projector) {
      const ProjectorDistance dist = projector_distance(adjacency, *expected, params.k);
      out.proj_spectral = dist.spectral;
      out.proj_frobenius = dist.frobenius;
      const double denominator = expected_gap - 2.0 * out.deviation;
      if (denominator > 0.0 && out.deviation > 0.0) {
        const double bound_spectral = out.deviation / denominator;
        out.proj_ratio_spectral = dist.spectral / bound_spectral;
        out.proj_ratio_frobenius =
            dist.frobenius / (std::sqrt(2.0 * params.k) * bound_spectral);
      } else if (out.deviation == 0.0) {
        out.proj_ratio_spectral = 0.0;
        out.proj_ratio_frobenius = 0.0;
      } else {
        out.proj_ratio_spectral = std::numeric_limits<double>::infinity();
        out.proj_ratio_frobenius = std::numeric_limits<double>::infinity();
      }
    }
  }

  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

std::vector<CellResult> run_sweep(const SweepSpec& spec) {
  std::vector<CellResult> results;
  const auto& ns = spec.n_values;
  const auto& ks = spec.k_values;
  const auto& ds = spec.d_values;
  const auto& ps = spec.p_values;
  const auto& qs = spec.q_values;
  if (ns.empty() || ks.empty() || ds.empty() || ps.empty() || qs.empty()) {
    throw ParameterError("sweep grid has an empty dimension");
  }
  if (spec.trials < 1) throw ParameterError("sweep needs at least one trial");

  for (int n : ns) {
    for (int k : ks) {
      for (int d : ds) {
        for (double p : ps) {
          for (double q : qs) {
            CellResult cell;
            cell.n = n;
            cell.k = k;
            cell.s = (k > 0 && n % k == 0) ? n / k : 0;
            cell.d = d;
            cell.p = p;
            cell.q = q;
            cell.trials = spec.trials;
            cell.base_seed = spec.base_seed;

            HsbmParams params;
            try {
              params = HsbmParams::make(n, k, d, p, q, spec.base_seed);
            } catch (const ParameterError& err) {
              cell.skipped = true;
              cell.skip_reason = err.what();
              results.push_back(std::move(cell));
              continue;
            }

            SymmetricMatrix expected;
            double gap = 0.0;
            if (spec.metrics.concentration || spec.metrics.projector) {
              expected = expected_adjacency(params);
              gap = expected_spectrum(params).gap;
            }

            std::vector<TrialMetrics> trials(spec.trials);
            RecoveryResult single;
            const bool keep_single = spec.keep_single_trial_result && spec.trials == 1 &&
                                     spec.metrics.recovery &&
                                     spec.algorithm != AlgorithmChoice::counting;
            TrialFailure failure;
#pragma omp parallel for schedule(dynamic) num_threads(kernels::max_workers())
            for (int t = 0; t < spec.trials; ++t) {
              try {
                trials[t] = run_trial(params.with_seed(spec.base_seed + t), &expected, gap,
                                      spec.metrics, spec.algorithm,
                                      keep_single && t == 0 ? &single : nullptr);
              } catch (...) {
                failure.capture();
              }
            }
            failure.rethrow_if_any();

            if (spec.metrics.recovery) {
              double rate_s = 0, rate_c = 0, mis_s = 0, mis_c = 0;
              for (const TrialMetrics& t : trials) {
                rate_s += t.spectral_exact ? 1.0 : 0.0;
                rate_c += t.counting_exact ? 1.0 : 0.0;
                mis_s += t.spectral_misclassified;
                mis_c += t.counting_misclassified;
              }
              if (spec.algorithm != AlgorithmChoice::counting) {
                cell.rate_spectral = rate_s / spec.trials;
                cell.mean_misclassified_spectral = mis_s / spec.trials;
              }
              if (spec.algorithm != AlgorithmChoice::spectral) {
                cell.rate_counting = rate_c / spec.trials;
                cell.mean_misclassified_counting = mis_c / spec.trials;
              }
            }
            if (spec.metrics.concentration) {
              double sum = 0, max_ratio = 0;
              int violations = 0;
              const double bound = concentration_bound(params.n, params.d);
              for (const TrialMetrics& t : trials) {
                sum += t.deviation;
                max_ratio = std::max(max_ratio, t.deviation / bound);
                violations += t.violation ? 1 : 0;
              }
              cell.mean_deviation = sum / spec.trials;
              cell.deviation_bound = bound;
              cell.mean_bound_ratio = (sum / spec.trials) / bound;
              cell.max_bound_ratio = max_ratio;
              cell.concentration_violations = violations;
            }
            if (spec.metrics.projector) {
              double ps_sum = 0, pf_sum = 0, rs_sum = 0, rf_sum = 0;
              for (const TrialMetrics& t : trials) {
                ps_sum += t.proj_spectral;
                pf_sum += t.proj_frobenius;
                rs_sum += t.proj_ratio_spectral;
                rf_sum += t.proj_ratio_frobenius;
              }
              cell.mean_projdist_spectral = ps_sum / spec.trials;
              cell.mean_projdist_frobenius = pf_sum / spec.trials;
              cell.mean_proj_ratio_spectral = rs_sum / spec.trials;
              cell.mean_proj_ratio_frobenius = rf_sum / spec.trials;
            }
            if (spec.metrics.window) {
              cell.dense_window = epsilon_window(params, Regime::dense);
              cell.sparse_window = epsilon_window(params, Regime::sparse);
            }
            double wall_total = 0;
            for (const TrialMetrics& t : trials) wall_total += t.wall_ms;
            cell.wall_ms_total = wall_total;
            cell.wall_ms_mean = wall_total / spec.trials;
            if (keep_single) cell.single_trial_result = std::move(single);
            results.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return results;
}

ConcentrationSummary concentration_audit(const HsbmParams& params, int trials) {
  params.validate();
  if (trials < 1) throw ParameterError("audit needs at least one trial");
  const SymmetricMatrix expected = expected_adjacency(params);
  const double bound = concentration_bound(params.n, params.d);

  std::vector<double> ratios(trials);
  TrialFailure failure;
#pragma omp parallel for schedule(dynamic) num_threads(kernels::max_workers())
  for (int t = 0; t < trials; ++t) {
    try {
      const Sample sample = sample_hsbm(params.with_seed(params.seed + t));
      const double dev = spectral_norm(adjacency_matrix(sample.hypergraph) - expected);
      ratios[t] = dev / bound;
    } catch (...) {
      failure.capture();
    }
  }
  failure.rethrow_if_any();

  ConcentrationSummary summary;
  summary.params = params;
  summary.trials = trials;
  summary.bound = bound;
  double sum = 0;
  for (double r : ratios) {
    sum += r;
    summary.max_ratio = std::max(summary.max_ratio, r);
    if (r > 1.0) ++summary.violations;
  }
  summary.mean_ratio = sum / trials;
  return summary;
}

// Vertex u is credited for cluster c when the other d-1 vertices of an edge
// all lie in c.
std::vector<std::int64_t> cluster_incident_counts(const UniformHypergraph& h, int k, int s) {
  const int n = h.vertex_count();
  const int d = h.uniformity();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) * k, 0);
  const std::size_t m = h.edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    const auto edge = h.edge(e);
    const int c_first = edge[0] / s;
    const int c_last = edge[d - 1] / s;
    if (c_first == c_last) {
      for (std::int32_t u : edge) counts[static_cast<std::size_t>(u) * k + c_first] += 1;
      continue;
    }
    for (int i = 0; i < d; ++i) {
      int cluster = -1;
      bool uniform = true;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const int c = edge[j] / s;
        if (cluster < 0) {
          cluster = c;
        } else if (c != cluster) {
          uniform = false;
          break;
        }
      }
      if (uniform) counts[static_cast<std::size_t>(edge[i]) * k + cluster] += 1;
    }
  }
  return counts;
}

namespace {

struct EventTrialResult {
  std::int64_t degree_violations = 0;
  std::int64_t spectral_violations = 0;
};

EventTrialResult event_trial(const HsbmParams& params, std::uint64_t seed, double epsilon,
                             const std::vector<std::vector<int>>& subset_families) {
  EventTrialResult out;
  const Sample sample = sample_hsbm(params.with_seed(seed));
  const int n = params.n;
  const int k = params.k;
  const int s = params.s;

  const std::vector<std::int64_t> counts = cluster_incident_counts(sample.hypergraph, k, s);
  const double scale = binomial(s, params.d - 1);
  const double member_floor = (params.p - epsilon) * scale;
  const double outsider_ceiling = (params.q + epsilon) * scale;
  for (int u = 0; u < n; ++u) {
    for (int i = 0; i < k; ++i) {
      const auto value = static_cast<double>(counts[static_cast<std::size_t>(u) * k + i]);
      const bool member = u / s == i;
      const bool holds = member ? value >= member_floor : value <= outsider_ceiling;
      if (!holds) ++out.degree_violations;
    }
  }

  for (const std::vector<int>& clusters : subset_families) {
    std::vector<int> keep;
    keep.reserve(clusters.size() * s);
    for (int c : clusters) {
      for (int v = c * s; v < (c + 1) * s; ++v) keep.push_back(v);
    }
    const InducedSubhypergraph sub = induced_subhypergraph(sample.hypergraph, keep);
    const int m = static_cast<int>(keep.size());
    const HsbmParams sub_params =
        HsbmParams::make(m, static_cast<int>(clusters.size()), params.d, params.p, params.q);
    const double dev =
        spectral_norm(adjacency_matrix(sub.hypergraph) - expected_adjacency(sub_params));
    if (dev > concentration_bound(m, params.d)) ++out.spectral_violations;
  }
  return out;
}

}  // namespace

EventAuditSummary event_audit(const HsbmParams& params, int trials, double epsilon,
                              bool full_subset_audit) {
  params.validate();
  if (trials < 1) throw ParameterError("audit needs at least one trial");
  if (epsilon <= 0.0) throw ParameterError("epsilon must be positive");
  if (full_subset_audit && params.k > 12) {
    throw ParameterError("full spectral-event audit is limited to k <= 12 (2^k events); got k=" +
                         std::to_string(params.k));
  }

  std::vector<std::vector<int>> families;
  if (full_subset_audit) {
    for (unsigned mask = 1; mask < (1u << params.k); ++mask) {
      std::vector<int> clusters;
      for (int c = 0; c < params.k; ++c) {
        if (mask & (1u << c)) clusters.push_back(c);
      }
      families.push_back(std::move(clusters));
    }
  } else {
    for (int t = 0; t < params.k; ++t) {
      std::vector<int> clusters;
      for (int c = t; c < params.k; ++c) clusters.push_back(c);
      families.push_back(std::move(clusters));
    }
  }

  std::vector<EventTrialResult> per_trial(trials);
  TrialFailure failure;
#pragma omp parallel for schedule(dynamic) num_threads(kernels::max_workers())
  for (int t = 0; t < trials; ++t) {
    try {
      per_trial[t] = event_trial(params, params.seed + t, epsilon, families);
    } catch (...) {
      failure.capture();
    }
  }
  failure.rethrow_if_any();

  EventAuditSummary summary;
  summary.params = params;
  summary.trials = trials;
  summary.epsilon = epsilon;
  summary.full_subset_audit = full_subset_audit;
  summary.degree_budget_per_pair =
      std::exp(-epsilon * epsilon * binomial(params.s - 1, params.d - 1));
  summary.budget = std::pow(2.0, params.k) * std::exp(static_cast<double>(-params.s)) +
                   static_cast<double>(params.n) * params.k * summary.degree_budget_per_pair;
  for (const EventTrialResult& t : per_trial) {
    summary.degree_violations += t.degree_violations;
    summary.spectral_violations += t.spectral_violations;
    if (t.degree_violations == 0 && t.spectral_violations == 0) ++summary.joint_hold;
  }
  summary.degree_pairs = static_cast<std::int64_t>(trials) * params.n * params.k;
  summary.spectral_events = static_cast<std::int64_t>(trials) * families.size();
  summary.joint_frequency = static_cast<double>(summary.joint_hold) / trials;
  return summary;
}

std::vector<ThresholdPoint> threshold_scan(const HsbmParams& base,
                                           const std::vector<double>& p_values, int trials) {
  if (p_values.empty()) throw ParameterError("threshold scan needs at least one p value");
  std::vector<ThresholdPoint> points;
  for (double p : p_values) {
    const HsbmParams params = HsbmParams::make(base.n, base.k, base.d, p, base.q, base.seed);
    std::vector<std::pair<bool, bool>> outcomes(trials);
    TrialFailure failure;
#pragma omp parallel for schedule(dynamic) num_threads(kernels::max_workers())
    for (int t = 0; t < trials; ++t) {
      try {
        const Sample sample = sample_hsbm(params.with_seed(params.seed + t));
        const bool spectral_ok =
            recover(sample.hypergraph, params.k, params.s, &sample.ground_truth).exact.value();
        const bool counting_ok =
            compare_partitions(counting_recover(sample.hypergraph, params.s),
                               sample.ground_truth)
                .exact;
        outcomes[t] = {spectral_ok, counting_ok};
      } catch (...) {
        failure.capture();
      }
    }
    failure.rethrow_if_any();
    ThresholdPoint point;
    point.p = p;
    point.q = base.q;
    for (const auto& [sp, co] : outcomes) {
      point.rate_spectral += sp ? 1.0 : 0.0;
      point.rate_counting += co ? 1.0 : 0.0;
    }
    point.rate_spectral /= trials;
    point.rate_counting /= trials;
    point.counting_condition = counting_condition(params);
    point.dense_window_feasible = epsilon_window(params, Regime::dense).feasible;
    points.push_back(point);
  }
  return points;
}

// --- CSV --------------------------------------------------------------------

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string opt_str(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

void write_comments(std::ostream& os, const CommentList& comments) {
  for (const auto& [key, value] : comments) os << "# " << key << '=' << value << '\n';
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& os, std::span<const CellResult> cells, bool include_timing,
                     const CommentList& comments) {
  write_comments(os, comments);
  std::vector<std::string> header = {"n", "k", "s", "d", "p", "q", "trials", "base_seed",
                                     "skipped", "skip_reason",
                                     "rate_spectral", "rate_counting",
                                     "mean_misclassified_spectral", "mean_misclassified_counting",
                                     "mean_deviation", "deviation_bound", "mean_bound_ratio",
                                     "max_bound_ratio", "concentration_violations",
                                     "mean_projdist_spectral", "mean_projdist_frobenius",
                                     "mean_proj_ratio_spectral", "mean_proj_ratio_frobenius",
                                     "eps_dense_lower", "eps_dense_upper", "eps_dense_feasible",
                                     "eps_sparse_lower", "eps_sparse_upper", "eps_sparse_feasible"};
  if (include_timing) {
    header.emplace_back("wall_ms_mean");
    header.emplace_back("wall_ms_total");
  }
  write_row(os, header);

  for (const CellResult& cell : cells) {
    std::vector<std::string> row = {
        std::to_string(cell.n), std::to_string(cell.k), std::to_string(cell.s),
        std::to_string(cell.d), format_double(cell.p), format_double(cell.q),
        std::to_string(cell.trials), std::to_string(cell.base_seed),
        cell.skipped ? "1" : "0", cell.skip_reason,
        opt_str(cell.rate_spectral), opt_str(cell.rate_counting),
        opt_str(cell.mean_misclassified_spectral), opt_str(cell.mean_misclassified_counting),
        opt_str(cell.mean_deviation), opt_str(cell.deviation_bound),
        opt_str(cell.mean_bound_ratio), opt_str(cell.max_bound_ratio),
        opt_str(cell.concentration_violations),
        opt_str(cell.mean_projdist_spectral), opt_str(cell.mean_projdist_frobenius),
        opt_str(cell.mean_proj_ratio_spectral), opt_str(cell.mean_proj_ratio_frobenius)};
    const auto window_fields = [&row](const std::optional<EpsilonWindow>& w) {
      if (w) {
        row.push_back(format_double(w->lower));
        row.push_back(format_double(w->upper));
        row.push_back(w->feasible ? "1" : "0");
      } else {
        row.insert(row.end(), 3, std::string());
      }
    };
    window_fields(cell.dense_window);
    window_fields(cell.sparse_window);
    if (include_timing) {
      row.push_back(format_double(cell.wall_ms_mean));
      row.push_back(format_double(cell.wall_ms_total));
    }
    write_row(os, row);
  }
}

void write_concentration_csv(std::ostream& os, const ConcentrationSummary& summary,
                             const CommentList& comments) {
  write_comments(os, comments);
  write_row(os, {"n", "k", "s", "d", "p", "q", "trials", "base_seed", "bound", "mean_ratio",
                 "max_ratio", "violations"});
  write_row(os, {std::to_string(summary.params.n), std::to_string(summary.params.k),
                 std::to_string(summary.params.s), std::to_string(summary.params.d),
                 format_double(summary.params.p), format_double(summary.params.q),
                 std::to_string(summary.trials), std::to_string(summary.params.seed),
                 format_double(summary.bound), format_double(summary.mean_ratio),
                 format_double(summary.max_ratio), std::to_string(summary.violations)});
}

void write_event_audit_csv(std::ostream& os, const EventAuditSummary& summary,
                           const CommentList& comments) {
  write_comments(os, comments);
  write_row(os, {"n", "k", "s", "d", "p", "q", "trials", "base_seed", "epsilon",
                 "full_subset_audit", "joint_hold", "joint_frequency", "budget",
                 "degree_budget_per_pair", "degree_pairs", "degree_violations", "spectral_events",
                 "spectral_violations"});
  write_row(os, {std::to_string(summary.params.n), std::to_string(summary.params.k),
                 std::to_string(summary.params.s), std::to_string(summary.params.d),
                 format_double(summary.params.p), format_double(summary.params.q),
                 std::to_string(summary.trials), std::to_string(summary.params.seed),
                 format_double(summary.epsilon), summary.full_subset_audit ? "1" : "0",
                 std::to_string(summary.joint_hold), format_double(summary.joint_frequency),
                 format_double(summary.budget), format_double(summary.degree_budget_per_pair),
                 std::to_string(summary.degree_pairs), std::to_string(summary.degree_violations),
                 std::to_string(summary.spectral_events),
                 std::to_string(summary.spectral_violations)});
}

void write_threshold_csv(std::ostream& os, std::span<const ThresholdPoint> points,
                         const CommentList& comments) {
  write_comments(os, comments);
  write_row(os, {"p", "q", "rate_spectral", "rate_counting", "counting_condition",
                 "dense_window_feasible"});
  for (const ThresholdPoint& point : points) {
    write_row(os, {format_double(point.p), format_double(point.q),
                   format_double(point.rate_spectral), format_double(point.rate_counting),
                   point.counting_condition ? "1" : "0",
                   point.dense_window_feasible ? "1" : "0"});
  }
}

}  // namespace hsbm
