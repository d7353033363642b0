// Times the serial reference implementation of each hot kernel against its
// OpenMP variant on synthetic workloads and prints a speedup table. The two
// variants are bitwise identical (asserted in the unit tests); this tool only
// measures throughput.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hsbm/eigen_sym.hpp"
#include "hsbm/kernels.hpp"
#include "hsbm/sampler.hpp"
#include "hsbm/spectral.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  fn();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 600;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const int k = 4;
  const int d = 3;
  const auto params = hsbm::HsbmParams::make(n, k, d, 0.4, 0.1, 12345);

  std::printf("n=%d k=%d d=%d workers=%d repeats=%d\n", n, k, d,
              hsbm::kernels::max_workers(), repeats);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  const hsbm::Sample sample = hsbm::sample_hsbm(params);
  const auto& h = sample.hypergraph;
  std::printf("sampled %zu hyperedges\n", h.edge_count());

  report("adjacency_counts",
         time_ms([&] { hsbm::kernels::adjacency_counts_serial(h); }, repeats),
         time_ms([&] { hsbm::kernels::adjacency_counts_parallel(h); }, repeats));

  const hsbm::SymmetricMatrix a = hsbm::adjacency_matrix(h);
  const hsbm::EigenSystem sys = hsbm::eig_sym(a);

  hsbm::SymmetricMatrix proj_out(n);
  report("rank_r_projection",
         time_ms([&] { hsbm::kernels::rank_r_projection_serial(sys.vectors.data(), n, k,
                                                               proj_out.data()); },
                 repeats),
         time_ms([&] { hsbm::kernels::rank_r_projection_parallel(sys.vectors.data(), n, k,
                                                                 proj_out.data()); },
                 repeats));

  const hsbm::Projector proj = hsbm::dominant_projector(sys, k);
  report("candidate_norms",
         time_ms([&] { hsbm::kernels::candidate_norms_serial(proj.matrix, params.s); }, repeats),
         time_ms([&] { hsbm::kernels::candidate_norms_parallel(proj.matrix, params.s); }, repeats));

  std::vector<int> w(params.s);
  for (int i = 0; i < params.s; ++i) w[i] = i;
  const auto mask = hsbm::membership_mask(n, w);
  report("incident_counts",
         time_ms([&] { hsbm::kernels::incident_counts_serial(h, mask); }, repeats),
         time_ms([&] { hsbm::kernels::incident_counts_parallel(h, mask); }, repeats));

  return 0;
}
