// Brute-force simulation oracle for the convergence criterion: runs the
// default brightness user over many seeds and prints the distribution of
// best-of-population M1 improvement between generation 0 and 20. The frozen
// threshold in acceptance.cpp was taken from this output.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "etea/session.hpp"

int main(int argc, char** argv) {
  const int seeds = argc > 1 ? std::atoi(argv[1]) : 200;
  const std::uint64_t first = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1000;
  etea::SessionConfig cfg;
  cfg.user.temperature = 50.0;
  cfg.user.choice_prob = 0.8;

  std::vector<double> gains;
  int improved = 0;
  for (int i = 0; i < seeds; ++i) {
    const auto r = etea::run_headless(cfg, 20, first + static_cast<std::uint64_t>(i));
    const double gain = r.generations.back().best_m1 - r.generations.front().best_m1;
    improved += gain > 0.0;
    gains.push_back(gain);
  }
  std::sort(gains.begin(), gains.end());
  std::printf("seeds=%d improved=%d (%.3f)\n", seeds, improved,
              static_cast<double>(improved) / seeds);
  std::printf("gain p05=%.1f p25=%.1f median=%.1f p75=%.1f\n",
              gains[gains.size() / 20], gains[gains.size() / 4],
              gains[gains.size() / 2], gains[3 * gains.size() / 4]);
  return 0;
}
