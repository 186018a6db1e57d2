// Parallel vs serial batch throughput.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "feuilletage/campaign.hpp"

using namespace feuilletage;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 1 << 14;
  const std::int64_t maps = argc > 2 ? std::atoll(argv[2]) : 64;

  for (auto mode : {MeasureMode::tree, MeasureMode::feuilletage}) {
    CampaignConfig c;
    c.mode = mode;
    c.sizes = {n};
    c.maps = maps;
    BatchResult serial, parallel;
    const double ts = seconds([&] { serial = run_batch_serial(c, n, 0); });
    const double tp = seconds([&] { parallel = run_batch(c, n, 0); });
    std::cout << to_string(mode) << " n=" << n << " maps=" << maps << " threads=" << omp_get_max_threads()
              << " serial=" << ts << "s parallel=" << tp << "s speedup=" << ts / tp
              << " identical=" << (serial.distances == parallel.distances ? "yes" : "NO") << '\n';
  }
}
