// Serial reference kernels against their OpenMP counterparts.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tablecount/exact.hpp"
#include "tablecount/pairing.hpp"

using namespace tablecount;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-34s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::stoi(argv[1]) : 14;
  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;
  // warm the shared log-factorial table so neither side pays for it
  (void)count_exact(validate_margins(std::vector<Degree>{2, 2}, std::vector<Degree>{2, 2}), EntryAlphabet::all());

  {
    const std::vector<Degree> twos(static_cast<std::size_t>(n), 2);
    const MarginPair margins = validate_margins(twos, twos);
    CountResult s, p;
    const double ts = seconds([&] { s = count_exact_serial(margins, EntryAlphabet::all()); });
    const double tp = seconds([&] { p = count_exact(margins, EntryAlphabet::all()); });
    report("count_exact [2]x" + std::to_string(n), ts, tp, s.count == p.count);
    ok = ok && s.count == p.count;
  }
  {
    const std::vector<Degree> rows{3, 2, 2, 1}, cols{2, 2, 2, 2};
    const MarginPair margins = validate_margins(rows, cols);
    PairingStatistics s, p;
    const double ts = seconds([&] { s = exhaustive_statistics_serial(margins); });
    const double tp = seconds([&] { p = exhaustive_statistics(margins); });
    const bool agree = s.doublet_histogram == p.doublet_histogram && s.weight_sum == p.weight_sum;
    report("exhaustive pairings S=8", ts, tp, agree);
    ok = ok && agree;
  }
  {
    const std::vector<Degree> twos(20, 2);
    const MarginPair margins = validate_margins(twos, twos);
    MonteCarloResult s, p;
    const double ts = seconds([&] { s = monte_carlo_simple_fraction_serial(margins, 200000, 7); });
    const double tp = seconds([&] { p = monte_carlo_simple_fraction(margins, 200000, 7); });
    report("monte carlo [2]x20, 2e5 samples", ts, tp, s.hits == p.hits);
    ok = ok && s.hits == p.hits;
  }
  return ok ? 0 : 1;
}
