// Compares the OpenMP kernels against their serial reference
// implementations and checks that the outputs agree bit for bit.

#include <omp.h>

#include <cstdio>
#include <string>

#include "charmoment/arith.hpp"
#include "charmoment/charsum.hpp"
#include "charmoment/prooflab.hpp"

using namespace charmoment;

namespace {

struct Timing {
  double serial_s = 0;
  double parallel_s = 0;
  bool equal = false;
};

void report(const char* name, const Timing& t) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, t.serial_s,
              t.parallel_s, t.serial_s / t.parallel_s, t.equal ? "outputs equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
  double scale = argc > 1 ? std::stod(argv[1]) : 1.0;
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    uint64_t hi = static_cast<uint64_t>(5e7 * scale);
    Timing t;
    double t0 = omp_get_wtime();
    PrimeRange a = primes_in_serial(2, hi);
    t.serial_s = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    PrimeRange b = primes_in(2, hi);
    t.parallel_s = omp_get_wtime() - t0;
    t.equal = a.primes == b.primes;
    std::printf("primes_in [2, %llu]: %zu primes\n", static_cast<unsigned long long>(hi),
                b.primes.size());
    report("  segmented sieve", t);
  }

  {
    uint64_t u = 1000000000ULL;
    uint64_t h = static_cast<uint64_t>(2e6 * scale);
    Timing t;
    double t0 = omp_get_wtime();
    KernelTable a = kernel_table_serial(u, h);
    t.serial_s = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    KernelTable b = kernel_table(u, h);
    t.parallel_s = omp_get_wtime() - t0;
    t.equal = a.kernels == b.kernels && a.valuations == b.valuations;
    std::printf("kernel_table u=%llu h=%llu\n", static_cast<unsigned long long>(u),
                static_cast<unsigned long long>(h));
    report("  interval kernel sieve", t);
  }

  {
    uint64_t Q = static_cast<uint64_t>(1e6 * scale);
    uint64_t h = 128;
    PrimeRange pr = primes_in(Q, 2 * Q);
    WeightSequence w = WeightSequence::unit(Q / 2, h);
    Timing t;
    double t0 = omp_get_wtime();
    MomentResult a = moment_serial(pr, w, 1, ClassFilter::All);
    t.serial_s = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    MomentResult b = moment(pr, w, 1, ClassFilter::All);
    t.parallel_s = omp_get_wtime() - t0;
    t.equal = a.value == b.value && a.sums_int == b.sums_int;
    std::printf("moment M_2 over [%llu, %llu], h=%llu: M = %s\n",
                static_cast<unsigned long long>(Q), static_cast<unsigned long long>(2 * Q),
                static_cast<unsigned long long>(h), b.value.get_str().c_str());
    report("  moment over primes", t);
  }

  {
    uint64_t mhi = static_cast<uint64_t>(4000 * scale);
    Timing t;
    double t0 = omp_get_wtime();
    omp_set_num_threads(1);
    auto a = burgess_scan(3, mhi, {}, 1);
    t.serial_s = omp_get_wtime() - t0;
    omp_set_num_threads(omp_get_num_procs());
    t0 = omp_get_wtime();
    auto b = burgess_scan(3, mhi, {}, 1);
    t.parallel_s = omp_get_wtime() - t0;
    t.equal = a.size() == b.size();
    for (size_t i = 0; t.equal && i < a.size(); ++i)
      t.equal = a[i].m == b[i].m && a[i].best_stat == b[i].best_stat &&
                a[i].full_period_sum == b[i].full_period_sum;
    std::printf("burgess_scan m <= %llu\n", static_cast<unsigned long long>(mhi));
    report("  window scan", t);
  }

  return 0;
}
