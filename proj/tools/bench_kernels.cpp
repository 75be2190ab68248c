// Benchmark comparing the serial reference kernels against the OpenMP ones:
// support scans, nullspace-property searches and dense materialization.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ripl/certify.hpp"
#include "ripl/counterexamples.hpp"
#include "ripl/operators.hpp"
#include "ripl/rng.hpp"

using namespace ripl;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0);
}

cmat random_gaussian(Rng& rng, int m, int n, double scale) {
  cmat A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian()) * scale;
  return A;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  {
    Rng rng(1);
    const cmat A = random_gaussian(rng, 24, 48, 1.0 / std::sqrt(24.0));
    const SparsityPattern p({3, 3, 2}, {0, 16, 32, 48});
    CertificateReport rs, rp;
    const double ts = timed([&] { rs = ripl_exact_serial(A, p); });
    const double tp = timed([&] { rp = ripl_exact(A, p); });
    report("support scan (302k supports)", ts, tp);
    if (rs.value != rp.value) std::printf("  MISMATCH: %.17g vs %.17g\n", rs.value, rp.value);
  }

  {
    const auto inst = construct_l2_sharpness(1, 16, 0.5, SharpnessVariant::Eta);
    const auto op = instance_norm_operator(inst);
    cmat kernel(inst.U.cols(), 1);
    kernel.col(0) = inst.kernel.cast<std::complex<double>>();
    CertificateReport rs, rp;
    const double ts = timed(
        [&] { rs = nsp_falsify_serial(op, inst.pattern, 0.5, inst.params.tau, 40000, 3, kernel); });
    const double tp =
        timed([&] { rp = nsp_falsify(op, inst.pattern, 0.5, inst.params.tau, 40000, 3, kernel); });
    report("nsp search (40k trials)", ts, tp);
    if (rs.value != rp.value) std::printf("  MISMATCH: %.17g vs %.17g\n", rs.value, rp.value);
  }

  {
    const auto U = compose(dft(512), idwt(WaveletSpec{WaveletFamily::Daubechies, 4, 5}, 512));
    cmat Ms, Mp;
    const double ts = timed([&] { Ms = materialize_serial(U); });
    const double tp = timed([&] { Mp = materialize(U); });
    report("materialize 512x512 chain", ts, tp);
    if ((Ms - Mp).norm() != 0.0) std::printf("  MISMATCH in materialization\n");
  }

  return 0;
}
