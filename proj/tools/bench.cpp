// Benchmark comparing the OpenMP kernels against their serial reference
// implementations on the heavier shipped workloads. Results must agree
// exactly; the program aborts with a nonzero exit if any pair differs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qinv/fusion.hpp"
#include "qinv/group.hpp"
#include "qinv/heegaard.hpp"
#include "qinv/hopf.hpp"
#include "qinv/kuperberg.hpp"
#include "qinv/scalars.hpp"
#include "qinv/triangulate.hpp"

#ifdef QINV_HAVE_OPENMP
#include <omp.h>
#endif

using namespace qinv;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double timed(const std::function<void()>& job) {
  auto t0 = Clock::now();
  job();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const std::string& name, const std::string& serial_value,
         const std::string& parallel_value, double serial_s,
         double parallel_s, bool parallel_ran) {
  bool same = serial_value == parallel_value;
  if (!same) ++failures;
  std::string verdict =
      same ? "value " + serial_value
           : "MISMATCH " + serial_value + " vs " + parallel_value;
  std::printf("%-38s serial %7.3fs   %s %7.3fs   speedup %4.2fx   %s\n",
              name.c_str(), serial_s,
              parallel_ran ? "parallel" : "fallback", parallel_s,
              serial_s / (parallel_s > 0 ? parallel_s : 1e-9),
              verdict.c_str());
}

void bench_ku(const HeegaardDiagram& d, const HopfData& a) {
  ContractionOptions opts;
  opts.strategy = Strategy::seq;
  Scalar sv = Scalar::zero(a.field);
  Scalar pv = Scalar::zero(a.field);
  ContractionStats pstats;
  double ss = timed([&] { sv = kuperberg_invariant_serial(d, a, opts); });
  double ps = timed([&] { pv = kuperberg_invariant(d, a, opts, &pstats); });
  row("ku " + d.name + " x " + a.name, sv.text(), pv.text(), ss, ps,
      pstats.parallel);
}

void bench_tv(const Triangulation& t, const FusionData& f) {
  Scalar sv = Scalar::zero(f.field);
  Scalar pv = Scalar::zero(f.field);
  TvStats pstats;
  double ss = timed([&] { sv = tv_state_sum_serial(t, f); });
  double ps = timed([&] { pv = tv_state_sum(t, f, {}, &pstats); });
  row("tv " + t.name + " x " + f.name, sv.text(), pv.text(), ss, ps,
      pstats.parallel);
}

void bench_hom(const HeegaardDiagram& d, const Group& g) {
  GroupPresentation pres = pi1_presentation(d);
  long long sv = 0, pv = 0;
  double ss = timed([&] { sv = hom_count_serial(pres, g); });
  double ps = timed([&] { pv = hom_count(pres, g); });
#ifdef QINV_HAVE_OPENMP
  bool parallel_ran = true;
#else
  bool parallel_ran = false;
#endif
  row("hom " + d.name + " -> " + g.name, std::to_string(sv),
      std::to_string(pv), ss, ps, parallel_ran);
}

}  // namespace

int main() {
#ifdef QINV_HAVE_OPENMP
  std::printf("OpenMP kernels enabled, %d thread(s)\n",
              omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial kernel\n");
#endif

  const FieldPtr q = FieldDescriptor::rationals();

  bench_ku(lens_diagram(8, 3), function_algebra(Group::quat8(), q));
  bench_ku(lens_diagram(7, 2), function_algebra(Group::sym3(), q));
  bench_ku(connected_sum(lens_diagram(2, 1), lens_diagram(3, 1)),
           function_algebra(Group::quat8(), q));

  bench_tv(s3_pentachoron(), vec_g_category(Group::cyclic(4)));
  bench_tv(s3_pentachoron(), vec_g_category(Group::cyclic(3)));
  bench_tv(s3_pentachoron(), fibonacci_category());

  HeegaardDiagram sum = stabilize(
      connected_sum(lens_diagram(4, 1), lens_diagram(3, 1)));
  bench_hom(sum, Group::direct_product(Group::quat8(), Group::sym3()));

  if (failures) {
    std::printf("%d kernel pair(s) disagree\n", failures);
    return 1;
  }
  return 0;
}
