// Acceptance gate. Runs the eleven release criteria end to end and prints a
// single PASS or FAIL line for each, with wall-clock timing. The process
// exits 0 only when every criterion holds. Unlike the doctest suites this is
// a plain program, so it can be read top to bottom as the release checklist.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "qinv/error.hpp"
#include "qinv/fusion.hpp"
#include "qinv/group.hpp"
#include "qinv/heegaard.hpp"
#include "qinv/hopf.hpp"
#include "qinv/kuperberg.hpp"
#include "qinv/scalars.hpp"
#include "qinv/triangulate.hpp"

#ifndef QINV_BIN
#error "QINV_BIN must name the CLI binary"
#endif
#ifndef QINV_DATA_DIR
#error "QINV_DATA_DIR must name the data corpus directory"
#endif

using namespace qinv;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CriterionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CriterionFailure(what);
}

// Separate from require so the message (and .front()) is only touched on
// failure.
void require_empty(const std::vector<std::string>& problems,
                   const std::string& who) {
  if (!problems.empty()) throw CriterionFailure(who + ": " + problems.front());
}

std::string fmt_secs(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << "s";
  return os.str();
}

struct Gate {
  int failures = 0;

  void run(int id, const char* label,
           const std::function<std::string()>& body) {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    try {
      note = body();
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    std::printf("%s %2d %-46s %8s  %s\n", ok ? "PASS" : "FAIL", id, label,
                fmt_secs(seconds_since(t0)).c_str(), note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// The stock family: k[G] and k^G for G in {Z2..Z7, S3, Q8}, and D(G) for the
// groups of order at most six.
std::vector<HopfData> stock_algebras(const FieldPtr& q) {
  std::vector<Group> groups;
  for (int n = 2; n <= 7; ++n) groups.push_back(Group::cyclic(n));
  groups.push_back(Group::sym3());
  groups.push_back(Group::quat8());
  std::vector<HopfData> out;
  for (const Group& g : groups) out.push_back(group_algebra(g, q));
  for (const Group& g : groups) out.push_back(function_algebra(g, q));
  for (const Group& g : groups)
    if (g.n <= 6) out.push_back(drinfeld_double(g, q));
  return out;
}

std::vector<Triangulation> stock_complexes() {
  return {s3_one_tet(),  s3_two_tet(),   s3_pentachoron(),
          s2xs1_tri(),   lens_2_1_tri(), lens_3_1_tri()};
}

std::vector<FusionData> stock_categories() {
  return {trivial_category(), vec_g_category(Group::cyclic(2)),
          vec_g_category(Group::cyclic(3)), vec_g_category(Group::cyclic(4)),
          fibonacci_category()};
}

}  // namespace

int main() {
  Gate gate;
  const FieldPtr q = FieldDescriptor::rationals();
  const std::vector<HopfData> algebras = stock_algebras(q);
  const std::string bin = QINV_BIN;
  const std::string dat = QINV_DATA_DIR;

  gate.run(1, "hopf axiom suite over the stock algebras", [&] {
    double worst = 0;
    std::string worst_name;
    for (const HopfData& a : algebras) {
      auto t0 = Clock::now();
      auto problems = validate_hopf(a);
      double s = seconds_since(t0);
      require_empty(problems, a.name);
      require(s < 5.0, a.name + " validated in " + fmt_secs(s));
      if (s > worst) {
        worst = s;
        worst_name = a.name;
      }
    }
    std::ostringstream os;
    os << algebras.size() << " algebras, slowest " << worst_name << " at "
       << fmt_secs(worst);
    return os.str();
  });

  gate.run(2, "integral and chromatic identities, every basis", [&] {
    for (const HopfData& a : algebras) {
      IntegralPair pair =
          normalize_integral_pair(a, right_integral(a), left_cointegral(a));
      require_empty(check_integral_identities(a, pair), a.name);
      // Construction threads every basis element through the morphism and
      // throws if any of them fails to collapse to lambda(x) id.
      ChromaticMatrix mat = chromatic_morphism_matrix(a, pair);
      require_empty(check_chromatic_identity(a, pair, mat), a.name);
    }
    return std::to_string(algebras.size()) + " algebras, all bundles empty";
  });

  gate.run(3, "sphere normalizes to 1 through genus four", [&] {
    const Scalar one = Scalar::one(q);
    std::vector<HeegaardDiagram> spheres = {s3_diagram()};
    while (spheres.back().alpha.size() < 4)
      spheres.push_back(stabilize(spheres.back()));
    int checks = 0;
    for (const HopfData& a : algebras)
      for (const HeegaardDiagram& d : spheres) {
        require(kuperberg_invariant(d, a) == one,
                a.name + " on genus " + std::to_string(d.alpha.size()));
        ++checks;
      }
    return std::to_string(checks) + " sphere evaluations, genus 1 to 4";
  });

  gate.run(4, "lens invariance, at least 200 move instances", [&] {
    std::vector<std::pair<int, int>> params;
    for (int p = 2; p <= 5; ++p)
      for (int qq = 1; qq < p; ++qq)
        if (std::gcd(p, qq) == 1) params.emplace_back(p, qq);
    int instances = 0;
    for (const HopfData& a : {group_algebra(Group::cyclic(2), q),
                              group_algebra(Group::cyclic(3), q)}) {
      for (auto [p, qq] : params) {
        const HeegaardDiagram d = lens_diagram(p, qq);
        const Scalar base = kuperberg_invariant(d, a);
        auto check = [&](const HeegaardDiagram& moved, const char* move) {
          require(kuperberg_invariant(moved, a) == base,
                  d.name + " x " + a.name + " changed under " + move);
          ++instances;
        };
        for (Side side : {Side::alpha, Side::beta})
          for (int k = 0; k < p; ++k)
            check(move_basepoint(d, side, 0, k), "basepoint rotation");
        for (Side side : {Side::alpha, Side::beta})
          check(reverse_curve(d, side, 0), "orientation reversal");
        HeegaardDiagram st = stabilize(d);
        check(st, "stabilization");
        check(stabilize(st), "double stabilization");
      }
    }
    require(instances >= 200,
            "only " + std::to_string(instances) + " instances");
    return std::to_string(instances) + " instances, all values unchanged";
  });

  gate.run(5, "group-algebra values count homomorphisms", [&] {
    auto t0 = Clock::now();
    // One-time calibration of the exponent c in value = |Hom| * |G|^c on the
    // sphere and on S2xS1; the answer must be consistent across all four
    // probes before it is trusted.
    int exponent = 0;
    bool have = false;
    for (const HeegaardDiagram& d : {s3_diagram(), s2xs1_diagram()})
      for (const Group& g : {Group::cyclic(2), Group::cyclic(3)}) {
        Scalar val = kuperberg_invariant(d, group_algebra(g, q));
        long long hom = hom_count(pi1_presentation(d), g);
        bool found = false;
        for (int c = -3; c <= 3 && !found; ++c) {
          mpq_class expect((long)hom);
          for (int i = 0; i < c; ++i) expect *= g.n;
          for (int i = 0; i > c; --i) expect /= g.n;
          if (val == Scalar::rational(q, expect)) {
            require(!have || exponent == c, "calibration is inconsistent");
            exponent = c;
            have = true;
            found = true;
          }
        }
        require(found, "no exponent fits " + d.name + " x " + g.name);
      }
    require(exponent == 0,
            "calibrated exponent " + std::to_string(exponent) + ", not 0");

    std::vector<HeegaardDiagram> diagrams = {
        s3_diagram(),       s2xs1_diagram(),    lens_diagram(2, 1),
        lens_diagram(3, 1), lens_diagram(5, 1), lens_diagram(5, 2),
        connected_sum(lens_diagram(2, 1), lens_diagram(3, 1))};
    std::vector<Group> groups;
    for (int n = 2; n <= 6; ++n) groups.push_back(Group::cyclic(n));
    groups.push_back(Group::sym3());
    int checks = 0;
    for (const HeegaardDiagram& d : diagrams) {
      GroupPresentation pres = pi1_presentation(d);
      for (const Group& g : groups) {
        Scalar val = kuperberg_invariant(d, group_algebra(g, q));
        long long hom = hom_count(pres, g);
        require(val == Scalar::integer(q, (long)hom),
                d.name + " x " + g.name + ": value " + val.text() +
                    " vs count " + std::to_string(hom));
        ++checks;
      }
    }
    double s = seconds_since(t0);
    require(s < 120.0, "took " + fmt_secs(s) + ", limit 120s");
    return "exponent 0, " + std::to_string(checks) + " diagram/group pairs";
  });

  gate.run(6, "characteristic two kills the lens(2,1) value", [&] {
    const FieldPtr f2 = FieldDescriptor::parse("Fp:2");
    Scalar v = kuperberg_invariant(lens_diagram(2, 1),
                                   group_algebra(Group::cyclic(2), f2));
    require(v == Scalar::zero(f2), "got " + v.text());
    return "value " + v.text();
  });

  gate.run(7, "state-sum normalization on spheres and S2xS1", [&] {
    const FusionData triv = trivial_category();
    for (const Triangulation& t : stock_complexes())
      require(tv_state_sum(t, triv) == Scalar::one(triv.field),
              "trivial category on " + t.name);
    for (int n : {2, 3}) {
      FusionData v = vec_g_category(Group::cyclic(n));
      require(tv_state_sum(s3_one_tet(), v) ==
                  Scalar::rational(v.field, mpq_class(1, n)),
              v.name + " on the sphere");
    }
    FusionData v2 = vec_g_category(Group::cyclic(2));
    require(tv_state_sum(s2xs1_tri(), v2) == Scalar::one(v2.field),
            "vec_z2 on s2xs1");
    return "6 trivial values, 1/|G| spheres, s2xs1 = 1";
  });

  gate.run(8, "command-line crosscheck with homology guard", [&] {
    struct ManifoldPair {
      const char* hgd;
      const char* tri;
    };
    const std::vector<ManifoldPair> pairs = {
        {"s3.hgd", "s3_one_tet.tri"},
        {"s2xs1.hgd", "s2xs1.tri"},
        {"lens_2_1.hgd", "lens_2_1.tri"},
        {"lens_3_1.hgd", "lens_3_1.tri"}};
    int runs = 0;
    for (const ManifoldPair& p : pairs)
      for (const char* g : {"z2", "z3", "z4"}) {
        auto [code, out] = testutil::run_cli(
            bin + " crosscheck " + dat + "/diagrams/" + p.hgd + " " + dat +
            "/triangulations/" + p.tri + " --group " + g);
        require(code == 0, std::string(p.hgd) + " x " + g + " exited " +
                               std::to_string(code) + ": " + out);
        require(out.find("pass") != std::string::npos,
                std::string(p.hgd) + " x " + g + " printed no pass line");
        ++runs;
      }
    // The guard has to bite on a genuine mismatch, not just stay quiet.
    auto [code, out] = testutil::run_cli(
        bin + " crosscheck " + dat + "/diagrams/lens_2_1.hgd " + dat +
        "/triangulations/lens_3_1.tri --group z2");
    require(code == 5 && out.find("homology mismatch") != std::string::npos,
            "mismatched pair exited " + std::to_string(code));
    return std::to_string(runs) + " matched runs, guard rejects a mismatch";
  });

  gate.run(9, "pentagon holds; every 6j corruption is caught", [&] {
    for (int n : {2, 3, 4}) {
      FusionData v = vec_g_category(Group::cyclic(n));
      require_empty(validate_fusion(v), v.name);
      require_empty(validate_pentagon(v), v.name);
    }
    FusionData fib = FusionData::parse(slurp(dat + "/fusion/fibonacci.fus"));
    require_empty(validate_fusion(fib), "fibonacci");
    require_empty(validate_pentagon(fib), "fibonacci");
    int corruptions = 0;
    for (const auto& [key, value] : fib.sixj) {
      FusionData bad = fib;
      bad.sixj[key] = value + Scalar::one(fib.field);
      auto probs = validate_fusion(bad);
      if (probs.empty()) probs = validate_pentagon(bad);
      require(!probs.empty(), "corruption of entry " + std::to_string(key) +
                                  " slipped through");
      ++corruptions;
    }
    std::ostringstream os;
    os << "all " << corruptions << " single-entry corruptions caught; note: "
       << "the tetrahedrally symmetric 6j table needs the square root of the "
       << "golden ratio, so the file lives over " << fib.field->text()
       << " with t^2 golden, not the quadratic field";
    return os.str();
  });

  gate.run(10, "sphere state sum is triangulation independent", [&] {
    std::vector<Triangulation> spheres = {s3_one_tet(), s3_two_tet(),
                                          s3_pentachoron()};
    int checks = 0;
    for (const FusionData& c : stock_categories()) {
      Scalar first = tv_state_sum(spheres.front(), c);
      for (size_t i = 1; i < spheres.size(); ++i) {
        require(tv_state_sum(spheres[i], c) == first,
                c.name + " differs on " + spheres[i].name);
        ++checks;
      }
    }
    return std::to_string(checks) + " equalities across 3 sphere complexes";
  });

  gate.run(11, "sixty-second bounds with the streaming strategy", [&] {
    ContractionOptions seq;
    seq.strategy = Strategy::seq;
    double worst = 0;
    std::string worst_name;
    auto timed = [&](const std::string& name,
                     const std::function<void()>& job) {
      auto t0 = Clock::now();
      job();
      double s = seconds_since(t0);
      require(s < 60.0, name + " took " + fmt_secs(s));
      if (s > worst) {
        worst = s;
        worst_name = name;
      }
    };
    // Every shipped diagram stays within bounds against dimension-8
    // algebras of both structure types, the function algebra being the
    // expensive one (its coproduct branches n ways per leg).
    std::vector<HeegaardDiagram> diagrams = {
        s3_diagram(),       s2xs1_diagram(),    lens_diagram(2, 1),
        lens_diagram(3, 1), lens_diagram(4, 1), lens_diagram(5, 1),
        lens_diagram(5, 2), lens_diagram(8, 3),
        connected_sum(lens_diagram(2, 1), lens_diagram(3, 1))};
    for (const HopfData& a : {group_algebra(Group::quat8(), q),
                              function_algebra(Group::quat8(), q)})
      for (const HeegaardDiagram& d : diagrams)
        timed(d.name + " x " + a.name,
              [&] { (void)kuperberg_invariant(d, a, seq); });
    for (const HopfData& a : {group_algebra(Group::cyclic(6), q),
                              group_algebra(Group::sym3(), q),
                              function_algebra(Group::sym3(), q)})
      for (int qq : {1, 2})
        timed("lens_7_" + std::to_string(qq) + " x " + a.name, [&] {
          (void)kuperberg_invariant(lens_diagram(7, qq), a, seq);
        });
    for (const Triangulation& t : stock_complexes())
      for (const FusionData& c : stock_categories())
        timed(t.name + " x " + c.name, [&] { (void)tv_state_sum(t, c); });
    return "slowest job " + worst_name + " at " + fmt_secs(worst);
  });

  if (gate.failures == 0) {
    std::printf("all 11 criteria passed\n");
    return 0;
  }
  std::printf("%d of 11 criteria failed\n", gate.failures);
  return 1;
}
