#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qinv/error.hpp"
#include "qinv/fusion.hpp"
#include "qinv/group.hpp"

using namespace qinv;

namespace {

// Relabels a category by a permutation with perm[0] = 0. All structure moves
// with the labels, so validation and pentagon reports must stay empty.
FusionData relabel(const FusionData& f, const std::vector<int>& perm) {
  FusionData g = f;
  g.name = f.name + "_relabeled";
  int k = f.labels;
  for (int i = 0; i < k; ++i) g.dual[perm[i]] = perm[f.dual[i]];
  for (int i = 0; i < k; ++i) g.qdim[perm[i]] = f.qdim[i];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        g.fuse[((size_t)perm[i] * k + perm[j]) * k + perm[l]] =
            f.fuse[((size_t)i * k + j) * k + l];
  g.sixj.clear();
  for (const auto& [key, val] : f.sixj) {
    auto t = FusionData::unkey(key);
    g.sixj[FusionData::key(perm[t[0]], perm[t[1]], perm[t[2]], perm[t[3]],
                           perm[t[4]], perm[t[5]])] = val;
  }
  return g;
}

}  // namespace

TEST_SUITE("fusion") {
  TEST_CASE("stock categories validate and satisfy the pentagon") {
    std::vector<FusionData> cats = {trivial_category(),
                                    vec_g_category(Group::cyclic(2)),
                                    vec_g_category(Group::cyclic(3)),
                                    vec_g_category(Group::cyclic(4)),
                                    vec_g_category(Group::sym3()),
                                    fibonacci_category()};
    for (const FusionData& f : cats) {
      CAPTURE(f.name);
      CHECK(validate_fusion(f).empty());
      CHECK(validate_pentagon(f).empty());
    }
  }

  TEST_CASE("global dimensions") {
    CHECK(global_dimension(trivial_category()).text() == "1");
    Group z3 = Group::cyclic(3);
    auto q = FieldDescriptor::rationals();
    CHECK(global_dimension(vec_g_category(z3)) == Scalar::integer(q, 3));
    FusionData fib = fibonacci_category();
    // 1 + (t^2)^2 = t^2 + 2 in the quartic field
    Scalar want = Scalar::parse(fib.field, "2 + 1*t^2");
    CHECK(global_dimension(fib) == want);
  }

  TEST_CASE("fibonacci data is the golden one") {
    FusionData fib = fibonacci_category();
    REQUIRE(fib.labels == 2);
    CHECK(fib.dual == std::vector<int>({0, 1}));
    CHECK(fib.n(1, 1, 0));
    CHECK(fib.n(1, 1, 1));
    CHECK(fib.qdim[1] == Scalar::parse(fib.field, "1*t^2"));
    // t^2 really is golden: (t^2)^2 = t^2 + 1
    Scalar phi = fib.qdim[1];
    CHECK(phi * phi == phi + Scalar::one(fib.field));
    CHECK(fib.sixj.size() == 15);
    auto all_tau = fib.sixj.find(FusionData::key(1, 1, 1, 1, 1, 1));
    REQUIRE(all_tau != fib.sixj.end());
    CHECK(all_tau->second == Scalar::parse(fib.field, "-2 + 1*t^2"));
  }

  TEST_CASE("tetrahedral symmetry group") {
    const auto& syms = sixj_symmetries();
    CHECK(syms.size() == 24);

    // no duplicates
    std::set<std::pair<std::array<int, 6>, unsigned>> seen;
    for (const auto& s : syms) CHECK(seen.insert({s.perm, s.mask}).second);

    // closure: composing any two symmetries lands back in the set, checked
    // through the action on a generic tuple with a nontrivial dual
    FusionData f = vec_g_category(Group::cyclic(5));
    std::array<int, 6> probe = {1, 2, 3, 4, 0, 3};
    for (const auto& s : syms)
      for (const auto& t : syms) {
        auto once = apply_symmetry(t, apply_symmetry(s, probe, f.dual), f.dual);
        bool found = false;
        for (const auto& u : syms)
          if (apply_symmetry(u, probe, f.dual) == once) found = true;
        CHECK(found);
      }

    // identity is present
    bool has_id = false;
    for (const auto& s : syms)
      if (s.perm == std::array<int, 6>{0, 1, 2, 3, 4, 5} && s.mask == 0)
        has_id = true;
    CHECK(has_id);
  }

  TEST_CASE("symmetries preserve admissibility and table values") {
    for (const FusionData& f :
         {vec_g_category(Group::cyclic(4)), fibonacci_category()}) {
      CAPTURE(f.name);
      for (const auto& [key, val] : f.sixj) {
        auto t = FusionData::unkey(key);
        for (const auto& s : sixj_symmetries()) {
          auto img = apply_symmetry(s, t, f.dual);
          CHECK(f.tuple_admissible(img));
          auto it = f.sixj.find(
              FusionData::key(img[0], img[1], img[2], img[3], img[4], img[5]));
          REQUIRE(it != f.sixj.end());
          CHECK(it->second == val);
        }
      }
    }
  }

  TEST_CASE("relabeling leaves validation clean") {
    FusionData z4 = vec_g_category(Group::cyclic(4));
    FusionData moved = relabel(z4, {0, 3, 1, 2});
    CHECK(validate_fusion(moved).empty());
    CHECK(validate_pentagon(moved).empty());
    CHECK(global_dimension(moved) == global_dimension(z4));

    FusionData fib_swapped = relabel(fibonacci_category(), {0, 1});
    CHECK(validate_pentagon(fib_swapped).empty());
  }

  TEST_CASE("corruptions are caught with witnesses") {
    SUBCASE("single entry value change breaks the pentagon") {
      FusionData fib = fibonacci_category();
      auto k6 = FusionData::key(1, 1, 1, 1, 1, 1);
      fib.sixj[k6] = fib.sixj[k6] + Scalar::one(fib.field);
      auto problems = validate_pentagon(fib);
      REQUIRE_FALSE(problems.empty());
      bool witnessed = false;
      for (const auto& p : problems)
        if (p.find("pentagon identity fails at") != std::string::npos)
          witnessed = true;
      CHECK(witnessed);
    }
    SUBCASE("value change off the full orbit breaks symmetry closure") {
      FusionData fib = fibonacci_category();
      // (1,1,1,1,1,0) has a nontrivial orbit; change only this member
      auto k = FusionData::key(1, 1, 1, 1, 1, 0);
      REQUIRE(fib.sixj.count(k) == 1);
      fib.sixj[k] = fib.sixj[k] * Scalar::parse(fib.field, "1*t");
      auto problems = validate_pentagon(fib);
      REQUIRE_FALSE(problems.empty());
      bool saw_symmetry = false;
      for (const auto& p : problems)
        if (p.find("symmetr") != std::string::npos) saw_symmetry = true;
      CHECK(saw_symmetry);
    }
    SUBCASE("entry on an inadmissible tuple") {
      FusionData z2 = vec_g_category(Group::cyclic(2));
      z2.sixj[FusionData::key(1, 0, 0, 0, 0, 0)] = Scalar::one(z2.field);
      auto problems = validate_pentagon(z2);
      REQUIRE_FALSE(problems.empty());
      bool saw = false;
      for (const auto& p : problems)
        if (p.find("inadmissible") != std::string::npos) saw = true;
      CHECK(saw);
    }
    SUBCASE("missing orbit member is reported") {
      FusionData fib = fibonacci_category();
      fib.sixj.erase(FusionData::key(1, 1, 1, 1, 1, 0));
      auto problems = validate_pentagon(fib);
      CHECK_FALSE(problems.empty());
    }
    SUBCASE("extra fusion channel breaks qdim and cyclicity checks") {
      FusionData z3 = vec_g_category(Group::cyclic(3));
      // add a second fusion channel 1 (x) 1 -> 1 alongside 1 (x) 1 -> 2
      z3.fuse[((size_t)1 * 3 + 1) * 3 + 1] = 1;
      auto problems = validate_fusion(z3);
      REQUIRE_FALSE(problems.empty());
    }
    SUBCASE("wrong dual map") {
      FusionData z3 = vec_g_category(Group::cyclic(3));
      z3.dual = {0, 1, 2};  // 1 and 2 must swap for vec(Z3)
      auto problems = validate_fusion(z3);
      REQUIRE_FALSE(problems.empty());
      bool saw = false;
      for (const auto& p : problems)
        if (p.find("dual") != std::string::npos ||
            p.find("duality") != std::string::npos)
          saw = true;
      CHECK(saw);
    }
  }

  TEST_CASE("serialization round trip") {
    for (const FusionData& f :
         {trivial_category(), vec_g_category(Group::sym3()),
          fibonacci_category(),
          vec_g_category(Group::cyclic(2), FieldDescriptor::prime_field(5))}) {
      CAPTURE(f.name);
      std::string text = f.serialize();
      FusionData back = FusionData::parse(text);
      CHECK(back.name == f.name);
      CHECK(back.labels == f.labels);
      CHECK(back.field->text() == f.field->text());
      CHECK(back.dual == f.dual);
      CHECK(back.qdim == f.qdim);
      CHECK(back.fuse == f.fuse);
      REQUIRE(back.sixj.size() == f.sixj.size());
      for (const auto& [key, val] : f.sixj) {
        auto it = back.sixj.find(key);
        REQUIRE(it != back.sixj.end());
        CHECK(it->second == val);
      }
      CHECK(back.serialize() == text);
      CHECK(validate_pentagon(back).empty());
    }
  }

  TEST_CASE("parser rejects malformed files") {
    CHECK_THROWS_AS((void)FusionData::parse(""), ParseError);
    std::string good = vec_g_category(Group::cyclic(2)).serialize();
    CHECK_THROWS_AS((void)FusionData::parse(good + "mystery: 1\n"), ParseError);

    SUBCASE("missing qdim line") {
      FusionData z2 = vec_g_category(Group::cyclic(2));
      std::string text = z2.serialize();
      auto pos = text.find("qdim: 1");
      REQUIRE(pos != std::string::npos);
      auto end = text.find('\n', pos);
      text.erase(pos, end - pos + 1);
      CHECK_THROWS_AS((void)FusionData::parse(text), ParseError);
    }
    SUBCASE("duplicate dual line") {
      FusionData z2 = vec_g_category(Group::cyclic(2));
      std::string text = z2.serialize() + "dual: 1 1\n";
      CHECK_THROWS_AS((void)FusionData::parse(text), ParseError);
    }
    SUBCASE("sixj label out of range") {
      FusionData z2 = vec_g_category(Group::cyclic(2));
      std::string text = z2.serialize() + "sixj: 0 0 0 0 0 9 1\n";
      CHECK_THROWS_AS((void)FusionData::parse(text), ParseError);
    }
  }
}
