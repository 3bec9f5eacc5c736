#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qinv/error.hpp"
#include "qinv/heegaard.hpp"

using namespace qinv;

namespace {

// Random structurally valid diagram: every crossing sits on exactly one
// alpha and one beta curve, and both curve orders are random.
HeegaardDiagram random_diagram(std::mt19937& rng, int genus, int ncross) {
  HeegaardDiagram d;
  d.name = "random";
  d.genus = genus;
  d.alpha.assign(genus, {});
  d.beta.assign(genus, {});
  for (int c = 0; c < ncross; ++c) {
    Crossing cr;
    cr.alpha_curve = (int)(rng() % genus);
    cr.beta_curve = (int)(rng() % genus);
    cr.sign = (rng() % 2) ? +1 : -1;
    d.crossings.push_back(cr);
    d.alpha[cr.alpha_curve].push_back(c);
    d.beta[cr.beta_curve].push_back(c);
  }
  for (auto& curve : d.alpha) std::shuffle(curve.begin(), curve.end(), rng);
  for (auto& curve : d.beta) std::shuffle(curve.begin(), curve.end(), rng);
  return d;
}

long long lens_hom_count(int p, const Group& g) {
  // pi1 of the (p,q) lens space is Z/p, so homs are elements with x^p = e
  long long count = 0;
  for (int a = 0; a < g.n; ++a) {
    int x = g.identity();
    for (int i = 0; i < p; ++i) x = g.op(x, a);
    if (x == g.identity()) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("heegaard") {
  TEST_CASE("builders produce valid diagrams") {
    CHECK(validate_diagram(s3_diagram()).empty());
    CHECK(validate_diagram(s2xs1_diagram()).empty());
    for (int p = 2; p <= 8; ++p)
      for (int q = 1; q < p; ++q)
        if (std::gcd(p, q) == 1) {
          HeegaardDiagram d = lens_diagram(p, q);
          CHECK(validate_diagram(d).empty());
          CHECK(d.genus == 1);
          CHECK((int)d.crossings.size() == p);
        }
    CHECK(validate_diagram(connected_sum(lens_diagram(2, 1),
                                         lens_diagram(3, 1))).empty());
    CHECK_THROWS_AS((void)lens_diagram(4, 2), ValidationError);
  }

  TEST_CASE("random diagrams round trip through the text format") {
    std::mt19937 rng(20250818);
    for (int trial = 0; trial < 100; ++trial) {
      int genus = 1 + (int)(rng() % 3);
      int ncross = 1 + (int)(rng() % 6);
      HeegaardDiagram d = random_diagram(rng, genus, ncross);
      REQUIRE(validate_diagram(d).empty());
      std::string text = d.serialize();
      HeegaardDiagram back = HeegaardDiagram::parse(text);
      CHECK(back.name == d.name);
      CHECK(back.genus == d.genus);
      REQUIRE(back.crossings.size() == d.crossings.size());
      for (size_t i = 0; i < d.crossings.size(); ++i) {
        CHECK(back.crossings[i].alpha_curve == d.crossings[i].alpha_curve);
        CHECK(back.crossings[i].beta_curve == d.crossings[i].beta_curve);
        CHECK(back.crossings[i].sign == d.crossings[i].sign);
      }
      CHECK(back.alpha == d.alpha);
      CHECK(back.beta == d.beta);
      CHECK(back.serialize() == text);
    }
  }

  TEST_CASE("validation catches structural damage") {
    HeegaardDiagram d = lens_diagram(3, 1);

    SUBCASE("crossing missing from its alpha curve") {
      d.alpha[0].pop_back();
      CHECK_FALSE(validate_diagram(d).empty());
    }
    SUBCASE("crossing listed twice") {
      d.beta[0].push_back(d.beta[0].front());
      CHECK_FALSE(validate_diagram(d).empty());
    }
    SUBCASE("dangling crossing id") {
      d.alpha[0][0] = 17;
      CHECK_FALSE(validate_diagram(d).empty());
    }
    SUBCASE("bad sign") {
      d.crossings[0].sign = 2;
      CHECK_FALSE(validate_diagram(d).empty());
    }
    SUBCASE("curve count disagrees with genus") {
      d.genus = 2;
      CHECK_FALSE(validate_diagram(d).empty());
    }
  }

  TEST_CASE("parser rejects malformed files") {
    CHECK_THROWS_AS((void)HeegaardDiagram::parse(""), ParseError);
    CHECK_THROWS_AS((void)HeegaardDiagram::parse("heegaard x\ngenus -1\n"),
                    ParseError);
    std::string good = lens_diagram(2, 1).serialize();
    CHECK_THROWS_AS((void)HeegaardDiagram::parse(good + "junk\n"), ParseError);
  }

  TEST_CASE("fundamental group of the standard diagrams") {
    GroupPresentation s3 = pi1_presentation(s3_diagram());
    CHECK(s3.generators == 1);
    CHECK(h1_from_presentation(s3) == H1Group{});

    GroupPresentation s2s1 = pi1_presentation(s2xs1_diagram());
    CHECK(h1_from_presentation(s2s1) == H1Group{1, {}});

    for (int p = 2; p <= 7; ++p) {
      H1Group h = h1_from_presentation(pi1_presentation(lens_diagram(p, 1)));
      CHECK(h == H1Group{0, {p}});
    }

    H1Group sum = h1_from_presentation(
        pi1_presentation(connected_sum(lens_diagram(2, 1), lens_diagram(3, 1))));
    CHECK(sum == H1Group{0, {6}});

    H1Group v4 = h1_from_presentation(
        pi1_presentation(connected_sum(lens_diagram(2, 1), lens_diagram(2, 1))));
    CHECK(v4 == H1Group{0, {2, 2}});
  }

  TEST_CASE("hom counts match the closed form for lens spaces") {
    std::vector<Group> gs = {Group::cyclic(2), Group::cyclic(6), Group::sym3(),
                             Group::quat8()};
    for (int p = 2; p <= 7; ++p)
      for (int q : {1, p - 1}) {
        if (std::gcd(p, q) != 1) continue;
        GroupPresentation pres = pi1_presentation(lens_diagram(p, q));
        for (const Group& g : gs) {
          long long want = lens_hom_count(p, g);
          CHECK(hom_count(pres, g) == want);
          CHECK(hom_count_serial(pres, g) == want);
        }
      }
  }

  TEST_CASE("hom counts multiply under connected sum") {
    HeegaardDiagram sum = connected_sum(lens_diagram(2, 1), lens_diagram(3, 1));
    GroupPresentation pres = pi1_presentation(sum);
    for (const Group& g : {Group::sym3(), Group::cyclic(6), Group::quat8()}) {
      long long a = lens_hom_count(2, g);
      long long b = lens_hom_count(3, g);
      CHECK(hom_count(pres, g) == a * b);
    }
  }

  TEST_CASE("hom count respects the cost cap") {
    GroupPresentation pres =
        pi1_presentation(connected_sum(lens_diagram(2, 1), lens_diagram(2, 1)));
    Group g = Group::quat8();
    CHECK_THROWS_AS((void)hom_count(pres, g, 10), CostCapError);
    CHECK_THROWS_AS((void)hom_count_serial(pres, g, 10), CostCapError);
  }

  TEST_CASE("moves preserve the presentation's abelianization") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 25; ++trial) {
      HeegaardDiagram d = random_diagram(rng, 1 + (int)(rng() % 2),
                                         1 + (int)(rng() % 5));
      H1Group h = h1_from_presentation(pi1_presentation(d));

      HeegaardDiagram st = stabilize(d);
      REQUIRE(validate_diagram(st).empty());
      CHECK(st.genus == d.genus + 1);
      CHECK(h1_from_presentation(pi1_presentation(st)) == h);

      for (Side side : {Side::alpha, Side::beta}) {
        int idx = (int)(rng() % d.genus);
        HeegaardDiagram rev = reverse_curve(d, side, idx);
        REQUIRE(validate_diagram(rev).empty());
        CHECK(h1_from_presentation(pi1_presentation(rev)) == h);

        const auto& curves = side == Side::alpha ? d.alpha : d.beta;
        if (!curves[idx].empty()) {
          int k = (int)(rng() % curves[idx].size());
          HeegaardDiagram rot = move_basepoint(d, side, idx, k);
          REQUIRE(validate_diagram(rot).empty());
          CHECK(h1_from_presentation(pi1_presentation(rot)) == h);
        }
      }
    }
  }

  TEST_CASE("moves preserve hom counts into a non-abelian group") {
    Group g = Group::sym3();
    HeegaardDiagram d = lens_diagram(4, 3);
    GroupPresentation base = pi1_presentation(d);
    long long want = hom_count(base, g);
    // the added curve pair contributes a generator killed by its own relator
    CHECK(hom_count(pi1_presentation(stabilize(d)), g) == want);
    for (Side side : {Side::alpha, Side::beta}) {
      CHECK(hom_count(pi1_presentation(reverse_curve(d, side, 0)), g) == want);
      for (size_t k = 1; k < 4; ++k)
        CHECK(hom_count(pi1_presentation(move_basepoint(d, side, 0, (int)k)), g) ==
              want);
    }
  }
}
