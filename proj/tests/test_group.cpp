#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qinv/error.hpp"
#include "qinv/group.hpp"

using namespace qinv;

namespace {

void check_group_axioms(const Group& g) {
  const int n = g.n;
  REQUIRE(n >= 1);
  CHECK(g.validate().empty());
  for (int a = 0; a < n; ++a) {
    CHECK(g.op(g.identity(), a) == a);
    CHECK(g.op(a, g.identity()) == a);
    CHECK(g.op(a, g.inverse(a)) == g.identity());
    CHECK(g.op(g.inverse(a), a) == g.identity());
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        CHECK(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)));
}

int element_order(const Group& g, int a) {
  int x = g.identity(), ord = 0;
  do {
    x = g.op(x, a);
    ++ord;
  } while (x != g.identity());
  return ord;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("cyclic groups satisfy the axioms and are abelian") {
    for (int n = 1; n <= 8; ++n) {
      Group g = Group::cyclic(n);
      CHECK(g.n == n);
      check_group_axioms(g);
      CHECK(g.is_abelian());
      for (int a = 0; a < n; ++a) CHECK(n % element_order(g, a) == 0);
    }
  }

  TEST_CASE("symmetric group on three letters") {
    Group g = Group::sym3();
    CHECK(g.n == 6);
    check_group_axioms(g);
    CHECK_FALSE(g.is_abelian());
    int ord2 = 0, ord3 = 0;
    for (int a = 0; a < 6; ++a) {
      if (element_order(g, a) == 2) ++ord2;
      if (element_order(g, a) == 3) ++ord3;
    }
    CHECK(ord2 == 3);
    CHECK(ord3 == 2);
  }

  TEST_CASE("quaternion group") {
    Group g = Group::quat8();
    CHECK(g.n == 8);
    check_group_axioms(g);
    CHECK_FALSE(g.is_abelian());
    int ord2 = 0, ord4 = 0;
    for (int a = 0; a < 8; ++a) {
      if (element_order(g, a) == 2) ++ord2;
      if (element_order(g, a) == 4) ++ord4;
    }
    CHECK(ord2 == 1);
    CHECK(ord4 == 6);
  }

  TEST_CASE("direct products") {
    Group z2 = Group::cyclic(2);
    Group z3 = Group::cyclic(3);
    Group p = Group::direct_product(z2, z3);
    CHECK(p.n == 6);
    check_group_axioms(p);
    CHECK(p.is_abelian());
    // Z2 x Z3 is cyclic of order 6
    bool has6 = false;
    for (int a = 0; a < 6; ++a)
      if (element_order(p, a) == 6) has6 = true;
    CHECK(has6);

    Group v4 = Group::direct_product(z2, z2);
    CHECK(v4.n == 4);
    check_group_axioms(v4);
    for (int a = 0; a < 4; ++a) CHECK(v4.op(a, a) == v4.identity());
  }

  TEST_CASE("serialization round trip") {
    std::vector<Group> gs = {Group::cyclic(1), Group::cyclic(5), Group::sym3(),
                             Group::quat8(),
                             Group::direct_product(Group::cyclic(2),
                                                   Group::cyclic(2))};
    for (const Group& g : gs) {
      std::string text = g.serialize();
      Group back = Group::parse(text);
      CHECK(back.name == g.name);
      REQUIRE(back.n == g.n);
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) CHECK(back.op(a, b) == g.op(a, b));
      CHECK(back.serialize() == text);
    }
  }

  TEST_CASE("corrupt multiplication tables are rejected") {
    Group g = Group::cyclic(3);

    SUBCASE("broken cancellation") {
      Group bad = g;
      bad.mul[1][1] = 1;
      CHECK_THROWS_AS(Group::parse(bad.serialize()), ValidationError);
    }
    SUBCASE("entry out of range") {
      Group bad = g;
      bad.mul[2][2] = 7;
      CHECK_THROWS_AS(Group::parse(bad.serialize()), ValidationError);
    }
    SUBCASE("truncated table") {
      std::string text = g.serialize();
      text.resize(text.rfind('\n', text.size() - 2) + 1);
      CHECK_THROWS_AS(Group::parse(text), ParseError);
    }
    SUBCASE("wrong leading keyword") {
      CHECK_THROWS_AS(Group::parse("ring z3 order 3\n0 1 2\n1 2 0\n2 0 1\n"),
                      ParseError);
    }
  }

  TEST_CASE("from_spec") {
    CHECK(Group::from_spec("z4").n == 4);
    CHECK(Group::from_spec("Z4").n == 4);
    CHECK(Group::from_spec("s3").n == 6);
    CHECK(Group::from_spec("Q8").n == 8);
    CHECK(Group::from_spec("z2xz2").n == 4);
    CHECK(Group::from_spec("z2xz2xz2").n == 8);
    CHECK_FALSE(Group::from_spec("z3xs3").is_abelian());
    CHECK(Group::from_spec("z3xs3").n == 18);
    CHECK_THROWS_AS(Group::from_spec("z0"), ParseError);
    CHECK_THROWS_AS(Group::from_spec("frobnicate"), ParseError);
    CHECK_THROWS_AS(Group::from_spec(""), ParseError);
  }
}
