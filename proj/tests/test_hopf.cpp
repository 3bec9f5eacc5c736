#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qinv/error.hpp"
#include "qinv/group.hpp"
#include "qinv/hopf.hpp"

using namespace qinv;

namespace {

IntegralPair integrals(const HopfData& d) {
  return normalize_integral_pair(d, right_integral(d), left_cointegral(d));
}

}  // namespace

TEST_SUITE("hopf") {
  TEST_CASE("group and function algebras satisfy the axioms") {
    auto q = FieldDescriptor::rationals();
    for (const char* spec : {"z2", "z5", "s3", "q8"}) {
      Group g = Group::from_spec(spec);
      HopfData ka = group_algebra(g, q);
      CHECK(ka.n == g.n);
      CHECK(validate_hopf(ka).empty());
      HopfData fa = function_algebra(g, q);
      CHECK(fa.n == g.n);
      CHECK(validate_hopf(fa).empty());
    }
    auto f2 = FieldDescriptor::prime_field(2);
    CHECK(validate_hopf(group_algebra(Group::cyclic(2), f2)).empty());
    CHECK(validate_hopf(function_algebra(Group::cyclic(2), f2)).empty());
  }

  TEST_CASE("doubles satisfy the axioms") {
    auto q = FieldDescriptor::rationals();
    for (const char* spec : {"z2", "z3", "z2xz2"}) {
      HopfData d = drinfeld_double(Group::from_spec(spec), q);
      CHECK(d.n == Group::from_spec(spec).n * Group::from_spec(spec).n);
      CHECK(validate_hopf(d).empty());
    }
    CHECK_THROWS_AS((void)drinfeld_double(Group::quat8(), q, 6),
                    UnsupportedError);
  }

  TEST_CASE("sweedler algebra validates but is not involutory") {
    auto q = FieldDescriptor::rationals();
    HopfData h4 = testutil::sweedler_h4(q);
    CHECK(validate_hopf(h4).empty());
    IntegralPair pair = integrals(h4);
    HopfProfile p = profile(h4, pair);
    CHECK_FALSE(p.involutory);
    CHECK_FALSE(p.unimodular);
    // the antipode squares to conjugation by the grouplike g
    REQUIRE(p.pivot.has_value());
  }

  TEST_CASE("corrupt structure constants are reported") {
    auto q = FieldDescriptor::rationals();
    HopfData d = group_algebra(Group::cyclic(3), q);

    SUBCASE("broken multiplication") {
      d.mult[((size_t)1 * 3 + 1) * 3 + 0] = Scalar::one(q);
      auto problems = validate_hopf(d);
      CHECK_FALSE(problems.empty());
    }
    SUBCASE("broken antipode") {
      d.antipode[(size_t)1 * 3 + 1] = Scalar::one(q);
      auto problems = validate_hopf(d);
      REQUIRE_FALSE(problems.empty());
      bool saw_antipode = false;
      for (const auto& p : problems)
        if (p.find("antipode") != std::string::npos) saw_antipode = true;
      CHECK(saw_antipode);
    }
    SUBCASE("inconsistent tensor sizes") {
      d.mult.pop_back();
      CHECK_THROWS_AS((void)validate_hopf(d), ValidationError);
    }
  }

  TEST_CASE("integral pairs exist, normalize and satisfy the identities") {
    auto q = FieldDescriptor::rationals();
    std::vector<HopfData> algebras;
    for (const char* spec : {"z2", "z4", "s3"}) {
      algebras.push_back(group_algebra(Group::from_spec(spec), q));
      algebras.push_back(function_algebra(Group::from_spec(spec), q));
    }
    algebras.push_back(drinfeld_double(Group::cyclic(2), q));
    algebras.push_back(group_algebra(Group::cyclic(2),
                                     FieldDescriptor::prime_field(2)));
    for (const HopfData& d : algebras) {
      CAPTURE(d.name);
      IntegralPair pair = integrals(d);
      CHECK(pair.normalized);
      CHECK(check_integral_identities(d, pair).empty());
    }
  }

  TEST_CASE("group algebra integrals in coordinates") {
    auto q = FieldDescriptor::rationals();
    Group g = Group::sym3();
    HopfData d = group_algebra(g, q);
    IntegralPair pair = integrals(d);
    // lambda picks out the coefficient of the identity element and the
    // cointegral is the sum of all group elements, scaled compatibly
    Scalar at_e = pair.lambda[g.identity()];
    for (int i = 0; i < g.n; ++i) {
      if (i == g.identity()) continue;
      CHECK(pair.lambda[i].is_zero());
      CHECK(pair.cointegral[i] == pair.cointegral[g.identity()]);
    }
    CHECK((at_e * pair.cointegral[0]) == Scalar::one(q));
  }

  TEST_CASE("profiles of the stock algebras") {
    auto q = FieldDescriptor::rationals();
    for (const char* spec : {"z3", "s3"}) {
      Group g = Group::from_spec(spec);
      for (HopfData d : {group_algebra(g, q), function_algebra(g, q),
                         drinfeld_double(g, q)}) {
        CAPTURE(d.name);
        IntegralPair pair = integrals(d);
        HopfProfile p = profile(d, pair);
        CHECK(p.unimodular);
        CHECK(p.involutory);
        CHECK(p.pivot.has_value());
      }
    }
  }

  TEST_CASE("iterated coproducts are independent of expansion order") {
    auto q = FieldDescriptor::rationals();
    HopfData d = function_algebra(Group::sym3(), q);
    HopfOps ops(d);
    Vec v = left_cointegral(d);

    SparseTensor direct = sweedler_power(ops, v, 3);

    SparseTensor seed;
    for (int i = 0; i < d.n; ++i)
      if (!v[i].is_zero()) seed[{i}] = v[i];
    SparseTensor left = expand_slot(ops, expand_slot(ops, seed, 0), 0);
    SparseTensor right = expand_slot(ops, expand_slot(ops, seed, 0), 1);

    CHECK(left == direct);
    CHECK(right == direct);

    SparseTensor zeroth = sweedler_power(ops, v, 0);
    REQUIRE(zeroth.size() == 1);
    CHECK(zeroth.begin()->first.empty());
    CHECK(zeroth.begin()->second == ops.counit_of(v));

    SparseTensor first = sweedler_power(ops, v, 1);
    for (int i = 0; i < d.n; ++i) {
      auto it = first.find({i});
      if (v[i].is_zero())
        CHECK(it == first.end());
      else
        CHECK(it->second == v[i]);
    }

    CHECK_THROWS_AS((void)sweedler_power(ops, v, 12, 1000), CostCapError);
  }

  TEST_CASE("antipode slot is an involution on involutory algebras") {
    auto q = FieldDescriptor::rationals();
    HopfData d = group_algebra(Group::quat8(), q);
    HopfOps ops(d);
    SparseTensor t = sweedler_power(ops, left_cointegral(d), 2);
    SparseTensor twice = antipode_slot(ops, antipode_slot(ops, t, 1), 1);
    CHECK(twice == t);
  }

  TEST_CASE("trace form on unimodular involutory algebras") {
    auto q = FieldDescriptor::rationals();
    for (HopfData d : {group_algebra(Group::sym3(), q),
                       function_algebra(Group::sym3(), q),
                       drinfeld_double(Group::cyclic(2), q)}) {
      IntegralPair pair = integrals(d);
      HopfOps ops(d);
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) {
          Vec xy = ops.mul(ops.basis_vec(i), ops.basis_vec(j));
          Vec yx = ops.mul(ops.basis_vec(j), ops.basis_vec(i));
          CHECK(ops.pair(pair.lambda, xy) == ops.pair(pair.lambda, yx));
        }
    }
  }

  TEST_CASE("chromatic morphism construction and identity") {
    auto q = FieldDescriptor::rationals();
    for (HopfData d : {group_algebra(Group::cyclic(3), q),
                       function_algebra(Group::cyclic(2), q),
                       drinfeld_double(Group::cyclic(2), q)}) {
      CAPTURE(d.name);
      IntegralPair pair = integrals(d);
      ChromaticMatrix mat = chromatic_morphism_matrix(d, pair);
      CHECK(mat.n == d.n);
      CHECK(check_chromatic_identity(d, pair, mat).empty());
    }
  }

  TEST_CASE("chromatic construction rejects a wrong functional") {
    auto q = FieldDescriptor::rationals();
    // needs a non-abelian group: on commutative algebras every dual basis
    // vector happens to satisfy the threading identity
    Group g = Group::sym3();
    HopfData d = group_algebra(g, q);
    IntegralPair pair = integrals(d);
    pair.lambda.assign(d.n, Scalar::zero(q));
    pair.lambda[(g.identity() + 1) % g.n] = Scalar::one(q);
    CHECK_THROWS_AS((void)chromatic_morphism_matrix(d, pair), ValidationError);
  }

  TEST_CASE("serialization round trip") {
    auto q = FieldDescriptor::rationals();
    std::vector<HopfData> algebras = {
        group_algebra(Group::cyclic(4), q),
        function_algebra(Group::sym3(), q),
        drinfeld_double(Group::cyclic(2), q),
        group_algebra(Group::cyclic(2), FieldDescriptor::prime_field(2)),
        group_algebra(Group::cyclic(2), FieldDescriptor::parse("NF:t^2-t-1")),
        testutil::sweedler_h4(q),
    };
    for (const HopfData& d : algebras) {
      CAPTURE(d.name);
      std::string text = d.serialize();
      HopfData back = HopfData::parse(text);
      CHECK(back.name == d.name);
      REQUIRE(back.n == d.n);
      CHECK(back.field->text() == d.field->text());
      CHECK(back.mult == d.mult);
      CHECK(back.comult == d.comult);
      CHECK(back.antipode == d.antipode);
      CHECK(back.unit == d.unit);
      CHECK(back.counit == d.counit);
      CHECK(back.serialize() == text);
      CHECK(validate_hopf(back).empty());
    }
  }

  TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS((void)HopfData::parse(""), ParseError);
    CHECK_THROWS_AS((void)HopfData::parse("hopf broken dim -1 field Q\n"),
                    ParseError);
    CHECK_THROWS_AS((void)HopfData::parse("hopf broken dim 2 field Zork\n"),
                    ParseError);
    auto q = FieldDescriptor::rationals();
    std::string good = group_algebra(Group::cyclic(2), q).serialize();
    CHECK_THROWS_AS((void)HopfData::parse(good + "\nmult 9 9 9 1\n"),
                    ParseError);
  }
}
