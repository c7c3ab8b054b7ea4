#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "padld/rat.hpp"

using namespace padld;

TEST_CASE("vp basics") {
    CHECK(vp(Rat(63), 3) == Val::of(2L));  // 63 = 9*7
    CHECK(vp(Rat(0), 5) == Val::inf());
    CHECK(vp(Rat(1, 5), 5) == Val::of(-1L));
    CHECK(vp(Rat(9, 2), 3) == Val::of(2L));
    CHECK_THROWS_AS(vp(Rat(1), 4), Error);
    CHECK_THROWS_WITH_AS(vp(Rat(1), 1), doctest::Contains("prime"), Error);
}

TEST_CASE("vp is a valuation") {
    std::mt19937 rng(7);
    for (long p : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 200; ++trial) {
            Rat a = testutil::rand_rat(rng), b = testutil::rand_rat(rng);
            CHECK(vp(a * b, p) == vp(a, p) + vp(b, p));
            Val va = vp(a, p), vb = vp(b, p);
            Val vs = vp(a + b, p);
            CHECK(vs >= val_min(va, vb));
            if (!(va == vb)) CHECK(vs == val_min(va, vb));
        }
    }
}

TEST_CASE("classify_multiplier") {
    CHECK(classify_multiplier(3, 3) == MultiplierClass::Attracting);
    CHECK(classify_multiplier(-1, 5) == MultiplierClass::IndifferentRootOfUnity);
    CHECK(classify_multiplier(4, 3) == MultiplierClass::IndifferentIrrational);
    CHECK(classify_multiplier(0, 3) == MultiplierClass::Zero);
    CHECK(classify_multiplier(Rat(1, 3), 3) == MultiplierClass::Repelling);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Rat lam = testutil::rand_rat(rng);
        if (lam == 0) continue;
        bool rep = classify_multiplier(lam, 5) == MultiplierClass::Repelling;
        bool inv_att = classify_multiplier(1 / lam, 5) == MultiplierClass::Attracting;
        CHECK(rep == inv_att);
    }
}

TEST_CASE("Val ordering and arithmetic") {
    CHECK(Val::of(1L) < Val::inf());
    CHECK(!(Val::inf() < Val::inf()));
    CHECK(Val::inf() == Val::inf());
    CHECK(val_min(Val::inf(), Val::of(Rat(-3, 2))) == Val::of(Rat(-3, 2)));
    CHECK((Val::of(2L) + Val::inf()) == Val::inf());
    CHECK((Val::of(2L) + Val::of(3L)) == Val::of(5L));
    CHECK(Val::of(Rat(1, 2)).scaled(4) == Val::of(2L));
    CHECK(Val::inf().str() == "inf");
    CHECK(Val::of(Rat(-1, 2)).str() == "-1/2");
}

TEST_CASE("rational parse/print") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-12") == Rat(-12));
    CHECK(parse_rat(" 5 / 10 ") == Rat(1, 2));
    CHECK(rat_str(Rat(-3, 4)) == "-3/4");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK(parse_rat(rat_str(Rat(22, 7))) == Rat(22, 7));
    CHECK_THROWS_AS(parse_rat(""), Error);
    CHECK_THROWS_AS(parse_rat("a"), Error);
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("1.5"), Error);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}
