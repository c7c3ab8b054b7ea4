#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "padld/series.hpp"

using namespace padld;

namespace {
Series S(const std::string& text, int dim, int trunc) { return parse_series(text, dim, trunc); }
}  // namespace

TEST_CASE("ring operations") {
    Series x1 = Series::variable(2, 4, 1);
    CHECK((x1 + (-x1)).is_zero());
    CHECK(S("x1 + x2", 2, 2) * S("x1 - x2", 2, 2) == S("x1^2 - x2^2", 2, 2));
    // geometric-series inverse checked by direct multiplication
    CHECK(S("1 + x1", 1, 3) * S("1 - x1 + x1^2 - x1^3", 1, 3) == S("1", 1, 3));
}

TEST_CASE("invert_unit") {
    CHECK(S("1", 2, 3).inverse() == S("1", 2, 3));
    CHECK(S("1 + x1", 1, 3).inverse() == S("1 - x1 + x1^2 - x1^3", 1, 3));
    CHECK(S("2 + x2", 2, 2).inverse() == S("1/2 - 1/4*x2 + 1/8*x2^2", 2, 2));
    CHECK_THROWS_AS(S("x1", 1, 3).inverse(), Error);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Series a = testutil::rand_series(rng, 2, 4, 6) + Series::constant(2, 4, 1);
        if (a.constant_term() == 0) continue;
        CHECK(a * a.inverse() == Series::constant(2, 4, 1));
    }
}

TEST_CASE("compose") {
    std::vector<Series> inner{S("x2", 2, 4), S("x1", 2, 4)};
    CHECK(S("x1", 2, 4).compose(inner) == S("x2", 2, 4));
    CHECK(S("x1*x2", 2, 4).compose(inner) == S("x1*x2", 2, 4));
    CHECK(S("x1 + x1^2", 1, 4).compose({S("x1 + x1^2", 1, 4)}) ==
          S("x1 + 2*x1^2 + 2*x1^3 + x1^4", 1, 4));
    CHECK_THROWS_AS(S("x1", 1, 4).compose({S("1 + x1", 1, 4)}), Error);
}

TEST_CASE("compose associativity and truncation-exactness") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Series f = testutil::rand_series(rng, 2, 4, 5);
        std::vector<Series> g{testutil::rand_inner(rng, 2, 4, 5), testutil::rand_inner(rng, 2, 4, 5)};
        std::vector<Series> h{testutil::rand_inner(rng, 2, 4, 5), testutil::rand_inner(rng, 2, 4, 5)};
        std::vector<Series> gh{g[0].compose(h), g[1].compose(h)};
        CHECK(f.compose(g).compose(h) == f.compose(gh));

        Series a = testutil::rand_series(rng, 2, 4, 6), b = testutil::rand_series(rng, 2, 4, 6);
        CHECK((a * b).truncated(2) == a.truncated(2) * b.truncated(2));
        CHECK((a + b).truncated(2) == a.truncated(2) + b.truncated(2));
        CHECK(f.compose(g).truncated(3) ==
              f.truncated(3).compose({g[0].truncated(3), g[1].truncated(3)}));
    }
}

TEST_CASE("coefficient access and truncation") {
    Series s(2, 2);
    s.set_coeff({1, 2}, 7);  // degree 3 > trunc: identically discarded
    CHECK(s.is_zero());
    s.set_coeff({1, 1}, 7);
    s.set_coeff({1, 1}, 0);
    CHECK(s.is_zero());
    CHECK_THROWS_AS(s.set_coeff({1}, 1), Error);
    CHECK_THROWS_AS(S("x1", 1, 2).truncated(3), Error);
    CHECK(S("x1 + x1^2", 1, 2).truncated(1) == S("x1", 1, 1));
    CHECK(S("x1", 1, 2).with_trunc(5).trunc() == 5);
}

TEST_CASE("eval and substitute_zero") {
    Series s = S("1/2*x1^2*x2 - 3*x2", 2, 4);
    CHECK(s.eval({Rat(2), Rat(3)}) == Rat(2) * 3 - 9);
    CHECK(s.substitute_zero({1}) == S("-3*x2", 2, 4));
    CHECK(s.substitute_zero({2}).is_zero());
}

TEST_CASE("text round trip") {
    Series s = S("1/2*x1^2*x2 - 3*x2", 2, 4);
    CHECK(s.str() == "-3*x2 + 1/2*x1^2*x2");
    CHECK(parse_series(s.str(), 2, 4) == s);
    CHECK(S("0", 2, 3).is_zero());
    CHECK(S("  - x1 +x2 ", 2, 3) == S("x2 - x1", 2, 3));
    CHECK_THROWS_AS(S("x3", 2, 3), Error);
    CHECK_THROWS_AS(S("x1^-1", 1, 3), Error);
    CHECK_THROWS_AS(S("++x1", 1, 3), Error);
    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        Series a = testutil::rand_series(rng, 3, 4, 6);
        CHECK(parse_series(a.str(), 3, 4) == a);
    }
}

TEST_CASE("min_polydegrees") {
    // the constant term is the unique lowest-polydegree term
    auto mp = min_polydegrees({S("1 + x1", 2, 3)}, 3);
    REQUIRE(mp.size() == 1);
    CHECK(mp[0].first == ExpVec{0, 0});
    CHECK(mp[0].second == Val::of(0L));

    mp = min_polydegrees({S("3*x1 + x2^2", 2, 3), S("x2^2", 2, 3)}, 3);
    REQUIRE(mp.size() == 2);
    CHECK(mp[0].first == ExpVec{1, 0});
    CHECK(mp[0].second == Val::of(1L));
    CHECK(mp[1].first == ExpVec{0, 2});
    CHECK(mp[1].second == Val::of(0L));

    mp = min_polydegrees({S("x1*x2", 2, 3), S("x1", 2, 3)}, 3);
    REQUIRE(mp.size() == 1);
    CHECK(mp[0].first == ExpVec{1, 0});

    CHECK(min_polydegrees({Series::zero(2, 3)}, 3).empty());

    // antichain + covering on random families
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Series> fam{testutil::rand_series(rng, 2, 4, 6),
                                testutil::rand_series(rng, 2, 4, 6)};
        auto out = min_polydegrees(fam, 3);
        for (const auto& [a, va] : out)
            for (const auto& [b, vb] : out) {
                (void)va;
                (void)vb;
                if (a != b) CHECK(!exp_leq(a, b));
            }
        for (const auto& g : fam)
            for (const auto& [e, c] : g.terms()) {
                (void)c;
                bool covered = false;
                for (const auto& [a, va] : out) {
                    (void)va;
                    if (exp_leq(a, e)) covered = true;
                }
                CHECK(covered);
            }
    }
}
