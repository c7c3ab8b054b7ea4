#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "padld/separation.hpp"

using namespace padld;

TEST_CASE("semigroup_excluded") {
    auto ev = semigroup_excluded({3}, {4}, 3, 8);
    CHECK(ev.status == SemigroupStatus::CertifiedByValuation);  // vp(3)=1, vp(4^k)=0

    ev = semigroup_excluded({5}, {2}, 3, 8);
    CHECK(ev.status == SemigroupStatus::CertifiedBySearch);  // disjoint prime support

    ev = semigroup_excluded({4}, {2}, 3, 8);  // 4 = 2^2
    CHECK(ev.status == SemigroupStatus::Unknown);
    CHECK(ev.evidence.find("representation found") != std::string::npos);

    // mixed: one by valuation, one by search
    ev = semigroup_excluded({3, 5}, {4}, 3, 8);
    CHECK(ev.status == SemigroupStatus::CertifiedBySearch);

    ev = semigroup_excluded({6}, {2, 3}, 5, 8);  // 6 = 2*3
    CHECK(ev.status == SemigroupStatus::Unknown);

    ev = semigroup_excluded({Rat(-2)}, {2}, 5, 8);  // sign mismatch, no -1 available
    CHECK(ev.status != SemigroupStatus::Unknown);
    ev = semigroup_excluded({Rat(-2)}, {2, Rat(-1)}, 5, 8);
    CHECK(ev.status == SemigroupStatus::Unknown);

    CHECK_THROWS_AS(semigroup_excluded({3}, {4}, 3, 0), Error);
}

TEST_CASE("solve_separation worked example") {
    Germ g = parse_germ("p 5\ndim 2\ntrunc 6\nphi1 = 5*x1 + x2^2\nphi2 = x2\n");
    SeparationResult res = solve_separation(g, SplitSpec{1});
    CHECK(res.f[0] == parse_series("-1/4*x2^2", 2, 6));  // lambda1 c + 1 = c
    // conjugated phi1 is divisible by x1
    CHECK(res.conjugated.phi(1).substitute_zero({1}).is_zero());
    CHECK(res.radius_bound.has_value());
    CHECK(*res.radius_bound == Val::of(0L));
    CHECK(verify_invariance(g, res.f, SplitSpec{1}).ok);
}

TEST_CASE("solve_separation degree-by-degree example") {
    // 3f(y) + y^2 = f(y + y^2) forces a = b = -1/2, c = -1 at D = 4
    Germ g = parse_germ("p 3\ndim 2\ntrunc 4\nphi1 = 3*x1 + x2^2\nphi2 = x2 + x2^2\n");
    SeparationResult res = solve_separation(g, SplitSpec{1});
    CHECK(res.f[0] == parse_series("-1/2*x2^2 - 1/2*x2^3 - x2^4", 2, 4));
    CHECK(verify_invariance(g, res.f, SplitSpec{1}).ok);
    CHECK(res.conjugated.phi(1).substitute_zero({1}).is_zero());
    // no terms of degree < 2 in f
    for (const auto& [e, c] : res.f[0].terms()) {
        (void)c;
        CHECK(total_degree(e) >= 2);
    }
}

TEST_CASE("already-split germ") {
    Germ g = parse_germ("p 5\ndim 2\ntrunc 5\nphi1 = 5*x1 + x1*x2\nphi2 = x2 + x2^2\n");
    SeparationResult res = solve_separation(g, SplitSpec{1});
    CHECK(res.f[0].is_zero());
    CHECK(res.conjugated == g);
}

TEST_CASE("precondition refusal") {
    // lambda1 = 4 = 2^2 lies in the semigroup generated by lambda2 = 2... at p=7 both are units,
    // so no valuation argument applies either
    Germ g = parse_germ("p 7\ndim 2\ntrunc 4\nphi1 = 4*x1 + x2^2\nphi2 = 2*x2\n");
    CHECK_THROWS_AS(solve_separation(g, SplitSpec{1}), Error);
    try {
        solve_separation(g, SplitSpec{1});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionUnknown);
    }
}

TEST_CASE("split validation") {
    Germ g = parse_germ("p 5\ndim 2\ntrunc 3\njordan (1,2)\nphi1 = x1 + x2\nphi2 = x2\n");
    CHECK_THROWS_AS(check_split(g, SplitSpec{1}), Error);  // block straddles
    CHECK_THROWS_AS(check_split(g, SplitSpec{0}), Error);
    CHECK_THROWS_AS(check_split(g, SplitSpec{2}), Error);
}

TEST_CASE("verify_invariance detects perturbations") {
    Germ g = parse_germ("p 3\ndim 2\ntrunc 4\nphi1 = 3*x1 + x2^2\nphi2 = x2 + x2^2\n");
    SeparationResult res = solve_separation(g, SplitSpec{1});
    Series bad = res.f[0];
    bad.set_coeff({0, 3}, bad.coeff({0, 3}) + 1);
    InvarianceCheck chk = verify_invariance(g, {bad}, SplitSpec{1});
    CHECK(!chk.ok);
    CHECK(chk.degree == 3);
    // f = 0 on an already-split germ
    Germ h = parse_germ("p 5\ndim 2\ntrunc 4\nphi1 = 5*x1 + x1*x2\nphi2 = x2 + x2^2\n");
    CHECK(verify_invariance(h, {Series::zero(2, 4)}, SplitSpec{1}).ok);
}

TEST_CASE("radius_bound cases") {
    CHECK(radius_bound_for_multipliers({5}, {1}, 5) == Val::of(0L));  // attracting | indifferent
    // repelling | nonrepelling: c = p^2 > 1 clamps to the unit polydisk
    CHECK(radius_bound_for_multipliers({Rat(1, 9)}, {1, 3}, 3) == Val::of(0L));
    // mixed case with no certified c
    CHECK(radius_bound_for_multipliers({5}, {25, 1}, 5) == std::nullopt);
}

TEST_CASE("solver properties on random germs") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + trial % 2;
        std::vector<Rat> mult{Rat(3 * (1 + trial % 3))};
        const Rat units[] = {Rat(1), Rat(-1), Rat(2), Rat(4)};
        for (int i = 1; i < n; ++i) mult.push_back(units[(trial + i) % 4]);
        Germ g = testutil::rand_germ(rng, 3, n, 6, mult, 4);
        SeparationResult res = solve_separation(g, SplitSpec{1});
        CHECK(verify_invariance(g, res.f, SplitSpec{1}).ok);
        // determinism / uniqueness
        CHECK(solve_separation(g, SplitSpec{1}).f == res.f);
        // conjugated divisibility and multiplier preservation
        CHECK(res.conjugated.phi(1).substitute_zero({1}).is_zero());
        CHECK(res.conjugated.jordan() == g.jordan());
        // anal1 nonarchimedean bound: unit pivots keep f integral
        for (const auto& s : res.f)
            for (const auto& [e, c] : s.terms()) {
                (void)e;
                CHECK(vp(c, 3) >= Val::of(0L));
            }
    }
}
