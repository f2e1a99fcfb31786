#include <gtest/gtest.h>

#include "support.hpp"

using namespace pdens;
using namespace pdens::testing;

namespace {

Rational r(long n, long d = 1) { return rational(n, d); }

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return errc::invalid_argument;
}

// Random non-negative function with a handful of corners on a 1/24 grid.
PiecewiseLinear random_pwl(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> n_dist(0, 6), x_dist(0, 36), y_dist(0, 8);
    std::vector<Corner> cs;
    std::set<long> xs;
    for (long i = n_dist(rng); i > 0; --i) xs.insert(x_dist(rng));
    for (long x : xs) cs.push_back({r(x, 24), r(y_dist(rng), 4)});
    return from_corners(cs);
}

// Continuous random function: a sum of random trapezoids.
PiecewiseLinear random_trapezoid_sum(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> n_dist(0, 4), v_dist(1, 12);
    PiecewiseLinear f;
    for (long i = n_dist(rng); i > 0; --i)
        f = add(f, trapezoid({r(v_dist(rng), 12), r(v_dist(rng) - 1, 12), r(v_dist(rng), 12)}));
    return f;
}

} // namespace

TEST(Pwl, FromCornersCanonicalizes) {
    auto psi0 = pwl({{r(0), r(1)}, {r(1, 12), r(1, 2)}, {r(1, 6), r(1, 6)}, {r(1, 4), r(0)}});
    EXPECT_EQ(psi0.corners().size(), 4u);
    EXPECT_EQ(psi0.corners()[1], (Corner{r(1, 12), r(1, 2)}));

    auto line = pwl({{r(0), r(0)}, {r(1, 2), r(1)}, {r(1), r(2)}});
    EXPECT_EQ(line.corners(), (std::vector<Corner>{{r(0), r(0)}, {r(1), r(2)}}));

    auto dup = pwl({{r(1, 6), r(1, 3)}, {r(0), r(0)}, {r(1, 6), r(1, 3)}});
    EXPECT_EQ(dup.corners(), (std::vector<Corner>{{r(0), r(0)}, {r(1, 6), r(1, 3)}}));

    // Redundant zero corners at the ends describe the same function.
    auto padded = pwl({{r(0), r(0)}, {r(1), r(0)}, {r(2), r(1)}, {r(3), r(0)}, {r(4), r(0)}});
    EXPECT_EQ(padded, pwl({{r(1), r(0)}, {r(2), r(1)}, {r(3), r(0)}}));
    EXPECT_TRUE(pwl({{r(0), r(0)}, {r(5), r(0)}}).is_zero());
}

TEST(Pwl, FromCornersRejectsConflicts) {
    EXPECT_EQ(code_of([] { pwl({{r(1), r(1)}, {r(1), r(2)}}); }), errc::inconsistent_corner);
    EXPECT_EQ(code_of([] { pwl({{r(-1), r(1)}}); }), errc::negative_coordinate);
    EXPECT_EQ(code_of([] { pwl({{r(1), r(-1)}}); }), errc::negative_coordinate);
}

TEST(Pwl, Evaluate) {
    auto f = psi_k(three_points(), 0);
    EXPECT_EQ(f(r(1, 12)), r(1, 2));
    EXPECT_EQ(f(r(1, 2)), 0);
    EXPECT_EQ(f(r(100)), 0);
    // Interpolated between (1/12, 1/2) and (1/6, 1/6); the coverage sweep agrees.
    EXPECT_EQ(f(r(1, 8)), r(1, 3));
    EXPECT_EQ(psi_oracle(three_points(), 0, r(1, 8)), r(1, 3));

    auto jump = pwl({{r(1), r(2)}, {r(2), r(0)}});
    EXPECT_EQ(jump(r(1, 2)), 0);
    EXPECT_EQ(jump(r(1)), 2);
    EXPECT_EQ(jump.left_limit(r(1)), 0);
    EXPECT_EQ(jump.right_limit(r(1)), 2);
}

TEST(Pwl, AddTrapezoidsOfFirstDensity) {
    auto s = three_points();
    PiecewiseLinear zero;
    auto f = psi_k(s, 1);
    EXPECT_EQ(add(f, zero), f);

    auto eta_r = trapezoid({r(1, 2), r(0), r(1, 3)});
    auto eta_g = trapezoid({r(1, 3), r(0), r(1, 6)});
    auto eta_b = trapezoid({r(1, 6), r(0), r(1, 2)});
    auto sum = add(add(eta_r, eta_g), eta_b);
    EXPECT_EQ(sum, f);
    for (const auto& c : sum.corners()) EXPECT_EQ(c.y, psi_oracle(s, 1, c.x)) << to_string(c.x);
}

TEST(Pwl, AddSixTrapezoidsInCellUnits) {
    // The six summands of psi_4 that S15 does not share with Q15, in cell [0, 15] units.
    auto sum = [](std::initializer_list<std::array<long, 3>> triples) {
        PiecewiseLinear f;
        for (const auto& t : triples) f = add(f, trapezoid({r(t[0]), r(t[1]), r(t[2])}));
        return f;
    };
    auto left = sum({{3, 4, 1}, {2, 4, 2}, {1, 5, 1}, {2, 5, 3}, {2, 6, 1}, {2, 6, 1}});
    auto right = sum({{2, 4, 1}, {2, 5, 1}, {1, 5, 3}, {2, 6, 2}, {1, 6, 1}, {3, 4, 2}});
    const std::vector<std::pair<Rational, Rational>> expected{{r(5, 2), r(2)}, {r(3), r(5)}, {r(7, 2), r(6)}, {r(4), r(4)}, {r(9, 2), r(1)}};
    for (const auto& [t, v] : expected) {
        EXPECT_EQ(left(t), v);
        EXPECT_EQ(right(t), v);
    }
    EXPECT_EQ(left, right);
}

TEST(Pwl, AddRejectsInteriorJump) {
    auto ramp = pwl({{r(0), r(0)}, {r(2), r(2)}});
    auto step = pwl({{r(1), r(1)}, {r(3), r(0)}});
    EXPECT_EQ(code_of([&] { add(ramp, step); }), errc::discontinuous_sum);
    // A jump at the very start of the sum is representable.
    EXPECT_EQ(add(step, step), pwl({{r(1), r(2)}, {r(3), r(0)}}));
}

TEST(Pwl, Subtract) {
    auto f = psi_k(three_points(), 1);
    auto eta_r = trapezoid({r(1, 2), r(0), r(1, 3)});
    auto rest = subtract(f, eta_r);
    EXPECT_EQ(add(rest, eta_r), f);
    EXPECT_EQ(code_of([&] { subtract(eta_r, f); }), errc::negative_coordinate);
}

TEST(Pwl, ReflectAbout) {
    auto s = three_points();
    EXPECT_EQ(reflect_about(psi_k(s, 2), r(1, 2)), psi_k(s, 1));
    auto f = psi_k(s, 1);
    EXPECT_EQ(reflect_about(reflect_about(f, r(1, 2)), r(1, 2)), f);
    EXPECT_EQ(reflect_about(pwl({{r(0), r(0)}, {r(1, 4), r(1)}}), r(1, 4)), pwl({{r(0), r(1)}, {r(1, 4), r(0)}}));
    EXPECT_EQ(code_of([&] { reflect_about(f, r(1, 4)); }), errc::support_exceeds_reflection);

    // Reflecting about a point beyond the support leaves a zero stretch near 0.
    EXPECT_EQ(reflect_about(pwl({{r(0), r(1)}, {r(1), r(0)}}), r(3)), pwl({{r(2), r(0)}, {r(3), r(1)}}));
}

TEST(Pwl, ShiftRight) {
    auto s = three_points();
    const Rational half = r(1, 2);
    auto shifted = shift_right(psi_k(s, 0), half);
    // psi_3 agrees with the shifted psi_0 from t = 1/2 on; below 1/2 psi_3 rises from 0.
    EXPECT_EQ(restrict_to(psi_k(s, 3), half), shifted);
    EXPECT_NE(psi_k(s, 3), shifted);
    auto f = psi_k(s, 1);
    EXPECT_EQ(shift_right(f, r(0)), f);
    EXPECT_EQ(shift_right(pwl({{r(0), r(1)}, {r(1), r(0)}}), r(2)), pwl({{r(2), r(1)}, {r(3), r(0)}}));
}

TEST(Pwl, RestrictTo) {
    auto tri = pwl({{r(0), r(0)}, {r(1), r(2)}, {r(2), r(0)}});
    EXPECT_EQ(restrict_to(tri, r(0), r(1)), pwl({{r(0), r(0)}, {r(1), r(2)}}));
    EXPECT_EQ(restrict_to(tri, r(1, 2)), pwl({{r(1, 2), r(1)}, {r(1), r(2)}, {r(2), r(0)}}));
    EXPECT_EQ(restrict_to(tri, r(0), r(5)), tri);
    EXPECT_TRUE(restrict_to(tri, r(3), r(4)).is_zero());
}

TEST(Pwl, Integral) {
    // Sum of the trapezoid areas min * max / 2 over the three neighbour pairs.
    const Rational by_areas = r(1, 2) * r(1, 3) / 2 + r(1, 3) * r(1, 6) / 2 + r(1, 6) * r(1, 2) / 2;
    EXPECT_EQ(by_areas, r(11, 72));
    EXPECT_EQ(integral(psi_k(three_points(), 1)), r(11, 72));
    EXPECT_EQ(integral(PiecewiseLinear{}), 0);
    EXPECT_EQ(integral(pwl({{r(0), r(0)}, {r(1, 6), r(1, 3)}, {r(1, 4), r(1, 3)}, {r(5, 12), r(0)}})), r(1, 12));
}

TEST(Pwl, Equality) {
    EXPECT_EQ(psi_k(s15(), 4), psi_k(q15(), 4));
    auto f = psi_k(s15(), 1);
    EXPECT_TRUE(equal(f, f));
    auto perturbed = make_sequence(15, {r(0), r(1), r(3), r(4), r(5), r(7), r(9), r(10), r(25, 2)});
    EXPECT_FALSE(equal(f, psi_k(perturbed, 1)));
}

TEST(Pwl, TrapezoidCorners) {
    EXPECT_EQ(trapezoid({r(1, 2), r(0), r(1, 3)}).corners(),
              (std::vector<Corner>{{r(0), r(0)}, {r(1, 6), r(1, 3)}, {r(1, 4), r(1, 3)}, {r(5, 12), r(0)}}));
    EXPECT_EQ(trapezoid({r(1, 3), r(1, 6), r(1, 2)}).corners(),
              (std::vector<Corner>{{r(1, 12), r(0)}, {r(1, 4), r(1, 3)}, {r(1, 3), r(1, 3)}, {r(1, 2), r(0)}}));
    EXPECT_EQ(trapezoid({r(2, 7), r(0), r(2, 7)}).corners(),
              (std::vector<Corner>{{r(0), r(0)}, {r(1, 7), r(2, 7)}, {r(2, 7), r(0)}}));
    EXPECT_EQ(code_of([] { trapezoid({r(0), r(0), r(1)}); }), errc::invalid_argument);
}

TEST(PwlProperties, AlgebraOnRandomFunctions) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto f = random_trapezoid_sum(rng);
        auto g = random_trapezoid_sum(rng);
        auto h = random_trapezoid_sum(rng);

        EXPECT_EQ(from_corners(f.corners()), f);
        EXPECT_EQ(add(f, g), add(g, f));
        EXPECT_EQ(add(add(f, g), h), add(f, add(g, h)));
        EXPECT_EQ(integral(add(f, g)), integral(f) + integral(g));
        for (int i = 0; i < 5; ++i) {
            const Rational t = r(std::uniform_int_distribution<long>(0, 400)(rng), 144);
            EXPECT_EQ(add(f, g)(t), f(t) + g(t));
        }

        const Rational a = r(std::uniform_int_distribution<long>(1, 12)(rng), 12);
        const Rational b = r(std::uniform_int_distribution<long>(1, 12)(rng), 12);
        const Rational s = r(std::uniform_int_distribution<long>(0, 12)(rng), 12);
        EXPECT_EQ(trapezoid({a, s, b}), trapezoid({b, s, a}));
        EXPECT_EQ(integral(trapezoid({a, s, b})), a * b / 2);

        const Rational c = r(2);
        EXPECT_EQ(reflect_about(reflect_about(f, c), c), f);
    }
}

TEST(PwlProperties, CanonicalFormIsIdempotentOnArbitraryCorners) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_pwl(rng);
        EXPECT_EQ(from_corners(f.corners()), f);
        // Inserting a point on the graph does not change the function.
        const Rational t = r(std::uniform_int_distribution<long>(0, 36)(rng), 24);
        if (!f.is_zero() && t > f.corners().front().x && t < f.corners().back().x) {
            auto with_extra = f.corners();
            with_extra.push_back({t, f(t)});
            EXPECT_EQ(from_corners(with_extra), f);
        }
    }
}
