#include <doctest.h>

#include <random>

#include "polyweyl/rank_one.hpp"

using namespace polyweyl;

namespace {

Rat rnd_rat(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    return frac(num(rng), den(rng));
}

}  // namespace

TEST_CASE("group law on fibers") {
    SUBCASE("identity section") {
        RankOneElement u = RankOneElement::from_parameter(Rat(3, 2), Rat(2, 7));
        auto p = multiply(RankOneElement::identity(Rat(3, 2)), u);
        CHECK(p.a == u.a);
        CHECK(p.b == u.b);
    }
    SUBCASE("pinned product over s = -1") {
        RankOneElement i{0, 1, -1};
        i.check_invariant();
        auto sq = multiply(i, i);
        CHECK(sq.a == -1);
        CHECK(sq.b == 0);
    }
    SUBCASE("base mismatch") {
        CHECK_THROWS_WITH_AS(
            multiply(RankOneElement::identity(1), RankOneElement::identity(2)),
            doctest::Contains("BaseMismatch"), Error);
    }
    SUBCASE("closure, commutativity, associativity, inverses on random points") {
        std::mt19937 rng(424242);
        for (int iter = 0; iter < 300; ++iter) {
            Rat s = rnd_rat(rng);
            Rat m1 = rnd_rat(rng), m2 = rnd_rat(rng), m3 = rnd_rat(rng);
            if (s * m1 * m1 == 1 || s * m2 * m2 == 1 || s * m3 * m3 == 1) continue;
            auto u = RankOneElement::from_parameter(s, m1);
            auto v = RankOneElement::from_parameter(s, m2);
            auto w = RankOneElement::from_parameter(s, m3);
            auto uv = multiply(u, v);
            uv.check_invariant();
            auto vu = multiply(v, u);
            CHECK(uv.a == vu.a);
            CHECK(uv.b == vu.b);
            auto a1 = multiply(uv, w);
            auto a2 = multiply(u, multiply(v, w));
            CHECK(a1.a == a2.a);
            CHECK(a1.b == a2.b);
            auto e = multiply(u, u.inverse());
            CHECK(e.a == 1);
            CHECK(e.b == 0);
        }
    }
}

TEST_CASE("fiber decomposition") {
    auto zero = fiber_decompose(0);
    CHECK_FALSE(zero.torus);
    CHECK(zero.component_order == 2);
    CHECK(zero.unipotent_rank == 1);

    auto generic = fiber_decompose(4);
    CHECK(generic.torus);

    // zero-fiber group law (a1 a2, a1 b2 + a2 b1)
    RankOneElement x{-1, 3, 0}, y{1, Rat(5, 2), 0};
    x.check_invariant();
    auto p = multiply(x, y);
    CHECK(p.a == -1);
    CHECK(p.b == x.a * y.b + y.a * x.b);

    // matches the group-scheme fiber of the sl2-type datum at 0 and at 1
    auto f0 = fiber_structure(datum_sl2(), {Rat(0)});
    CHECK(f0.semisimple.torsion == std::vector<Int>{Int(2)});
    CHECK(f0.unipotent_rank == zero.unipotent_rank);
    auto f1 = fiber_structure(datum_sl2(), {Rat(1)});
    CHECK(f1.semisimple.torus_rank == 1);
    CHECK(generic.torus);
}

TEST_CASE("trivialization") {
    SUBCASE("identity maps to 1") {
        CHECK(trivialize(RankOneElement::identity(4), 2) == 1);
    }
    SUBCASE("pinned element over s = 4") {
        RankOneElement u{Rat(5, 4), Rat(3, 8), 4};
        u.check_invariant();
        CHECK(trivialize(u, 2) == 2);
        CHECK(trivialize(u.inverse(), 2) == Rat(1, 2));
    }
    SUBCASE("bad root is rejected") {
        CHECK_THROWS_WITH_AS(trivialize(RankOneElement::identity(4), 3),
                             doctest::Contains("BadRoot"), Error);
    }
    SUBCASE("multiplicative over perfect squares") {
        std::mt19937 rng(7);
        for (long t : {1L, 2L, 3L, 5L}) {
            Rat s(t * t);
            for (int iter = 0; iter < 40; ++iter) {
                Rat m1 = rnd_rat(rng), m2 = rnd_rat(rng);
                if (s * m1 * m1 == 1 || s * m2 * m2 == 1) continue;
                auto u = RankOneElement::from_parameter(s, m1);
                auto v = RankOneElement::from_parameter(s, m2);
                CHECK(trivialize(multiply(u, v), t) == trivialize(u, t) * trivialize(v, t));
                CHECK(trivialize(u, t) * trivialize(u.inverse(), t) == 1);
            }
        }
    }
}

TEST_CASE("real form psi") {
    SUBCASE("identity to the identity rotation") {
        auto m = real_form_psi(RankOneElement::identity(-1));
        CHECK(m[0] == QuadExt::of(1));
        CHECK(m[1] == QuadExt::of(0));
        CHECK(det2(m) == QuadExt::of(1));
    }
    SUBCASE("quarter turn squares to minus the identity") {
        RankOneElement i{0, 1, -1};
        auto m = real_form_psi(i);
        CHECK(m[0] == QuadExt::of(0));
        CHECK(m[1] == QuadExt::of(-1));
        CHECK(m[2] == QuadExt::of(1));
        auto sq = mat2_mul(m, m);
        auto m2 = real_form_psi(multiply(i, i));
        CHECK(sq[0] == m2[0]);
        CHECK(sq[1] == m2[1]);
        CHECK(det2(sq) == QuadExt::of(1));
    }
    SUBCASE("pythagorean rotation") {
        RankOneElement u{Rat(3, 5), Rat(4, 5), -1};
        u.check_invariant();
        auto m = real_form_psi(u);
        CHECK(m[0] == QuadExt::of(Rat(3, 5)));
        CHECK(m[2] == QuadExt::of(Rat(4, 5)));
        CHECK(det2(m) == QuadExt::of(1));
    }
    SUBCASE("positive s is rejected") {
        CHECK_THROWS_WITH_AS(real_form_psi(RankOneElement::identity(1)),
                             doctest::Contains("PositiveS"), Error);
    }
    SUBCASE("homomorphism with irrational radical") {
        std::mt19937 rng(11);
        for (const Rat& s : {Rat(-1), Rat(-2), Rat(-3, 4), Rat(-5)}) {
            for (int iter = 0; iter < 30; ++iter) {
                Rat m1 = rnd_rat(rng), m2 = rnd_rat(rng);
                if (s * m1 * m1 == 1 || s * m2 * m2 == 1) continue;
                auto u = RankOneElement::from_parameter(s, m1);
                auto v = RankOneElement::from_parameter(s, m2);
                auto lhs = mat2_mul(real_form_psi(u), real_form_psi(v));
                auto rhs = real_form_psi(multiply(u, v));
                for (int k = 0; k < 4; ++k) CHECK(lhs[k] == rhs[k]);
                CHECK(det2(real_form_psi(u)) == QuadExt::of(1));
            }
        }
    }
}

TEST_CASE("quadratic extension arithmetic") {
    QuadExt r2 = sqrt_exact(2);
    CHECK(r2.D == 2);
    CHECK(r2 * r2 == QuadExt::of(2));
    QuadExt r8 = sqrt_exact(8);
    CHECK(r8.D == 2);
    CHECK(r8.b == 2);
    QuadExt r94 = sqrt_exact(Rat(9, 4));
    CHECK(r94.is_rational());
    CHECK(r94 == QuadExt::of(Rat(3, 2)));
    CHECK_THROWS_WITH_AS(sqrt_exact(-1), doctest::Contains("NegativeRadicand"), Error);
    CHECK_THROWS_AS(sqrt_exact(2) * sqrt_exact(3), Error);
}

TEST_CASE("symplectic identity") {
    auto check = symplectic_identity_check();
    CHECK(check.identity_holds);
    CHECK(check.cancellation_holds);
    CHECK(check.mismatch.empty());

    auto bad = symplectic_identity_check_perturbed(1);
    CHECK_FALSE(bad.identity_holds);
    CHECK_FALSE(bad.mismatch.empty());

    auto good = symplectic_identity_check_perturbed(Rat(1, 2));
    CHECK(good.identity_holds);
}

TEST_CASE("exterior algebra basics") {
    // df for f = a^2 - s b^2 - 1 equals 2a da - 2sb db - b^2 ds
    Poly3 A = Poly3::var(0), B = Poly3::var(1), S = Poly3::var(2);
    Poly3 f = A * A - S * B * B - Poly3::constant(1);
    Form3 df = exterior_derivative(f);
    CHECK(df.deg1[0] == A * Rat(2));
    CHECK(df.deg1[1] == S * B * Rat(-2));
    CHECK(df.deg1[2] == B * B * Rat(-1));

    // substitution check: f with s -> t^2 matches f_t
    Poly3 T = Poly3::var(2);
    Poly3 ft = f.substitute(2, T * T);
    Poly3 expected = A * A - T * T * B * B - Poly3::constant(1);
    CHECK(ft == expected);

    // d(dx) = 0 via wedge anti-symmetry
    Form3 da = form_d(0);
    CHECK(wedge(da, da).is_homogeneous_zero(2));
    // graded commutativity on 1-forms
    Form3 db = form_d(1);
    Form3 ab = wedge(da, db);
    Form3 ba = wedge(db, da);
    CHECK((ab + ba).is_homogeneous_zero(2));
}

TEST_CASE("rational antiderivatives (Hermite reduction)") {
    auto one = RatFunc::from_coeffs({Rat(1)}, {Rat(1)});
    auto s = RatFunc::from_coeffs({Rat(0), Rat(1)}, {Rat(1)});
    CHECK(has_rational_antiderivative(one));
    CHECK(has_rational_antiderivative(rf_mul(s, s)));
    // 1/s has a logarithmic antiderivative only
    auto inv_s = RatFunc::from_coeffs({Rat(1)}, {Rat(0), Rat(1)});
    CHECK_FALSE(has_rational_antiderivative(inv_s));
    // 1/s^2 integrates to -1/s
    auto inv_s2 = RatFunc::from_coeffs({Rat(1)}, {Rat(0), Rat(0), Rat(1)});
    CHECK(has_rational_antiderivative(inv_s2));
    // 2s/(s^2-1) = d/ds log(s^2-1)
    auto logd = RatFunc::from_coeffs({Rat(0), Rat(2)}, {Rat(-1), Rat(0), Rat(1)});
    CHECK_FALSE(has_rational_antiderivative(logd));
    // derivative of 1/(s-1)^2: -2/(s-1)^3
    auto d3 = RatFunc::from_coeffs({Rat(-2)}, {Rat(-1), Rat(3), Rat(-3), Rat(1)});
    CHECK(has_rational_antiderivative(d3));
    // mixed: 1/s^2 + 1/s is not rationally integrable
    auto mixed = rf_add(inv_s2, inv_s);
    CHECK_FALSE(has_rational_antiderivative(mixed));
}

TEST_CASE("rank-one sections") {
    SUBCASE("constant sections are exact") {
        RankOneSection id{RatFunc::from_coeffs({Rat(1)}, {Rat(1)}),
                          RatFunc::from_coeffs({}, {Rat(1)})};
        CHECK(section_form_is_exact(id));
        RankOneSection minus{RatFunc::from_coeffs({Rat(-1)}, {Rat(1)}),
                             RatFunc::from_coeffs({}, {Rat(1)})};
        CHECK(section_form_is_exact(minus));
    }
    SUBCASE("the parameter-one section is exact with g = -1/(1-s)^2") {
        // a = (1+s)/(1-s), b = 2/(1-s)
        RankOneSection sec{RatFunc::from_coeffs({Rat(1), Rat(1)}, {Rat(1), Rat(-1)}),
                           RatFunc::from_coeffs({Rat(2)}, {Rat(1), Rat(-1)})};
        // g = (a b' - b a')/2
        RatFunc g = rf_mul(rf_sub(rf_mul(sec.a, rf_derivative(sec.b)),
                                  rf_mul(sec.b, rf_derivative(sec.a))),
                           RatFunc::from_coeffs({Rat(1, 2)}, {Rat(1)}));
        RatFunc expected = RatFunc::from_coeffs({Rat(-1)}, {Rat(1), Rat(-2), Rat(1)});
        CHECK(rf_equal(g, expected));
        CHECK(section_form_is_exact(sec));
    }
    SUBCASE("squared section stays exact") {
        // group-law square of the parameter-one section: a2 = a^2 + s b^2, b2 = 2ab
        RatFunc a = RatFunc::from_coeffs({Rat(1), Rat(1)}, {Rat(1), Rat(-1)});
        RatFunc b = RatFunc::from_coeffs({Rat(2)}, {Rat(1), Rat(-1)});
        RatFunc s = RatFunc::from_coeffs({Rat(0), Rat(1)}, {Rat(1)});
        RankOneSection sq{rf_add(rf_mul(a, a), rf_mul(s, rf_mul(b, b))),
                          rf_mul(RatFunc::from_coeffs({Rat(2)}, {Rat(1)}), rf_mul(a, b))};
        CHECK(section_form_is_exact(sq));
    }
    SUBCASE("invariant violation is rejected") {
        RankOneSection bad{RatFunc::from_coeffs({Rat(0), Rat(1)}, {Rat(1)}),
                           RatFunc::from_coeffs({}, {Rat(1)})};
        CHECK_THROWS_WITH_AS(section_form_is_exact(bad), doctest::Contains("InvalidSection"),
                             Error);
    }
}
