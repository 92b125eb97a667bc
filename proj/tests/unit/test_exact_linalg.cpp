#include <doctest.h>

#include "oracles.hpp"
#include "polyweyl/exact_linalg.hpp"

using namespace polyweyl;

namespace {

Sublattice lat(size_t n, std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<IntVec> g;
    for (const auto& row : gens) {
        IntVec v;
        for (long x : row) v.emplace_back(x);
        g.push_back(v);
    }
    return Sublattice(n, g);
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
    SUBCASE("identity 2x2") {
        auto s = smith_normal_form(IntMat::identity(2));
        CHECK(s.D == IntMat::identity(2));
    }
    SUBCASE("diag(2,3) has invariant factors 1, 6") {
        IntMat A{{2, 0}, {0, 3}};
        auto s = smith_normal_form(A);
        CHECK(s.D(0, 0) == 1);
        CHECK(s.D(1, 1) == 6);
    }
    SUBCASE("1x1") {
        IntMat A{{2}};
        auto s = smith_normal_form(A);
        CHECK(s.D(0, 0) == 2);
    }
    SUBCASE("zero and empty matrices are legal") {
        IntMat Z(2, 3);
        auto s = smith_normal_form(Z);
        CHECK(s.rank() == 0);
        CHECK(s.U * Z * s.V == s.D);
        IntMat E(0, 2);
        auto se = smith_normal_form(E);
        CHECK(se.D.rows() == 0);
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        IntMat A = polyweyl::testing::random_int_matrix(rng, 5, 5);
        auto s = smith_normal_form(A);
        CHECK(s.U * A * s.V == s.D);
        CHECK((s.U.det() == 1 || s.U.det() == -1));
        CHECK((s.V.det() == 1 || s.V.det() == -1));
        auto d = s.diagonal();
        for (size_t i = 0; i < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (i + 1 < d.size() && d[i] != 0) {
                if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
            }
            if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
        }
        // off-diagonal zero
        for (size_t i = 0; i < s.D.rows(); ++i)
            for (size_t j = 0; j < s.D.cols(); ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        // rank over Q agrees
        CHECK(s.rank() == QMat::from_int(A).rank());
        // independent oracle: determinantal divisors
        auto oracle = polyweyl::testing::invariant_factors_via_minors(A);
        std::vector<Int> mine;
        for (const Int& x : d)
            if (x != 0) mine.push_back(x);
        CHECK(mine == oracle);
    }
}

TEST_CASE("hermite normal form is canonical for sublattice equality") {
    // same lattice through different generators
    auto L1 = lat(2, {{1, 1}, {0, 3}});
    auto L2 = lat(2, {{1, 4}, {1, 1}, {2, 5}});
    CHECK(L1 == L2);
    auto L3 = lat(2, {{1, 1}, {0, 6}});
    CHECK_FALSE(L1 == L3);
}

TEST_CASE("is_direct_summand") {
    CHECK(is_direct_summand(lat(2, {{1, 0}})));
    CHECK_FALSE(is_direct_summand(lat(2, {{2, 0}})));
    CHECK_FALSE(is_direct_summand(lat(2, {{1, 1}, {1, -1}})));
    CHECK(is_direct_summand(lat(3, {})));
}

TEST_CASE("quotient_invariants") {
    auto q1 = quotient_invariants(lat(1, {{2}}));
    CHECK(q1.free_rank == 0);
    REQUIRE(q1.torsion.size() == 1);
    CHECK(q1.torsion[0] == 2);

    auto q2 = quotient_invariants(lat(2, {}));
    CHECK(q2.free_rank == 2);
    CHECK(q2.torsion.empty());

    auto q3 = quotient_invariants(lat(2, {{1, 1}, {1, -1}}));
    CHECK(q3.free_rank == 0);
    REQUIRE(q3.torsion.size() == 1);
    CHECK(q3.torsion[0] == 2);
}

TEST_CASE("is_direct_summand iff empty torsion (random)") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 150; ++iter) {
        IntMat A = polyweyl::testing::random_int_matrix(rng, 4, 3);
        Sublattice L(A.cols(), A.row_vectors());
        CHECK(is_direct_summand(L) == quotient_invariants(L).torsion.empty());
    }
}

TEST_CASE("fixed_sublattice") {
    SUBCASE("identity fixes everything") {
        auto L = fixed_sublattice({IntMat::identity(2)}, 2);
        CHECK(L == Sublattice::full(2));
    }
    SUBCASE("-identity fixes nothing") {
        IntMat m{{-1}};
        auto L = fixed_sublattice({m}, 1);
        CHECK(L.rank() == 0);
    }
    SUBCASE("coordinate swap fixes the diagonal") {
        IntMat swap{{0, 1}, {1, 0}};
        auto L = fixed_sublattice({swap}, 2);
        CHECK(L == lat(2, {{1, 1}}));
    }
    SUBCASE("result is always saturated (random involutions and permutations)") {
        std::mt19937 rng(99);
        std::vector<IntMat> pool = {
            IntMat{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
            IntMat{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
            IntMat{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}},
            IntMat{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
            IntMat{{1, 1, 0}, {0, -1, 0}, {0, 0, 1}},  // reflection in a skew basis
        };
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        for (int iter = 0; iter < 40; ++iter) {
            std::vector<IntMat> mats{pool[pick(rng)], pool[pick(rng)]};
            auto L = fixed_sublattice(mats, 3);
            if (L.rank() > 0) CHECK(is_direct_summand(L));
            for (const auto& b : L.basis())
                for (const auto& m : mats) CHECK(m * b == b);
        }
    }
}

TEST_CASE("integer kernel and solve") {
    IntMat A{{2, 4}, {1, 2}};
    auto ker = integer_kernel(A);
    REQUIRE(ker.size() == 1);
    CHECK(A * ker[0] == IntVec{Int(0), Int(0)});
    CHECK(content(ker[0]) == 1);

    auto sol = integer_solve(A, {Int(6), Int(3)});
    REQUIRE(sol.has_value());
    CHECK(A * *sol == IntVec{Int(6), Int(3)});
    CHECK_FALSE(integer_solve(A, {Int(1), Int(1)}).has_value());
}

TEST_CASE("saturation and intersection") {
    auto L = lat(2, {{2, 0}});
    CHECK(L.saturation() == lat(2, {{1, 0}}));
    auto A = lat(2, {{1, 0}});
    auto B = lat(2, {{0, 1}});
    CHECK(A.intersect(B).rank() == 0);
    auto C = lat(2, {{1, 1}, {1, -1}});
    auto D = Sublattice::full(2);
    CHECK(C.intersect(D) == C);
    // containment
    CHECK(C.contains(IntVec{Int(2), Int(0)}));
    CHECK_FALSE(C.contains(IntVec{Int(1), Int(0)}));
}
