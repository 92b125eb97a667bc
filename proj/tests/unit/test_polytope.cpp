#include <doctest.h>

#include <random>
#include <set>

#include "polyweyl/polytope.hpp"

using namespace polyweyl;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

RationalPolytope unit_square() { return box_polytope(rv({0, 0}), rv({1, 1})); }

RationalPolytope triangle202() {
    // conv{(0,0),(2,0),(0,2)}
    return RationalPolytope(2, {make_ineq({1, 0}, 0), make_ineq({0, 1}, 0),
                                make_ineq({-1, -1}, -2)});
}

}  // namespace

TEST_CASE("vertex enumeration on simple shapes") {
    auto sq = unit_square();
    CHECK(sq.feasible());
    CHECK(sq.bounded());
    REQUIRE(sq.vertices().size() == 4);
    CHECK(sq.affine_dim() == 2);

    auto tri = triangle202();
    REQUIRE(tri.vertices().size() == 3);
    std::set<RatVec> vs(tri.vertices().begin(), tri.vertices().end());
    CHECK(vs.count(rv({0, 0})));
    CHECK(vs.count(rv({2, 0})));
    CHECK(vs.count(rv({0, 2})));
}

TEST_CASE("infeasible and unbounded polyhedra") {
    RationalPolytope empty(1, {make_ineq({1}, 1), make_ineq({-1}, 0)});
    CHECK_FALSE(empty.feasible());

    RationalPolytope halfline(1, {make_ineq({1}, 0)});
    CHECK(halfline.feasible());
    CHECK_FALSE(halfline.bounded());
    CHECK(halfline.recession_rays().size() == 1);
    CHECK(halfline.recession_rays()[0] == iv({1}));

    RationalPolytope plane(2, {});
    CHECK(plane.feasible());
    CHECK(plane.lineality().size() == 2);

    CHECK_THROWS_WITH_AS(halfline.face_lattice(), doctest::Contains("Unbounded"), Error);
}

TEST_CASE("redundant inequalities are dropped, implicit equalities kept") {
    RationalPolytope p(2, {make_ineq({1, 0}, 0), make_ineq({0, 1}, 0),
                           make_ineq({-1, -1}, -2), make_ineq({1, 1}, -5) /* redundant */});
    CHECK(p.inequalities().size() == 3);

    // a segment given by a pair of opposite inequalities
    RationalPolytope seg(2, {make_ineq({1, 0}, 0), make_ineq({-1, 0}, 0),
                             make_ineq({0, 1}, 0), make_ineq({0, -1}, -1)});
    CHECK(seg.feasible());
    CHECK(seg.affine_dim() == 1);
    CHECK(seg.inequalities().size() == 4);
    CHECK(seg.vertices().size() == 2);
}

TEST_CASE("face lattice of the unit square has 9 faces") {
    auto faces = unit_square().face_lattice();
    CHECK(faces.size() == 9);
    size_t n0 = 0, n1 = 0, n2 = 0;
    for (const Face& f : faces) {
        if (f.dim == 0) ++n0;
        if (f.dim == 1) ++n1;
        if (f.dim == 2) ++n2;
    }
    CHECK(n0 == 4);
    CHECK(n1 == 4);
    CHECK(n2 == 1);
}

TEST_CASE("face lattice of a point and of a triangle") {
    RationalPolytope pt(2, {make_ineq({1, 0}, 1), make_ineq({-1, 0}, -1),
                            make_ineq({0, 1}, 2), make_ineq({0, -1}, -2)});
    CHECK(pt.feasible());
    auto faces = pt.face_lattice();
    CHECK(faces.size() == 1);
    CHECK(faces[0].sample == rv({1, 2}));

    auto tri = triangle202().face_lattice();
    CHECK(tri.size() == 7);  // 3 + 3 + 1
}

TEST_CASE("face sample points satisfy tight inequalities exactly, others strictly") {
    for (const RationalPolytope& p : {unit_square(), triangle202()}) {
        auto faces = p.face_lattice();
        for (const Face& f : faces) {
            std::set<size_t> tight(f.tight.begin(), f.tight.end());
            for (size_t i = 0; i < p.inequalities().size(); ++i) {
                Rat v = dot(f.sample, p.inequalities()[i].normal);
                if (tight.count(i)) CHECK(v == p.inequalities()[i].offset);
                else CHECK(v > p.inequalities()[i].offset);
            }
        }
    }
}

TEST_CASE("tangent cones") {
    SUBCASE("vertex (2,0) of the triangle") {
        auto tc = triangle202().tangent_cone(rv({2, 0}));
        CHECK(tc.lineality.empty());
        std::set<IntVec> gens(tc.generators.begin(), tc.generators.end());
        CHECK(gens == std::set<IntVec>{iv({-1, 0}), iv({-1, 1})});
    }
    SUBCASE("interior point gives the whole plane") {
        auto tc = unit_square().tangent_cone(rv({0, 0}) /*placeholder*/);
        // replaced below: use a genuine interior point
        tc = unit_square().tangent_cone(RatVec{Rat(1, 2), Rat(1, 2)});
        CHECK(tc.generators.empty());
        CHECK(tc.lineality.size() == 2);
    }
    SUBCASE("endpoint of an interval") {
        RationalPolytope seg(1, {make_ineq({1}, 0), make_ineq({-1}, -1)});
        auto tc = seg.tangent_cone(rv({0}));
        REQUIRE(tc.generators.size() == 1);
        CHECK(tc.generators[0] == iv({1}));
    }
    SUBCASE("outside point throws") {
        CHECK_THROWS_WITH_AS(unit_square().tangent_cone(rv({5, 5})),
                             doctest::Contains("PointOutside"), Error);
    }
    SUBCASE("pointed at vertices, full lineality at interior (property)") {
        auto faces = triangle202().face_lattice();
        for (const Face& f : faces) {
            auto tc = triangle202().tangent_cone(f.sample);
            if (f.dim == 0) CHECK(tc.lineality.empty());
            if (f.dim == 2) CHECK(tc.lineality.size() == 2);
        }
    }
}

TEST_CASE("hyperplane_meets") {
    RationalPolytope seg01(1, {make_ineq({1}, 0), make_ineq({-1}, -1)});
    auto h = hyperplane_meets(seg01, iv({1}));
    CHECK(h.meets);
    CHECK(h.witness == rv({0}));

    RationalPolytope seg12(1, {make_ineq({1}, 1), make_ineq({-1}, -2)});
    CHECK_FALSE(hyperplane_meets(seg12, iv({1})).meets);

    RationalPolytope diag(2, {make_ineq({1, 1}, 1), make_ineq({-1, -1}, -1),
                              make_ineq({1, 0}, 0), make_ineq({0, 1}, 0)});
    auto h2 = hyperplane_meets(diag, iv({1, -1}));
    CHECK(h2.meets);
    CHECK(h2.witness == RatVec{Rat(1, 2), Rat(1, 2)});

    // witness lies on the hyperplane and inside P (property over brute force)
    auto tri = triangle202();
    for (const IntVec& cv : {iv({1, 0}), iv({1, -1}), iv({3, 1}), iv({0, 2})}) {
        auto hm = hyperplane_meets(tri, cv);
        // brute-force sign test over vertices
        int pos = 0, neg = 0, zero = 0;
        for (const RatVec& v : tri.vertices()) {
            Rat s = dot(v, cv);
            if (s > 0) ++pos;
            else if (s < 0) ++neg;
            else ++zero;
        }
        bool expected = zero > 0 || (pos > 0 && neg > 0);
        CHECK(hm.meets == expected);
        if (hm.meets) {
            CHECK(dot(hm.witness, cv) == 0);
            CHECK(tri.contains(hm.witness));
        }
    }
}

TEST_CASE("hyperplane_meets with recession handling") {
    // quadrant shifted to x >= 1: the wall x = 0 misses it, the wall x = y meets it
    RationalPolytope q(2, {make_ineq({1, 0}, 1), make_ineq({0, 1}, 0)});
    CHECK_FALSE(hyperplane_meets(q, iv({1, 0})).meets);
    auto h = hyperplane_meets(q, iv({1, -1}));
    CHECK(h.meets);
    CHECK(dot(h.witness, iv({1, -1})) == 0);
    CHECK(q.contains(h.witness));
}

TEST_CASE("chamber containment") {
    RationalPolytope seg01(1, {make_ineq({1}, 0), make_ineq({-1}, -1)});
    CHECK(chamber_containment(seg01, {iv({1})}));
    RationalPolytope segm11(1, {make_ineq({1}, -1), make_ineq({-1}, -1)});
    CHECK_FALSE(chamber_containment(segm11, {iv({1})}));

    // triangle conv{(1,0),(2,0),(1,1)} against the B2 positive coroots
    auto tri = RationalPolytope::from_vertices(2, {rv({1, 0}), rv({2, 0}), rv({1, 1})});
    std::vector<IntVec> b2_pos_coroots = {iv({2, 0}), iv({0, 2}), iv({1, 1}), iv({1, -1})};
    CHECK(chamber_containment(tri, b2_pos_coroots));
    // shifted below the diagonal wall it fails
    auto bad = RationalPolytope::from_vertices(2, {rv({0, 1}), rv({1, 2})});
    CHECK_FALSE(chamber_containment(bad, b2_pos_coroots));
}

TEST_CASE("from_vertices round trip") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> coord(-4, 4);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<RatVec> pts;
        size_t n = 3 + iter % 4;
        for (size_t i = 0; i < n; ++i) pts.push_back(rv({coord(rng), coord(rng)}));
        auto p = RationalPolytope::from_vertices(2, pts);
        CHECK(p.feasible());
        CHECK(p.bounded());
        // every input point is inside; every vertex is one of the inputs
        for (const RatVec& x : pts) CHECK(p.contains(x));
        for (const RatVec& v : p.vertices())
            CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
    }
}

TEST_CASE("cut_corner") {
    SUBCASE("square at the origin with eps 1/2 gives a pentagon") {
        auto cut = cut_corner(unit_square(), rv({0, 0}), Rat(1, 2));
        CHECK(cut.vertices().size() == 5);
        bool found = false;
        for (const Inequality& q : cut.inequalities())
            if (q.normal == iv({1, 1}) && q.offset == Rat(1, 2)) found = true;
        CHECK(found);
    }
    SUBCASE("eps reaching the opposite vertex fails") {
        CHECK_THROWS_WITH_AS(cut_corner(unit_square(), rv({0, 0}), Rat(2)),
                             doctest::Contains("EpsilonTooLarge"), Error);
        // touching an adjacent vertex exactly is also too large
        CHECK_THROWS_WITH_AS(cut_corner(unit_square(), rv({0, 0}), Rat(1)),
                             doctest::Contains("EpsilonTooLarge"), Error);
    }
    SUBCASE("triangle corner cut of size 1/3") {
        auto tri = triangle202();
        auto cut = cut_corner(tri, rv({0, 0}), Rat(1, 3));
        CHECK(cut.vertices().size() == 4);
        // the new facet x + y >= 1/3
        bool found = false;
        for (const Inequality& q : cut.inequalities())
            if (q.normal == iv({1, 1}) && q.offset == Rat(1, 3)) found = true;
        CHECK(found);
    }
    SUBCASE("non-vertex point is rejected") {
        CHECK_THROWS_WITH_AS(cut_corner(unit_square(), RatVec{Rat(1, 2), Rat(0)}, Rat(1, 4)),
                             doctest::Contains("NotVertex"), Error);
    }
}

TEST_CASE("transform by a unimodular map") {
    QMat M(2, 2);
    M(0, 0) = 1;
    M(0, 1) = 1;
    M(1, 0) = 0;
    M(1, 1) = 1;
    auto img = unit_square().transform(M);
    CHECK(img.bounded());
    CHECK(img.vertices().size() == 4);
    // (1,1) -> (2,1)
    bool found = false;
    for (const RatVec& v : img.vertices()) found |= (v == rv({2, 1}));
    CHECK(found);
}

TEST_CASE("random 3d polyhedra: membership, euler characteristic, round trip") {
    std::mt19937 rng(2026);
    std::uniform_int_distribution<long> c(-3, 3);
    int bounded_cases = 0;
    for (int iter = 0; iter < 150; ++iter) {
        std::vector<Inequality> qs;
        size_t m = 4 + iter % 6;
        for (size_t i = 0; i < m; ++i) {
            IntVec n{Int(c(rng)), Int(c(rng)), Int(c(rng))};
            if (is_zero(n)) continue;
            qs.push_back({primitive_part(n), Rat(c(rng))});
        }
        RationalPolytope p(3, qs);
        if (!p.feasible()) continue;
        for (const auto& v : p.vertices())
            for (const auto& q : p.inequalities()) CHECK(dot(v, q.normal) >= q.offset);
        for (const auto& r : p.recession_rays())
            for (const auto& q : p.inequalities()) CHECK(dot(to_rat(r), q.normal) >= 0);
        if (!p.bounded() || p.affine_dim() < 3) continue;
        ++bounded_cases;
        // full-dimensional canonical forms are unique: H -> V -> H is the identity
        auto back = RationalPolytope::from_vertices(3, p.vertices());
        CHECK(back.inequalities() == p.inequalities());
        long nv = 0, ne = 0, nf = 0;
        for (const auto& fc : p.face_lattice()) {
            if (fc.dim == 0) ++nv;
            if (fc.dim == 1) ++ne;
            if (fc.dim == 2) ++nf;
        }
        CHECK(nv - ne + nf == 2);
    }
    CHECK(bounded_cases > 5);
}

TEST_CASE("zero-dimensional ambient space") {
    RationalPolytope p(0, {});
    CHECK(p.feasible());
    CHECK(p.bounded());
    CHECK(p.vertices().size() == 1);
    CHECK(p.face_lattice().size() == 1);
}
