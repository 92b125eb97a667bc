#include <doctest.h>

#include <set>

#include "polyweyl/local_glue.hpp"

using namespace polyweyl;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

RationalPolytope interval01() {
    return RationalPolytope(1, {make_ineq({1}, 0), make_ineq({-1}, -1)});
}

RationalPolytope unit_square() {
    return RationalPolytope(2, {make_ineq({1, 0}, 0), make_ineq({0, 1}, 0),
                                make_ineq({-1, 0}, -1), make_ineq({0, -1}, -1)});
}

// triangle in the B2 chamber {x1 >= x2 >= 0} touching both walls
RationalPolytope b2_triangle() {
    return RationalPolytope(2, {make_ineq({0, 1}, 0), make_ineq({1, -1}, 0),
                                make_ineq({-1, 0}, -1)});
}

// triangle in the A2 chamber touching both walls: conv{(0,0),(1,2),(2,1)}
RationalPolytope a2_triangle() {
    return RationalPolytope::from_vertices(2, {rv({0, 0}), rv({1, 2}), rv({2, 1})});
}

// brute-force subgroup equality of generated reflection subgroup vs stabilizer
bool stabilizer_matches(const WeylGroup& w, const RatVec& a,
                        const std::vector<IntMat>& local_reflections) {
    std::vector<IntMat> stab = w.stabilizer(a);
    std::vector<IntMat> gen = subgroup_closure(local_reflections, w.dim);
    return stab == gen;  // both sorted canonically
}

}  // namespace

TEST_CASE("ambient local roots") {
    auto b2 = datum_bn_epsilon(2);
    SUBCASE("point on the short wall") {
        auto sub = ambient_local_roots(b2, rv({1, 0}));
        REQUIRE(sub.roots.size() == 2);
        std::set<IntVec> got;
        for (size_t i : sub.roots) got.insert(b2.roots[i]);
        CHECK(got == std::set<IntVec>{iv({0, 1}), iv({0, -1})});
        CHECK(sub.simples.size() == 1);
    }
    SUBCASE("regular point") {
        CHECK(ambient_local_roots(b2, RatVec{Rat(3), Rat(1)}).roots.empty());
    }
    SUBCASE("origin carries everything") {
        CHECK(ambient_local_roots(b2, rv({0, 0})).roots.size() == b2.num_roots());
    }
}

TEST_CASE("induced assignments are coherent") {
    auto sl2 = datum_sl2();
    auto square_datum = datum_a1xa1();
    auto b2 = datum_bn_epsilon(2);

    CHECK(check_coherence(induced_assignment(sl2, interval01()), interval01()).clean());
    CHECK(check_coherence(induced_assignment(square_datum, unit_square()), unit_square())
              .clean());
    CHECK(check_coherence(induced_assignment(b2, b2_triangle()), b2_triangle()).clean());
}

TEST_CASE("hand-built violating assignment is flagged") {
    auto square_datum = datum_a1xa1();
    auto P = unit_square();
    LocalSystemAssignment L = induced_assignment(square_datum, P);
    // drop the root on the x = 0 edge that should restrict from the corner
    for (auto& [tight, roots] : L.by_face) {
        bool is_x0_edge = false;
        for (size_t i : tight)
            if (P.inequalities()[i].normal == iv({1, 0})) is_x0_edge = true;
        if (is_x0_edge && tight.size() == 1) roots.clear();
    }
    auto report = check_coherence(L, P);
    // both endpoints of the edited edge notice the dropped restriction
    CHECK(report.violations.size() == 2);
    for (const auto& v : report.violations) CHECK(v.subface.size() == 1);
}

TEST_CASE("single point polytope is vacuously coherent") {
    RationalPolytope pt(1, {make_ineq({1}, 0), make_ineq({-1}, 0)});
    auto sl2 = datum_sl2();
    auto L = induced_assignment(sl2, pt);
    CHECK(check_coherence(L, pt).clean());
}

TEST_CASE("glue_weyl") {
    SUBCASE("synthetic A2 triangle") {
        auto P = a2_triangle();
        LocalSystemAssignment L;
        LocalRoot alpha{iv({1, 0}), iv({2, -1})};
        LocalRoot beta{iv({0, 1}), iv({-1, 2})};
        for (const Face& f : P.face_lattice()) {
            std::vector<LocalRoot> roots;
            for (const LocalRoot& r : {alpha, beta})
                if (dot(f.sample, r.coroot) == 0) roots.push_back(r);
            L.by_face[f.tight] = roots;
        }
        CHECK(check_coherence(L, P).clean());
        GluedSystem g = glue_weyl(L, P);
        CHECK(g.simples.size() == 2);
        CHECK(g.datum.num_roots() == 6);
        CHECK(g.weyl.order() == 6);
    }
    SUBCASE("all-empty assignment") {
        auto P = unit_square();
        LocalSystemAssignment L;
        for (const Face& f : P.face_lattice()) L.by_face[f.tight] = {};
        GluedSystem g = glue_weyl(L, P);
        CHECK(g.weyl.order() == 1);
        CHECK(g.datum.num_roots() == 0);
    }
    SUBCASE("interval with one wall gives A1 and sections {+-1}") {
        auto sl2 = datum_sl2();
        auto P = interval01();
        GluedSystem g = glue_weyl(induced_assignment(sl2, P), P);
        CHECK(g.weyl.order() == 2);
        auto sections = global_sections(g.datum);
        CHECK(sections.torus_rank == 0);
        CHECK(sections.torsion == std::vector<Int>{Int(2)});
    }
    SUBCASE("positive pairing is rejected") {
        auto P = unit_square();
        LocalSystemAssignment L;
        LocalRoot alpha{iv({2, 0}), iv({1, 0})};
        LocalRoot beta{iv({1, 1}), iv({0, 2})};  // <beta, alpha^vee> = 1 > 0
        for (const Face& f : P.face_lattice()) {
            std::vector<LocalRoot> roots;
            if (dot(f.sample, alpha.coroot) == 0 && f.tight.size() == 1) roots = {alpha};
            if (dot(f.sample, beta.coroot) == 0 && f.tight.size() == 1) roots = {beta};
            L.by_face[f.tight] = roots;
        }
        CHECK_THROWS_WITH_AS(glue_weyl(L, P), doctest::Contains("NonNegativePairing"), Error);
    }
    SUBCASE("recovery failure when a face omits a vanishing union root") {
        auto square_datum = datum_a1xa1();
        auto P = unit_square();
        LocalSystemAssignment L = induced_assignment(square_datum, P);
        for (auto& [tight, roots] : L.by_face)
            if (tight.size() == 2 && roots.size() == 2) roots.pop_back();
        CHECK_THROWS_WITH_AS(glue_weyl(L, P), doctest::Contains("RecoveryFailure"), Error);
    }
}

TEST_CASE("glued stabilizers are generated by vanishing local roots") {
    struct Config {
        RootDatum datum;
        RationalPolytope P;
    };
    std::vector<Config> configs;
    configs.push_back({datum_sl2(), interval01()});
    configs.push_back({datum_a1xa1(), unit_square()});
    configs.push_back({datum_bn_epsilon(2), b2_triangle()});
    configs.push_back({datum_a(2), a2_triangle()});

    for (const Config& cfg : configs) {
        LocalSystemAssignment L = induced_assignment(cfg.datum, cfg.P);
        REQUIRE(check_coherence(L, cfg.P).clean());
        GluedSystem g = glue_weyl(L, cfg.P);

        // oracle: the glued group equals the reflection closure over walls meeting P
        std::vector<IntMat> wall_reflections;
        for (size_t i : cfg.datum.positive)
            if (hyperplane_meets(cfg.P, cfg.datum.coroots[i]).meets)
                wall_reflections.push_back(cfg.datum.reflection(i));
        CHECK(subgroup_closure(wall_reflections, cfg.datum.rank) == g.weyl.elements);

        for (const Face& f : cfg.P.face_lattice()) {
            std::vector<IntMat> local;
            for (const LocalRoot& s : g.simples)
                if (dot(f.sample, s.coroot) == 0) {
                    IntMat m = IntMat::identity(cfg.datum.rank);
                    for (size_t r = 0; r < cfg.datum.rank; ++r)
                        for (size_t c = 0; c < cfg.datum.rank; ++c)
                            m(r, c) -= s.root[r] * s.coroot[c];
                    local.push_back(m);
                }
            CHECK(stabilizer_matches(g.weyl, f.sample, local));
        }
    }
}

TEST_CASE("segment closure of the local systems on built-ins") {
    struct Config {
        RootDatum datum;
        RationalPolytope P;
    };
    std::vector<Config> configs;
    configs.push_back({datum_a1xa1(), unit_square()});
    configs.push_back({datum_bn_epsilon(2), b2_triangle()});
    for (const Config& cfg : configs) {
        LocalSystemAssignment L = induced_assignment(cfg.datum, cfg.P);
        auto faces = cfg.P.face_lattice();
        for (const Face& f1 : faces)
            for (const Face& f2 : faces)
                for (const LocalRoot& r : L.at(f1.tight)) {
                    if (std::find(L.at(f2.tight).begin(), L.at(f2.tight).end(), r) ==
                        L.at(f2.tight).end())
                        continue;
                    // r listed at both faces: every face sample on the segment
                    // between the two samples must list r as well
                    for (const Face& mid : faces) {
                        Rat t;
                        bool on_segment = true, t_set = false;
                        for (size_t c = 0; c < cfg.P.dim() && on_segment; ++c) {
                            Rat d = f2.sample[c] - f1.sample[c];
                            Rat rel = mid.sample[c] - f1.sample[c];
                            if (d == 0) {
                                if (rel != 0) on_segment = false;
                            } else if (!t_set) {
                                t = rel / d;
                                t_set = true;
                            } else if (rel != t * d) {
                                on_segment = false;
                            }
                        }
                        if (!on_segment || !t_set || t < 0 || t > 1) continue;
                        const auto& mid_roots = L.at(mid.tight);
                        CHECK(std::find(mid_roots.begin(), mid_roots.end(), r) !=
                              mid_roots.end());
                    }
                }
    }
}

TEST_CASE("construct_phi_m") {
    auto P = interval01();
    WeylGroup sign_group = enumerate_weyl({IntMat{{-1}}}, 1);

    SUBCASE("local root 2 at the wall keeps the maximal root") {
        auto L = induced_assignment(datum_sl2(), P);
        PhiMResult r = construct_phi_m(Sublattice::full(1), sign_group, L, P);
        REQUIRE(r.phi_m.num_roots() == 2);
        std::set<IntVec> roots(r.phi_m.roots.begin(), r.phi_m.roots.end());
        CHECK(roots == std::set<IntVec>{iv({2}), iv({-2})});
        CHECK(r.halved_simples.empty());
        auto sections = global_sections(r.phi_m);
        CHECK(sections.torsion == std::vector<Int>{Int(2)});
    }
    SUBCASE("local root 1 at the wall halves the critical root") {
        auto L = induced_assignment(datum_pgl2(), P);
        PhiMResult r = construct_phi_m(Sublattice::full(1), sign_group, L, P);
        REQUIRE(r.phi_m.num_roots() == 2);
        std::set<IntVec> roots(r.phi_m.roots.begin(), r.phi_m.roots.end());
        CHECK(roots == std::set<IntVec>{iv({1}), iv({-1})});
        REQUIRE(r.halved_simples.size() == 1);
        CHECK(r.halved_simples[0] == iv({1}));
    }
    SUBCASE("trivial group gives the empty system") {
        LocalSystemAssignment L;
        for (const Face& f : P.face_lattice()) L.by_face[f.tight] = {};
        WeylGroup trivial = enumerate_weyl({}, 1);
        PhiMResult r = construct_phi_m(Sublattice::full(1), trivial, L, P);
        CHECK(r.phi_m.num_roots() == 0);
    }
    SUBCASE("critical wall missing the polytope defaults to the maximal root") {
        RationalPolytope off(1, {make_ineq({1}, 1), make_ineq({-1}, -2)});
        LocalSystemAssignment L;
        for (const Face& f : off.face_lattice()) L.by_face[f.tight] = {};
        PhiMResult r = construct_phi_m(Sublattice::full(1), sign_group, L, off);
        REQUIRE(r.phi_m.num_roots() == 2);
        CHECK(r.defaulted_simples.size() == 1);
        std::set<IntVec> roots(r.phi_m.roots.begin(), r.phi_m.roots.end());
        CHECK(roots == std::set<IntVec>{iv({2}), iv({-2})});
    }
    SUBCASE("missing scale on a wall face is inconsistent") {
        LocalSystemAssignment L;
        for (const Face& f : P.face_lattice()) L.by_face[f.tight] = {};
        CHECK_THROWS_WITH_AS(construct_phi_m(Sublattice::full(1), sign_group, L, P),
                             doctest::Contains("InconsistentHalving"), Error);
    }
    SUBCASE("proper sublattice Lambda_M = 2Z with ambient local root 2") {
        auto L = induced_assignment(datum_sl2(), P);
        Sublattice two_z(1, {iv({2})});
        PhiMResult r = construct_phi_m(two_z, sign_group, L, P);
        // the maximal root over 2Z is ambient 4; the local datum carries root 2,
        // so the critical root is halved: ambient 2, coordinate 1
        REQUIRE(r.phi_m.num_roots() == 2);
        std::set<IntVec> roots(r.phi_m.roots.begin(), r.phi_m.roots.end());
        CHECK(roots == std::set<IntVec>{iv({1}), iv({-1})});
        REQUIRE(r.halved_simples.size() == 1);
        CHECK(r.halved_simples[0] == iv({2}));
    }
    SUBCASE("phi_m reflections equal W_M reflections") {
        auto b2 = datum_bn_epsilon(2);
        auto P2 = b2_triangle();
        auto L = induced_assignment(b2, P2);
        GluedSystem g = glue_weyl(L, P2);
        PhiMResult r = construct_phi_m(Sublattice::full(2), g.weyl, L, P2);
        std::set<IntMat> from_phi, from_w;
        for (size_t i = 0; i < r.phi_m.num_roots(); ++i) from_phi.insert(r.phi_m.reflection(i));
        for (const IntMat& m : g.weyl.elements) {
            if (m.is_identity() || !(m * m).is_identity()) continue;
            if (rank_of((IntMat::identity(2) - m).row_vectors(), 2) == 1) from_w.insert(m);
        }
        CHECK(from_phi == from_w);
        // non-critical simple coroots stay primitive
        for (size_t s : r.phi_m.simple_indices()) {
            bool halved = false;
            for (const IntVec& h : r.halved_simples) halved |= (h == r.phi_m.roots[s]);
            if (!halved) CHECK(content(r.phi_m.coroots[s]) == 1);
        }
    }
}
