#pragma once

#include "polyweyl/local_glue.hpp"
#include "polyweyl/polytope.hpp"
#include "polyweyl/root_datum.hpp"

namespace polyweyl {

// Lambda_0 = <Delta> + Lambda^W expressed in its own basis, with the change of
// lattice group E = Hom(Lambda/Lambda_0, C^x) and the datum rewritten in
// Lambda_0 coordinates (where the root lattice is a direct summand).
struct Phi0Reduction {
    Sublattice lambda0;                 // inside the original lattice
    DiagonalizableGroupDescriptor E;
    RootDatum phi0;                     // in Lambda_0 coordinates
    std::vector<IntVec> basis;          // rows: basis of Lambda_0 (roots part first)
    QMat to_lambda0;                    // basis^-1: ambient rational points -> Lambda_0 coords
};

// Errors: NotDirectSum when <Delta> meets Lambda^W nontrivially.
Phi0Reduction reduce_to_phi0(const RootDatum& datum);

// Convex cover of P by closed rational polytopes, with the full nerve.
struct ConvexCover {
    std::vector<RationalPolytope> pieces;
    std::vector<std::vector<size_t>> nerve;  // index sets with U_I cap P nonempty
};

// Computes the nerve; certifies the union covers P by testing all face sample
// points and a rational interior grid. Errors: CoverIncomplete.
ConvexCover build_cover(const std::vector<RationalPolytope>& pieces,
                        const RationalPolytope& P, long grid_resolution = 6);

// Optionally shrink every piece by eps (models open covers); off by default.
std::vector<RationalPolytope> shrink_pieces(const std::vector<RationalPolytope>& pieces,
                                            const Rat& eps);

// Sections of K+ over U cap P: the lattice of gamma in Lambda^vee orthogonal to
// every simple root whose wall meets U cap P, plus one rational constant.
struct KPlusSections {
    Sublattice lattice;     // gamma part, sublattice of Lambda^vee
    bool has_rational = true;  // the constant c; always one copy of Q
    std::vector<size_t> active_walls;  // simple indices whose walls meet U cap P
};

// Errors: EmptyIntersection.
KPlusSections sections_kplus(const RootDatum& phi0, const RationalPolytope& P,
                             const RationalPolytope& U);

// Direct global sections K+(P) (no cover).
KPlusSections global_kplus(const RootDatum& phi0, const RationalPolytope& P);

struct CohomologySummary {
    size_t free_rank = 0;
    std::vector<Int> torsion;
    size_t rational_betti = 0;

    bool is_zero() const { return free_rank == 0 && torsion.empty() && rational_betti == 0; }
    bool operator==(const CohomologySummary&) const = default;
};

struct CechComplex {
    std::vector<std::vector<size_t>> simplices;          // nerve, grouped by dimension order
    std::vector<KPlusSections> sections;                 // parallel to simplices
    std::vector<CohomologySummary> cohomology;           // per degree
    Sublattice h0_lattice;                               // lattice part of H^0
};

// Full Cech cohomology of K+ for the cover. d after d = 0 is asserted internally.
CechComplex cech_cohomology(const RootDatum& phi0, const RationalPolytope& P,
                            const ConvexCover& cover);

// Is the affine-linear candidate (gamma, c) a section of K+ over all of P,
// i.e. is its Taylor expansion invariant at every face sample point?
bool taylor_invariance_check(const IntVec& gamma, const Rat& c, const RootDatum& phi0,
                             const RationalPolytope& P);

// Certificate that gamma -> (<alpha, gamma>) onto the walls meeting P is
// surjective: all elementary divisors of the wall matrix equal 1.
bool wall_surjectivity_certificate(const RootDatum& phi0, const RationalPolytope& P);

}  // namespace polyweyl
