#pragma once

#include "polyweyl/polytope.hpp"
#include "polyweyl/root_datum.hpp"

namespace polyweyl {

// A simple root of a local system: the vector in Lambda plus its coroot.
struct LocalRoot {
    IntVec root;
    IntVec coroot;

    bool operator==(const LocalRoot&) const = default;
    bool operator<(const LocalRoot& o) const {
        if (root != o.root)
            return std::lexicographical_compare(root.begin(), root.end(), o.root.begin(),
                                                o.root.end());
        return std::lexicographical_compare(coroot.begin(), coroot.end(), o.coroot.begin(),
                                            o.coroot.end());
    }
};

// Map from faces of a polytope to the simple roots of the local root system at
// the face's sample point. Faces are keyed by their tight-inequality index sets.
struct LocalSystemAssignment {
    std::map<std::vector<size_t>, std::vector<LocalRoot>> by_face;

    const std::vector<LocalRoot>& at(const std::vector<size_t>& tight) const;
};

// Every simple root listed at a face must vanish at the face sample point.
void validate_assignment(const LocalSystemAssignment& L, const RationalPolytope& P);

// Restriction of the ambient local subsystem Delta_a = { alpha : <a, alpha^vee> = 0 }.
struct LocalSubsystem {
    std::vector<size_t> roots;     // indices into the ambient datum
    std::vector<size_t> positive;  // Delta_a intersect Delta+
    std::vector<size_t> simples;   // simple roots of Delta_a (within Delta+)
};

LocalSubsystem ambient_local_roots(const RootDatum& datum, const RatVec& a);

// The assignment induced by an ambient datum: every face gets the vanishing
// ambient simple roots at its sample point.
LocalSystemAssignment induced_assignment(const RootDatum& datum, const RationalPolytope& P);

struct CoherenceViolation {
    std::vector<size_t> face;      // tight set of the smaller face
    std::vector<size_t> subface;   // tight set of the larger face nearby
    std::string detail;
};

struct CoherenceReport {
    std::vector<CoherenceViolation> violations;
    bool clean() const { return violations.empty(); }
};

// Checks Sigma(F') = { gamma in Sigma(F) : <b, gamma^vee> = 0 } for every face
// pair F contained in F' (sample point b of F').
CoherenceReport check_coherence(const LocalSystemAssignment& L, const RationalPolytope& P);

struct GluedSystem {
    std::vector<LocalRoot> simples;  // union of the local simple systems
    RootDatum datum;                 // full root set generated by the simples
    WeylGroup weyl;                  // W_M
    Sublattice lattice;              // Lambda_M (ambient Z^n unless overridden)
};

// Local-to-global gluing. Errors: NonNegativePairing when two local simples
// pair positively, RecoveryFailure when the union does not restrict back to
// the local data at some face.
GluedSystem glue_weyl(const LocalSystemAssignment& L, const RationalPolytope& P);

struct PhiMResult {
    RootDatum phi_m;                   // in the basis of Lambda_M
    std::vector<IntVec> lattice_basis;  // rows: basis of Lambda_M in ambient coordinates
    std::vector<IntVec> halved_simples;  // ambient coordinates of simples with n = 1/2
    std::vector<IntVec> defaulted_simples;  // critical walls missing P (n = 1 by default)
};

// Builds Phi_max over Lambda_M and applies the critical-root halving read off
// from the local data on each wall. Errors: InconsistentHalving, plus a
// recorded default (not an error) for critical walls that miss the polytope.
PhiMResult construct_phi_m(const Sublattice& lambda_m, const WeylGroup& w_m,
                           const LocalSystemAssignment& L, const RationalPolytope& P);

}  // namespace polyweyl
