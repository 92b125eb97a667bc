#pragma once

#include "polyweyl/local_glue.hpp"
#include "polyweyl/polytope.hpp"
#include "polyweyl/root_datum.hpp"

namespace polyweyl {

// Momentum image Q together with the principal isotropy lattice.
struct MomentumData {
    RationalPolytope Q;
    Sublattice lambda0;
};

// Cone hull and group hull of a finite set of weights, plus the saturation
// check: does the monoid generated equal Q cap Lambda_0?
struct WeightMonoidData {
    std::vector<IntVec> cone_generators;  // primitive extreme rays of Q
    std::vector<IntVec> cone_lineality;
    Sublattice lambda0;
    bool saturated = false;
};

WeightMonoidData weight_monoid_data(const std::vector<IntVec>& generators, size_t rank);

// Membership in the monoid generated by a finite set (exact, terminates for
// arbitrary generator sets).
bool monoid_contains(const std::vector<IntVec>& generators, const IntVec& x);

// Per-vertex Delzant certificate.
struct DelzantCertificate {
    RatVec vertex;
    bool simple = false;           // exactly rank-many edges
    bool unimodular = false;       // primitive edge directions form a lattice basis
    Int det;                        // determinant in Lambda coordinates (0 if not square)
    std::vector<IntVec> edge_dirs;  // primitive, in Lambda coordinates
};

struct DelzantVerdict {
    bool delzant = false;
    std::vector<DelzantCertificate> certificates;
};

// Q bounded; Lambda a full-rank sublattice of Z^dim (defaults to Z^dim).
DelzantVerdict delzant_check(const RationalPolytope& Q, const Sublattice& lambda);
DelzantVerdict delzant_check(const RationalPolytope& Q);

// The rank-one classification table.
enum class Su2Case { Point, WallInterval, InteriorInterval };

struct Su2Classification {
    Su2Case tag;
    Rat x, y;       // interval ends (x == y for a point)
    Int d = 0;      // lattice scale, 0 for the point case
    std::string manifold;
};

// P = {x} or [x, y] in R>=0; d = 0 iff a point. Errors: InvalidPair when
// [0, y] is paired with d outside {1, 2, 4}, InvalidInput for malformed input.
Su2Classification classify_su2(const Rat& x, const Rat& y, const Int& d);

// Pluggable table of admissible local models beyond the built-in rows.
struct OracleRow {
    std::string local_type;            // Dynkin label of Delta_a
    std::vector<Int> lattice_divisors;  // invariant factors of <g_j, alpha_i^vee> data
    std::vector<std::vector<IntVec>> admissible_cones;  // generator lists in Lambda_0 coords
};

struct LocalOracleTable {
    std::vector<OracleRow> rows;
};

enum class MfVerdict { MultiplicityFree, NotMultiplicityFree, Undecided };

struct MfFaceReport {
    RatVec point;
    std::string local_type;  // "-" when Delta_a is empty
    MfVerdict verdict;
    std::string reason;
};

struct MfResult {
    MfVerdict verdict;
    std::vector<MfFaceReport> faces;
};

// Face-by-face multiplicity-free check. Compact Q: vertices only; otherwise an
// explicit face point list must be supplied.
MfResult mf_check(const MomentumData& data, const RootDatum& ambient,
                  const LocalOracleTable& oracle, bool vertices_only = true,
                  const std::vector<RatVec>& explicit_points = {});

}  // namespace polyweyl
