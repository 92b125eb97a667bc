#pragma once

#include <vector>

#include "polyweyl/intmat.hpp"

namespace polyweyl {

// normal . x >= offset with the normal a primitive integer vector
struct Inequality {
    IntVec normal;
    Rat offset;

    bool operator==(const Inequality&) const = default;
    bool operator<(const Inequality& o) const;
};

// Generators of a polyhedral cone { x : c.x >= 0 }: extreme rays modulo the
// lineality space, all primitive integer vectors.
struct ConeGenerators {
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;
};

// Exact double description. `constraints` are integer functionals; the cone is
// the set of x with c.x >= 0 for every c.
ConeGenerators double_description(const std::vector<IntVec>& constraints, size_t dim);

struct Face {
    std::vector<size_t> tight;       // canonical inequality indices held with equality
    size_t dim = 0;
    RatVec sample;                   // relative-interior point (vertex average)
    std::vector<size_t> vertex_ids;  // indices into RationalPolytope::vertices()
};

struct TangentCone {
    RatVec apex;
    std::vector<IntVec> generators;  // primitive extreme rays
    std::vector<IntVec> lineality;   // primitive basis of the lineality space
};

// H-representation convex polyhedron with exact rational data. Inequalities
// are canonicalized on construction: primitive normals, duplicates collapsed,
// non-facets dropped (implicit equalities kept). V-data is computed once by
// double description and then immutable.
class RationalPolytope {
public:
    RationalPolytope() : dim_(0), feasible_(false) {}
    RationalPolytope(size_t dim, std::vector<Inequality> inequalities);

    static RationalPolytope from_vertices(size_t dim, const std::vector<RatVec>& vertices);

    size_t dim() const { return dim_; }
    const std::vector<Inequality>& inequalities() const { return ineqs_; }

    bool feasible() const { return feasible_; }
    bool bounded() const { return feasible_ && rays_.empty() && lineality_.empty(); }
    // affine dimension of the polytope itself (0 for a point); -1 if infeasible
    int affine_dim() const;

    // Points: for a bounded polytope exactly the vertices. For an unbounded one,
    // representatives of the minimal faces.
    const std::vector<RatVec>& vertices() const { return points_; }
    const std::vector<IntVec>& recession_rays() const { return rays_; }
    const std::vector<IntVec>& lineality() const { return lineality_; }

    bool contains(const RatVec& x) const;

    // All faces including the polytope itself, empty face excluded.
    // Requires boundedness; throws Error("Unbounded", ...).
    std::vector<Face> face_lattice() const;

    TangentCone tangent_cone(const RatVec& a) const;

    // Exact min/max of a linear functional over the polytope.
    struct Extremum {
        bool finite = false;
        Rat value;      // meaningful when finite
        RatVec where;  // attaining point when finite
    };
    Extremum minimize(const IntVec& functional) const;
    Extremum maximize(const IntVec& functional) const;

    // Intersect with additional inequalities (re-canonicalizes).
    RationalPolytope intersect(const std::vector<Inequality>& extra) const;
    // Image under the affine map x -> M x (M invertible rational).
    RationalPolytope transform(const QMat& M) const;

private:
    size_t dim_;
    std::vector<Inequality> ineqs_;
    bool feasible_;
    std::vector<RatVec> points_;
    std::vector<IntVec> rays_;
    std::vector<IntVec> lineality_;
};

// Does { x in P : <x, coroot> = 0 } meet P? Returns a rational witness if so.
struct HyperplaneMeet {
    bool meets = false;
    RatVec witness;
};
HyperplaneMeet hyperplane_meets(const RationalPolytope& P, const IntVec& coroot);

// True iff <x, coroot> >= 0 over all of P for every given positive coroot.
bool chamber_containment(const RationalPolytope& P, const std::vector<IntVec>& pos_coroots);

// Cut the corner at vertex v: add the inequality sum(lambda_i) >= eps in the
// dual coordinates of the tangent-cone generators at v.
// Errors: PointOutside / NotVertex / NotSimplicial / EpsilonTooLarge / Unbounded.
RationalPolytope cut_corner(const RationalPolytope& P, const RatVec& v, const Rat& eps);

// Convenience builders.
Inequality make_ineq(const std::vector<long>& normal, const Rat& offset);
RationalPolytope box_polytope(const RatVec& lo, const RatVec& hi);

}  // namespace polyweyl
