#pragma once

#include <optional>
#include <vector>

#include "polyweyl/intmat.hpp"

namespace polyweyl {

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., all di >= 0.
struct SmithDecomposition {
    IntMat U, D, V;

    std::vector<Int> diagonal() const;
    size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMat& A);

// Row-style Hermite normal form of the lattice spanned by the rows of A:
// nonzero rows only, pivots positive, entries above a pivot reduced into
// [0, pivot). Two sublattices are equal iff their HNFs coincide.
IntMat hermite_normal_form(const IntMat& A);

// Basis (as rows) of { x : A x = 0 } over the integers. Always saturated.
std::vector<IntVec> integer_kernel(const IntMat& A);

// One integer solution of A x = b, if any.
std::optional<IntVec> integer_solve(const IntMat& A, const IntVec& b);

// Invariant factors of Z^ambient / <rows of A>: free rank and the torsion
// factors > 1 in divisibility order.
struct QuotientInvariants {
    size_t free_rank = 0;
    std::vector<Int> torsion;  // each > 1, d1 | d2 | ...

    bool operator==(const QuotientInvariants&) const = default;
};

// A finitely generated subgroup of Z^ambient_rank given by generators.
// Generators need not be independent; the HNF basis is the canonical form.
class Sublattice {
public:
    Sublattice() : ambient_rank_(0) {}
    explicit Sublattice(size_t ambient_rank) : ambient_rank_(ambient_rank) {}
    Sublattice(size_t ambient_rank, std::vector<IntVec> generators);

    static Sublattice full(size_t ambient_rank);

    size_t ambient_rank() const { return ambient_rank_; }
    const std::vector<IntVec>& generators() const { return generators_; }

    // canonical basis; rows of the HNF
    std::vector<IntVec> basis() const;
    size_t rank() const;
    bool contains(const IntVec& v) const;
    bool operator==(const Sublattice& other) const;

    Sublattice intersect(const Sublattice& other) const;
    // smallest saturated sublattice containing this one
    Sublattice saturation() const;
    // direct sum of generators, same ambient
    Sublattice sum(const Sublattice& other) const;

private:
    size_t ambient_rank_;
    std::vector<IntVec> generators_;
};

bool is_direct_summand(const Sublattice& L);

QuotientInvariants quotient_invariants(const Sublattice& L);

// HNF basis of { v : M v = v for every M }; saturated by construction.
Sublattice fixed_sublattice(const std::vector<IntMat>& mats, size_t n);

}  // namespace polyweyl
