#pragma once

#include <map>
#include <string>
#include <vector>

#include "polyweyl/exact_linalg.hpp"

namespace polyweyl {

// Reduced root datum (Lambda, Delta, Lambda^vee, Delta^vee) in coordinates:
// Lambda = Z^rank, the pairing is the standard dot product, roots and coroots
// are parallel lists. positive indexes a choice of positive system.
struct RootDatum {
    size_t rank = 0;
    std::vector<IntVec> roots;
    std::vector<IntVec> coroots;
    std::vector<size_t> positive;

    size_t num_roots() const { return roots.size(); }
    // s_alpha as a matrix acting on Lambda: x -> x - <x, coroot> root
    IntMat reflection(size_t root_index) const;
    // index of -roots[i]
    size_t negative_of(size_t root_index) const;
    // positive roots that are not sums of two positive roots
    std::vector<size_t> simple_indices() const;

    Sublattice root_lattice() const;

    // Checks all structural invariants; throws Error("InvalidDatum", ...) on failure.
    void validate() const;
};

// Generate the full datum from simple (root, coroot) pairs by reflection closure.
// Positivity = nonnegative coordinates in the simple basis.
RootDatum datum_from_simples(size_t rank, const std::vector<IntVec>& simple_roots,
                             const std::vector<IntVec>& simple_coroots);

// Built-in data used across the test and acceptance suites.
// sl2: Lambda = Z, root 2, coroot 1.   pgl2: Lambda = Z, root 1, coroot 2.
RootDatum datum_sl2();
RootDatum datum_pgl2();
RootDatum datum_a(size_t n);         // root-lattice coordinates
RootDatum datum_bn_epsilon(size_t n);  // B_n in epsilon coordinates, Lambda = Z^n
RootDatum datum_cn_epsilon(size_t n);  // C_n in epsilon coordinates, Lambda = Z^n
RootDatum datum_g2();                // root-lattice coordinates
RootDatum datum_a1xa1();             // roots (2,0),(0,2) in Z^2

// Finite group generated by integer reflection matrices, fully enumerated.
struct WeylGroup {
    size_t dim = 0;
    std::vector<IntMat> generators;
    std::vector<IntMat> elements;  // sorted canonically, identity included

    size_t order() const { return elements.size(); }
    bool contains(const IntMat& m) const;
    // subgroup elements fixing the rational point a
    std::vector<IntMat> stabilizer(const RatVec& a) const;
};

// Closure of the generators; throws Error("GuardExceeded", ...) past the guard.
WeylGroup enumerate_weyl(const std::vector<IntMat>& generators, size_t dim,
                         size_t guard = 1000000);

// Closure of an arbitrary subset of elements (brute-force subgroup generation).
std::vector<IntMat> subgroup_closure(const std::vector<IntMat>& gens, size_t dim,
                                     size_t guard = 1000000);

// C[i][j] = <alpha_i, alpha_j^vee> over the given subset of root indices.
IntMat cartan_matrix(const RootDatum& datum, const std::vector<size_t>& subset);

// Dynkin type of a finite-type generalized Cartan matrix, e.g. "A2", "B3xA1".
// Components sorted by descending rank, then letter. Rank-2 B=C reported as "B2",
// rank-1 as "A1". Throws Error("SingularOrAffine", ...) when not of finite type
// and Error("InvalidCartan", ...) when the matrix is not a GCM at all.
std::string recognize_finite_type(const IntMat& C);

// Order of the Weyl group of a product type label (test oracle companion).
Int weyl_order_of_type(const std::string& label);

// Root datum with all coroots primitive realizing the given reflection group.
RootDatum phi_max(const WeylGroup& W, size_t rank);

// Hom(Lambda / L, C^x) for a sublattice L: a torus times a finite abelian group.
struct DiagonalizableGroupDescriptor {
    size_t torus_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1

    bool operator==(const DiagonalizableGroupDescriptor&) const = default;
    bool is_trivial() const { return torus_rank == 0 && torsion.empty(); }
};

DiagonalizableGroupDescriptor diagonalizable_quotient(const Sublattice& L);

// Fiber of the group scheme over the image of a rational point a:
// semisimple part Hom(Lambda/<Delta_a>, C^x), unipotent part of rank rk<Delta_a>.
struct FiberStructure {
    DiagonalizableGroupDescriptor semisimple;
    size_t unipotent_rank = 0;
    std::vector<size_t> local_roots;  // indices into datum.roots
};

FiberStructure fiber_structure(const RootDatum& datum, const RatVec& a);

// A^Phi = Hom(Lambda/<Delta>, C^x), the group of constant sections.
DiagonalizableGroupDescriptor global_sections(const RootDatum& datum);

// A root with half its coroot still in the cocharacter lattice, together with
// the witnessing type-B summand data.
struct SpecialRootCertificate {
    size_t root_index = 0;                // positive representative
    std::vector<size_t> short_orbit;      // all short roots of the summand
    Sublattice short_root_lattice;        // spanned by the short roots
    std::string summand_type;             // "B<n>" (B1 = A1 reported as "B1")
};

// Positive special roots with certificates; throws Error("CertificateFailure", ...)
// if a special root exists whose type-B certificate cannot be established.
std::vector<SpecialRootCertificate> special_roots(const RootDatum& datum);

// W-invariant homomorphism Lambda -> {+-1} that is -1 exactly on the short
// roots of the summand containing alpha. Returned as a mod-2 vector m;
// the value on chi is (-1)^(m . chi). Throws Error("NotSpecial", ...) if alpha
// is not special.
IntVec special_involution(const RootDatum& datum, size_t root_index);

// Evaluate a mod-2 functional: +1 or -1.
int involution_value(const IntVec& mod2_vector, const IntVec& chi);

// True iff the torsion of Lambda/<sub_roots> injects into Lambda/<Delta>.
bool component_injectivity_check(const RootDatum& datum,
                                 const std::vector<IntVec>& sub_roots);

// Invariant factors of Lambda/Lambda' for a finite-index sublattice containing
// all roots. Errors: InfiniteIndex, RootsNotContained.
DiagonalizableGroupDescriptor lattice_change_group(const RootDatum& datum,
                                                   const Sublattice& sub);

}  // namespace polyweyl
