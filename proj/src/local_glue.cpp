#include "polyweyl/local_glue.hpp"

#include <algorithm>
#include <set>

namespace polyweyl {

const std::vector<LocalRoot>& LocalSystemAssignment::at(const std::vector<size_t>& tight) const {
    auto it = by_face.find(tight);
    if (it == by_face.end()) throw Error("MissingFace", "no local system for this face");
    return it->second;
}

namespace {

std::vector<LocalRoot> sorted(std::vector<LocalRoot> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// roots of the subsystem generated by a set of simple pairs, ambient coordinates
std::vector<IntVec> generated_roots(size_t rank, const std::vector<LocalRoot>& simples) {
    if (simples.empty()) return {};
    std::vector<IntVec> roots, coroots;
    for (const LocalRoot& s : simples) {
        roots.push_back(s.root);
        coroots.push_back(s.coroot);
    }
    return datum_from_simples(rank, roots, coroots).roots;
}

}  // namespace

void validate_assignment(const LocalSystemAssignment& L, const RationalPolytope& P) {
    auto faces = P.face_lattice();
    for (const Face& f : faces) {
        const auto& simples = L.at(f.tight);
        for (const LocalRoot& s : simples) {
            if (s.root.size() != P.dim() || s.coroot.size() != P.dim())
                throw Error("BadShape", "local root of wrong rank");
            if (dot(s.root, s.coroot) != 2)
                throw Error("InvalidDatum", "<alpha, alpha^vee> != 2 in a local system");
            if (dot(f.sample, s.coroot) != 0)
                throw Error("InvalidDatum",
                            "local simple root does not vanish at the face sample point");
        }
        for (const LocalRoot& a : simples)
            for (const LocalRoot& b : simples)
                if (!(a == b) && dot(a.root, b.coroot) > 0)
                    throw Error("InvalidDatum", "local simple roots pair positively");
    }
}

LocalSubsystem ambient_local_roots(const RootDatum& datum, const RatVec& a) {
    LocalSubsystem out;
    std::set<size_t> pos(datum.positive.begin(), datum.positive.end());
    for (size_t i = 0; i < datum.num_roots(); ++i)
        if (dot(a, datum.coroots[i]) == 0) {
            out.roots.push_back(i);
            if (pos.count(i)) out.positive.push_back(i);
        }
    // simple roots of Delta_a: positive members that are not sums of two of them
    for (size_t i : out.positive) {
        bool is_sum = false;
        for (size_t j : out.positive) {
            if (is_sum) break;
            for (size_t k : out.positive) {
                IntVec s(datum.rank);
                for (size_t t = 0; t < datum.rank; ++t)
                    s[t] = datum.roots[j][t] + datum.roots[k][t];
                if (s == datum.roots[i]) {
                    is_sum = true;
                    break;
                }
            }
        }
        if (!is_sum) out.simples.push_back(i);
    }
    return out;
}

LocalSystemAssignment induced_assignment(const RootDatum& datum, const RationalPolytope& P) {
    if (datum.rank != P.dim()) throw Error("BadShape", "datum rank differs from polytope dim");
    LocalSystemAssignment L;
    for (const Face& f : P.face_lattice()) {
        LocalSubsystem sub = ambient_local_roots(datum, f.sample);
        std::vector<LocalRoot> simples;
        for (size_t i : sub.simples) simples.push_back({datum.roots[i], datum.coroots[i]});
        L.by_face[f.tight] = sorted(std::move(simples));
    }
    return L;
}

CoherenceReport check_coherence(const LocalSystemAssignment& L, const RationalPolytope& P) {
    CoherenceReport report;
    auto faces = P.face_lattice();
    for (const Face& small : faces) {
        std::set<size_t> small_tight(small.tight.begin(), small.tight.end());
        const auto& sigma_small = L.at(small.tight);
        for (const Face& big : faces) {
            if (big.tight == small.tight) continue;
            // closure of `big` contains `small` iff tight(small) contains tight(big)
            bool contains = std::all_of(big.tight.begin(), big.tight.end(),
                                        [&](size_t i) { return small_tight.count(i) > 0; });
            if (!contains) continue;
            std::vector<LocalRoot> expected;
            for (const LocalRoot& g : sigma_small)
                if (dot(big.sample, g.coroot) == 0) expected.push_back(g);
            std::vector<LocalRoot> actual = sorted(L.at(big.tight));
            expected = sorted(std::move(expected));
            if (actual != expected) {
                CoherenceViolation v;
                v.face = small.tight;
                v.subface = big.tight;
                v.detail = "restriction of the local simple system does not match";
                report.violations.push_back(std::move(v));
            }
        }
    }
    return report;
}

GluedSystem glue_weyl(const LocalSystemAssignment& L, const RationalPolytope& P) {
    validate_assignment(L, P);
    size_t n = P.dim();

    std::set<LocalRoot> sigma_set;
    for (const Face& f : P.face_lattice())
        for (const LocalRoot& s : L.at(f.tight)) sigma_set.insert(s);
    std::vector<LocalRoot> sigma(sigma_set.begin(), sigma_set.end());

    GluedSystem out;
    out.simples = sigma;
    out.lattice = Sublattice::full(n);

    for (const LocalRoot& a : sigma)
        for (const LocalRoot& b : sigma)
            if (!(a == b) && dot(a.root, b.coroot) > 0)
                throw Error("NonNegativePairing",
                            "two local simple roots pair positively; input not realizable");

    if (sigma.empty()) {
        out.datum.rank = n;
        out.weyl = enumerate_weyl({}, n);
        return out;
    }

    // finite-type certificate for the union (rejects affine/singular unions)
    IntMat C(sigma.size(), sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i)
        for (size_t j = 0; j < sigma.size(); ++j) C(i, j) = dot(sigma[i].root, sigma[j].coroot);
    recognize_finite_type(C);

    std::vector<IntVec> roots, coroots;
    for (const LocalRoot& s : sigma) {
        roots.push_back(s.root);
        coroots.push_back(s.coroot);
    }
    out.datum = datum_from_simples(n, roots, coroots);

    std::vector<IntMat> gens;
    for (const LocalRoot& s : sigma) {
        IntMat m = IntMat::identity(n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) m(r, c) -= s.root[r] * s.coroot[c];
        gens.push_back(m);
    }
    out.weyl = enumerate_weyl(gens, n);

    // recovery: Sigma(a) = { alpha in Sigma : <a, alpha^vee> = 0 } at every face
    for (const Face& f : P.face_lattice()) {
        std::vector<LocalRoot> expected;
        for (const LocalRoot& s : sigma)
            if (dot(f.sample, s.coroot) == 0) expected.push_back(s);
        if (sorted(expected) != sorted(L.at(f.tight)))
            throw Error("RecoveryFailure",
                        "union of local systems does not restrict back to a face");
    }
    return out;
}

PhiMResult construct_phi_m(const Sublattice& lambda_m, const WeylGroup& w_m,
                           const LocalSystemAssignment& L, const RationalPolytope& P) {
    size_t n = P.dim();
    if (lambda_m.ambient_rank() != n) throw Error("BadShape", "lattice ambient rank mismatch");
    std::vector<IntVec> basis = lambda_m.basis();
    if (basis.size() != n)
        throw Error("InfiniteIndex", "Lambda_M must have full rank in the ambient lattice");

    QMat B(n, n);  // columns are the basis vectors
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) B(i, j) = Rat(basis[j][i]);
    QMat Binv = B.inverse();

    // restrict W_M to Lambda_M coordinates; entries must stay integral
    auto restrict_mat = [&](const IntMat& w) {
        QMat r = Binv * QMat::from_int(w) * B;
        IntMat out(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (r(i, j).get_den() != 1)
                    throw Error("LatticeNotStable", "W_M does not stabilize Lambda_M");
                out(i, j) = r(i, j).get_num();
            }
        return out;
    };
    std::vector<IntMat> gen_restricted;
    for (const IntMat& g : w_m.generators) gen_restricted.push_back(restrict_mat(g));
    WeylGroup w_restricted = enumerate_weyl(gen_restricted, n);

    RootDatum max = phi_max(w_restricted, n);

    PhiMResult result;
    result.lattice_basis = basis;
    if (max.num_roots() == 0) {
        result.phi_m.rank = n;
        return result;
    }

    // positivity from an interior point of P, transported to Lambda_M coordinates
    auto faces = P.face_lattice();
    const Face* top = nullptr;
    for (const Face& f : faces)
        if (static_cast<int>(f.dim) == P.affine_dim()) top = &f;
    if (!top) throw Error("Infeasible", "polytope has no relative interior sample");
    RatVec a0 = Binv * top->sample;

    std::vector<size_t> positive;
    for (size_t i = 0; i < max.num_roots(); ++i) {
        Rat s = dot(a0, max.coroots[i]);
        if (s == 0)
            throw Error("WallThroughInterior",
                        "a reflection wall of W_M passes through the interior of P");
        if (s > 0) positive.push_back(i);
    }
    max.positive = positive;

    auto simples = max.simple_indices();
    std::vector<IntVec> sigma_roots, sigma_coroots;
    for (size_t si : simples) {
        const IntVec& alpha = max.roots[si];
        const IntVec& alphav = max.coroots[si];
        bool critical = true;
        for (const Int& x : alpha) critical = critical && (x % 2 == 0);

        Rat n_alpha = 1;
        if (critical) {
            // ambient wall covector of alpha: B^-T alpha^vee
            RatVec wall(n, Rat(0));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) wall[i] += Binv(j, i) * Rat(alphav[j]);
            IntVec wall_prim = primitive_direction(wall);

            // ambient root vectors for the two candidate scales
            IntVec amb_alpha(n, Int(0)), amb_half(n, Int(0));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    amb_alpha[i] += basis[j][i] * alpha[j];
                    amb_half[i] += basis[j][i] * (alpha[j] / 2);
                }

            bool seen_any = false;
            for (const Face& f : faces) {
                if (dot(f.sample, wall_prim) != 0) continue;
                std::vector<IntVec> local = generated_roots(n, L.at(f.tight));
                bool has_full = std::find(local.begin(), local.end(), amb_alpha) != local.end();
                bool has_half = std::find(local.begin(), local.end(), amb_half) != local.end();
                if (has_full == has_half)
                    throw Error("InconsistentHalving",
                                "local system on a critical wall determines no unique scale");
                Rat here = has_full ? Rat(1) : Rat(1, 2);
                if (seen_any && here != n_alpha)
                    throw Error("InconsistentHalving",
                                "faces on one critical wall disagree about the root scale");
                n_alpha = here;
                seen_any = true;
            }
            if (!seen_any) {
                n_alpha = 1;  // wall misses P: unconstrained, keep the maximal root
                result.defaulted_simples.push_back(amb_alpha);
            } else if (n_alpha == Rat(1, 2)) {
                result.halved_simples.push_back(amb_half);
            }
        }

        if (n_alpha == 1) {
            sigma_roots.push_back(alpha);
            sigma_coroots.push_back(alphav);
        } else {
            IntVec half(n), twice(n);
            for (size_t t = 0; t < n; ++t) {
                half[t] = alpha[t] / 2;
                twice[t] = 2 * alphav[t];
            }
            sigma_roots.push_back(half);
            sigma_coroots.push_back(twice);
        }
    }
    result.phi_m = datum_from_simples(n, sigma_roots, sigma_coroots);
    return result;
}

}  // namespace polyweyl
