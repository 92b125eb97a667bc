#include "polyweyl/cech.hpp"

#include <algorithm>
#include <set>

namespace polyweyl {

Phi0Reduction reduce_to_phi0(const RootDatum& datum) {
    size_t n = datum.rank;
    Sublattice R = datum.root_lattice();
    std::vector<IntMat> gens;
    for (size_t s : datum.simple_indices()) gens.push_back(datum.reflection(s));
    Sublattice fixed = fixed_sublattice(gens, n);

    if (R.intersect(fixed).rank() != 0)
        throw Error("NotDirectSum", "root lattice meets the W-fixed lattice nontrivially");
    Sublattice lambda0 = R.sum(fixed);
    if (lambda0.rank() != n)
        throw Error("NotDirectSum", "R + Lambda^W does not have finite index");

    Phi0Reduction out;
    out.lambda0 = lambda0;
    out.E = diagonalizable_quotient(lambda0);

    // basis rows: root-lattice block first, then the fixed block
    std::vector<IntVec> basis = R.basis();
    for (const IntVec& v : fixed.basis()) basis.push_back(v);
    out.basis = basis;

    QMat B(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) B(i, j) = Rat(basis[j][i]);
    out.to_lambda0 = B.inverse();

    RootDatum phi0;
    phi0.rank = n;
    for (size_t i = 0; i < datum.num_roots(); ++i) {
        RatVec rc = out.to_lambda0 * to_rat(datum.roots[i]);
        IntVec root(n), coroot(n, Int(0));
        for (size_t t = 0; t < n; ++t) {
            if (rc[t].get_den() != 1)
                throw Error("NotDirectSum", "root not integral in Lambda_0 coordinates");
            root[t] = rc[t].get_num();
        }
        // coroots transform by B^T
        for (size_t t = 0; t < n; ++t)
            for (size_t j = 0; j < n; ++j) coroot[t] += basis[t][j] * datum.coroots[i][j];
        phi0.roots.push_back(root);
        phi0.coroots.push_back(coroot);
    }
    phi0.positive = datum.positive;
    out.phi0 = phi0;
    return out;
}

KPlusSections sections_kplus(const RootDatum& phi0, const RationalPolytope& P,
                             const RationalPolytope& U) {
    RationalPolytope cap = U.intersect(P.inequalities());
    if (!cap.feasible()) throw Error("EmptyIntersection", "piece does not meet the polytope");

    KPlusSections out;
    std::vector<IntVec> active_roots;
    for (size_t s : phi0.simple_indices()) {
        if (hyperplane_meets(cap, phi0.coroots[s]).meets) {
            out.active_walls.push_back(s);
            active_roots.push_back(phi0.roots[s]);
        }
    }
    if (active_roots.empty()) {
        out.lattice = Sublattice::full(phi0.rank);
    } else {
        IntMat M = IntMat::from_rows(active_roots, phi0.rank);
        out.lattice = Sublattice(phi0.rank, integer_kernel(M));
    }
    return out;
}

KPlusSections global_kplus(const RootDatum& phi0, const RationalPolytope& P) {
    return sections_kplus(phi0, P, P);
}

std::vector<RationalPolytope> shrink_pieces(const std::vector<RationalPolytope>& pieces,
                                            const Rat& eps) {
    std::vector<RationalPolytope> out;
    for (const RationalPolytope& p : pieces) {
        std::vector<Inequality> qs = p.inequalities();
        for (Inequality& q : qs) q.offset += eps;
        out.emplace_back(p.dim(), std::move(qs));
    }
    return out;
}

ConvexCover build_cover(const std::vector<RationalPolytope>& pieces,
                        const RationalPolytope& P, long grid_resolution) {
    ConvexCover cover;
    cover.pieces = pieces;

    auto covered = [&](const RatVec& x) {
        for (const RationalPolytope& u : pieces)
            if (u.contains(x)) return true;
        return false;
    };
    for (const Face& f : P.face_lattice())
        if (!covered(f.sample)) throw Error("CoverIncomplete", "face sample point not covered");
    if (P.bounded() && !P.vertices().empty() && grid_resolution > 0) {
        size_t n = P.dim();
        RatVec lo = P.vertices()[0], hi = P.vertices()[0];
        for (const RatVec& v : P.vertices())
            for (size_t t = 0; t < n; ++t) {
                lo[t] = std::min(lo[t], v[t]);
                hi[t] = std::max(hi[t], v[t]);
            }
        std::vector<long> idx(n, 0);
        for (;;) {
            RatVec x(n);
            for (size_t t = 0; t < n; ++t)
                x[t] = lo[t] + (hi[t] - lo[t]) * frac(idx[t], grid_resolution);
            if (P.contains(x) && !covered(x))
                throw Error("CoverIncomplete", "interior grid point not covered");
            size_t t = 0;
            while (t < n && idx[t] == grid_resolution) idx[t++] = 0;
            if (t == n) break;
            ++idx[t];
        }
    }

    size_t k = pieces.size();
    if (k > 20) throw Error("GuardExceeded", "cover too large for full nerve enumeration");
    for (size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<size_t> I;
        std::vector<Inequality> qs = P.inequalities();
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                I.push_back(i);
                const auto& pq = pieces[i].inequalities();
                qs.insert(qs.end(), pq.begin(), pq.end());
            }
        RationalPolytope inter(P.dim(), qs);
        if (inter.feasible()) cover.nerve.push_back(I);
    }
    std::sort(cover.nerve.begin(), cover.nerve.end(),
              [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return cover;
}

namespace {

RationalPolytope nerve_intersection(const RationalPolytope& P,
                                    const std::vector<RationalPolytope>& pieces,
                                    const std::vector<size_t>& I) {
    std::vector<Inequality> qs = P.inequalities();
    for (size_t i : I) {
        const auto& pq = pieces[i].inequalities();
        qs.insert(qs.end(), pq.begin(), pq.end());
    }
    return RationalPolytope(P.dim(), qs);
}

// cohomology at position p of ...-> C^{p-1} -d-> C^p -d-> C^{p+1} -> ...
// d_in: matrix of d^{p-1} (dim C^p x dim C^{p-1}), d_out: matrix of d^p.
CohomologySummary lattice_cohomology(const IntMat& d_in, const IntMat& d_out) {
    size_t dim_c = d_out.cols();
    std::vector<IntVec> kernel = integer_kernel(d_out);
    size_t k_rank = kernel.size();

    CohomologySummary out;
    if (dim_c == 0) return out;
    if (d_in.cols() == 0) {
        out.free_rank = k_rank;
        return out;
    }
    // express the image of d_in in kernel coordinates (it lies inside; d^2 = 0)
    IntMat K(dim_c, k_rank);
    for (size_t j = 0; j < k_rank; ++j)
        for (size_t i = 0; i < dim_c; ++i) K(i, j) = kernel[j][i];
    std::vector<IntVec> image_coords;
    for (size_t j = 0; j < d_in.cols(); ++j) {
        IntVec v = d_in.col(j);
        if (is_zero(v)) continue;
        auto y = integer_solve(K, v);
        if (!y) throw Error("Internal", "image of d not contained in the kernel");
        image_coords.push_back(*y);
    }
    QuotientInvariants q = quotient_invariants(Sublattice(k_rank, image_coords));
    out.free_rank = q.free_rank;
    out.torsion = q.torsion;
    return out;
}

}  // namespace

CechComplex cech_cohomology(const RootDatum& phi0, const RationalPolytope& P,
                            const ConvexCover& cover) {
    CechComplex cx;
    cx.simplices = cover.nerve;
    if (cx.simplices.empty()) throw Error("CoverIncomplete", "nerve is empty");
    std::map<std::vector<size_t>, size_t> simplex_index;
    for (size_t i = 0; i < cx.simplices.size(); ++i) simplex_index[cx.simplices[i]] = i;

    std::vector<std::vector<IntVec>> bases;  // HNF basis rows per simplex
    for (const auto& I : cx.simplices) {
        RationalPolytope u = nerve_intersection(P, cover.pieces, I);
        KPlusSections sec = sections_kplus(phi0, P, u);
        bases.push_back(sec.lattice.basis());
        cx.sections.push_back(std::move(sec));
    }

    size_t max_deg = 0;
    for (const auto& I : cx.simplices) max_deg = std::max(max_deg, I.size() - 1);

    // per degree: simplices and offsets into the cochain group
    std::vector<std::vector<size_t>> by_deg(max_deg + 1);
    for (size_t i = 0; i < cx.simplices.size(); ++i)
        by_deg[cx.simplices[i].size() - 1].push_back(i);

    std::vector<std::vector<size_t>> offsets(max_deg + 1);
    std::vector<size_t> dims(max_deg + 2, 0);
    for (size_t p = 0; p <= max_deg; ++p) {
        size_t off = 0;
        for (size_t s : by_deg[p]) {
            offsets[p].push_back(off);
            off += bases[s].size();
        }
        dims[p] = off;
    }

    size_t n = phi0.rank;
    // integer differentials for the lattice part, signed incidence for Q
    std::vector<IntMat> d_lat(max_deg + 1);
    std::vector<QMat> d_rat(max_deg + 1);
    for (size_t p = 0; p < max_deg; ++p) {
        IntMat D(dims[p + 1], dims[p]);
        QMat Dq(by_deg[p + 1].size(), by_deg[p].size());
        for (size_t ti = 0; ti < by_deg[p + 1].size(); ++ti) {
            size_t tau_id = by_deg[p + 1][ti];
            const auto& tau = cx.simplices[tau_id];
            // target basis as columns for integer solves
            const auto& tbasis = bases[tau_id];
            IntMat T(n, tbasis.size());
            for (size_t j = 0; j < tbasis.size(); ++j)
                for (size_t i = 0; i < n; ++i) T(i, j) = tbasis[j][i];
            for (size_t drop = 0; drop < tau.size(); ++drop) {
                std::vector<size_t> sigma = tau;
                sigma.erase(sigma.begin() + drop);
                auto it = simplex_index.find(sigma);
                if (it == simplex_index.end())
                    throw Error("Internal", "nerve not closed under taking subsets");
                size_t sigma_id = it->second;
                size_t si = std::find(by_deg[p].begin(), by_deg[p].end(), sigma_id) -
                            by_deg[p].begin();
                long sign = (drop % 2 == 0) ? 1 : -1;
                Dq(ti, si) += Rat(sign);
                const auto& sbasis = bases[sigma_id];
                for (size_t bcol = 0; bcol < sbasis.size(); ++bcol) {
                    auto y = integer_solve(T, sbasis[bcol]);
                    if (!y)
                        throw Error("Internal",
                                    "section restriction is not an inclusion of lattices");
                    for (size_t brow = 0; brow < tbasis.size(); ++brow)
                        D(offsets[p + 1][ti] + brow, offsets[p][si] + bcol) +=
                            sign * (*y)[brow];
                }
            }
        }
        d_lat[p] = std::move(D);
        d_rat[p] = std::move(Dq);
    }
    d_lat[max_deg] = IntMat(0, dims[max_deg]);
    d_rat[max_deg] = QMat(0, by_deg[max_deg].size());

    // d after d = 0, exactly
    for (size_t p = 0; p + 1 < max_deg; ++p) {
        IntMat z = d_lat[p + 1] * d_lat[p];
        for (size_t i = 0; i < z.rows(); ++i)
            for (size_t j = 0; j < z.cols(); ++j)
                if (z(i, j) != 0) throw Error("Internal", "d composed with d is nonzero");
    }

    for (size_t p = 0; p <= max_deg; ++p) {
        IntMat d_in = (p == 0) ? IntMat(dims[0], 0) : d_lat[p - 1];
        CohomologySummary s = lattice_cohomology(d_in, d_lat[p]);
        // rational part: betti = dim ker d^p - rank d^{p-1}
        size_t rank_out = d_rat[p].rank();
        size_t rank_in = (p == 0) ? 0 : d_rat[p - 1].rank();
        s.rational_betti = by_deg[p].size() - rank_out - rank_in;
        cx.cohomology.push_back(s);
    }

    // lattice part of H^0: kernel vectors of d^0 projected to the first piece
    {
        std::vector<IntVec> kernel = integer_kernel(d_lat[0]);
        std::vector<IntVec> gammas;
        for (const IntVec& kv : kernel) {
            IntVec gamma(n, Int(0));
            const auto& b0 = bases[by_deg[0][0]];
            for (size_t j = 0; j < b0.size(); ++j)
                for (size_t t = 0; t < n; ++t) gamma[t] += kv[offsets[0][0] + j] * b0[j][t];
            if (!is_zero(gamma)) gammas.push_back(gamma);
        }
        cx.h0_lattice = Sublattice(n, gammas);
    }
    return cx;
}

bool taylor_invariance_check(const IntVec& gamma, const Rat& /*c*/, const RootDatum& phi0,
                             const RationalPolytope& P) {
    if (gamma.size() != phi0.rank) throw Error("BadShape", "gamma has wrong rank");
    auto simples = phi0.simple_indices();
    for (const Face& f : P.face_lattice()) {
        for (size_t s : simples) {
            if (dot(f.sample, phi0.coroots[s]) != 0) continue;
            if (dot(phi0.roots[s], gamma) != 0) return false;
        }
    }
    return true;
}

bool wall_surjectivity_certificate(const RootDatum& phi0, const RationalPolytope& P) {
    std::vector<IntVec> active;
    for (size_t s : phi0.simple_indices())
        if (hyperplane_meets(P, phi0.coroots[s]).meets) active.push_back(phi0.roots[s]);
    if (active.empty()) return true;
    IntMat M = IntMat::from_rows(active, phi0.rank);
    SmithDecomposition snf = smith_normal_form(M);
    if (snf.rank() != active.size()) return false;
    for (const Int& d : snf.diagonal())
        if (d != 0 && d != 1) return false;
    return true;
}

}  // namespace polyweyl
