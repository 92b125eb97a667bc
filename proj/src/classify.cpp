#include "polyweyl/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace polyweyl {

namespace {

// Extreme rays and lineality of cone(generators) by double dualization.
ConeGenerators cone_from_generators(const std::vector<IntVec>& gens, size_t dim) {
    if (gens.empty()) return {{}, {}};
    ConeGenerators dual = double_description(gens, dim);
    std::vector<IntVec> constraints = dual.rays;
    for (const IntVec& l : dual.lineality) {
        constraints.push_back(l);
        constraints.push_back(negate(l));
    }
    return double_description(constraints, dim);
}

bool in_span(const std::vector<IntVec>& basis, const IntVec& v, size_t dim) {
    std::vector<IntVec> with = basis;
    with.push_back(v);
    return rank_of(with, dim) == rank_of(basis, dim);
}

// strictly positive functional on a pointed cone spanned by gens (full support)
IntVec positive_functional(const std::vector<IntVec>& gens, size_t dim) {
    ConeGenerators dual = double_description(gens, dim);
    IntVec phi(dim, Int(0));
    for (const IntVec& r : dual.rays)
        for (size_t t = 0; t < dim; ++t) phi[t] += r[t];
    for (const IntVec& g : gens)
        if (dot(phi, g) <= 0 && !is_zero(g))
            throw Error("NotPointed", "cone admits no strictly positive functional");
    return phi;
}

bool monoid_contains_pointed(const std::vector<IntVec>& gens, const IntVec& x, size_t dim,
                             const IntVec& phi) {
    std::map<IntVec, bool> memo;
    std::vector<IntVec> stackless;
    std::function<bool(const IntVec&)> go = [&](const IntVec& target) -> bool {
        if (is_zero(target)) return true;
        if (dot(phi, target) < 0) return false;
        auto it = memo.find(target);
        if (it != memo.end()) return it->second;
        memo[target] = false;  // cycle guard (phi strictly decreases, so none occur)
        for (const IntVec& g : gens) {
            if (dot(phi, g) > dot(phi, target)) continue;
            IntVec rest(dim);
            for (size_t t = 0; t < dim; ++t) rest[t] = target[t] - g[t];
            if (go(rest)) {
                memo[target] = true;
                return true;
            }
        }
        return false;
    };
    return go(x);
}

// Triangulation of a pointed cone given by its extreme rays (pulling at rays[0]).
std::vector<std::vector<IntVec>> triangulate_cone(const std::vector<IntVec>& rays, size_t dim) {
    size_t k = rank_of(rays, dim);
    if (rays.size() <= k) return {rays};
    ConeGenerators dual = double_description(rays, dim);
    const IntVec& apex = rays[0];
    std::vector<std::vector<IntVec>> out;
    for (const IntVec& f : dual.rays) {
        if (dot(f, apex) == 0) continue;  // facet through the apex
        std::vector<IntVec> facet_rays;
        for (const IntVec& r : rays)
            if (dot(f, r) == 0) facet_rays.push_back(r);
        for (auto& simplex : triangulate_cone(facet_rays, dim)) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

// Exact saturation test of monoid(gens) against cone(gens) cap Z^dim,
// for a pointed full-support situation.
bool pointed_monoid_saturated(const std::vector<IntVec>& gens, size_t dim) {
    if (dim == 0) return true;
    std::vector<IntVec> nonzero;
    for (const IntVec& g : gens)
        if (!is_zero(g)) nonzero.push_back(g);
    if (nonzero.empty()) return true;
    IntVec phi = positive_functional(nonzero, dim);

    ConeGenerators cg = cone_from_generators(nonzero, dim);
    if (!cg.lineality.empty())
        throw Error("NotPointed", "pointed saturation test on a cone with lineality");

    // extreme rays must be reachable, as must every lattice point of the
    // half-open parallelepiped of each simplicial subcone
    for (const IntVec& r : cg.rays)
        if (!monoid_contains_pointed(nonzero, r, dim, phi)) return false;

    for (const auto& simplex : triangulate_cone(cg.rays, dim)) {
        size_t k = simplex.size();
        QMat R(dim, k);
        for (size_t j = 0; j < k; ++j)
            for (size_t i = 0; i < dim; ++i) R(i, j) = Rat(simplex[j][i]);
        IntVec lo(dim, Int(0)), hi(dim, Int(0));
        for (size_t t = 0; t < dim; ++t)
            for (size_t j = 0; j < k; ++j) {
                if (simplex[j][t] < 0) lo[t] += simplex[j][t];
                else hi[t] += simplex[j][t];
            }
        // walk the integer box, keep points with all simplex coordinates in [0,1)
        IntVec x = lo;
        for (;;) {
            auto coords = solve_rational(R, to_rat(x));
            bool inside = coords.has_value();
            if (inside) {
                // solution must reproduce x exactly (x may be outside the span)
                RatVec back = R * *coords;
                for (size_t t = 0; t < dim && inside; ++t) inside = (back[t] == Rat(x[t]));
                for (size_t j = 0; j < k && inside; ++j)
                    inside = ((*coords)[j] >= 0 && (*coords)[j] < 1);
            }
            if (inside && !is_zero(x) && !monoid_contains_pointed(nonzero, x, dim, phi))
                return false;
            size_t t = 0;
            while (t < dim && x[t] == hi[t]) {
                x[t] = lo[t];
                ++t;
            }
            if (t == dim) break;
            x[t] += 1;
        }
    }
    return true;
}

// Quotient map Z^r -> Z^(r-v) killing the rows of X (a saturated row lattice).
IntMat quotient_map(const std::vector<IntVec>& x_rows, size_t r) {
    if (x_rows.empty()) return IntMat::identity(r);
    IntMat X = IntMat::from_rows(x_rows, r);
    std::vector<IntVec> ker = integer_kernel(X);  // functionals vanishing on rows
    return IntMat::from_rows(ker, r);
}

}  // namespace

bool monoid_contains(const std::vector<IntVec>& generators, const IntVec& x) {
    if (is_zero(x)) return true;
    if (generators.empty()) return false;
    size_t dim = x.size();
    ConeGenerators cg = cone_from_generators(generators, dim);
    if (cg.lineality.empty()) {
        std::vector<IntVec> nonzero;
        for (const IntVec& g : generators)
            if (!is_zero(g)) nonzero.push_back(g);
        if (nonzero.empty()) return false;
        return monoid_contains_pointed(nonzero, x, dim, positive_functional(nonzero, dim));
    }
    // split along the lineality space V
    std::vector<IntVec> gens_v, gens_rest;
    for (const IntVec& g : generators) {
        if (in_span(cg.lineality, g, dim)) gens_v.push_back(g);
        else gens_rest.push_back(g);
    }
    if (in_span(cg.lineality, x, dim)) {
        // positive combinations landing in V use only the V-generators
        ConeGenerators inner = cone_from_generators(gens_v, dim);
        if (inner.rays.empty()) {
            // the V-monoid is a group: membership = group membership
            return Sublattice(dim, gens_v).contains(x);
        }
        return monoid_contains(gens_v, x);
    }
    // x outside V: reduce modulo V when the V-part is a full group
    ConeGenerators inner = cone_from_generators(gens_v, dim);
    if (!inner.rays.empty() || rank_of(gens_v, dim) != cg.lineality.size())
        throw Error("Unsupported",
                    "monoid membership with a partially generated lineality part");
    IntMat q = quotient_map(gens_v, dim);
    std::vector<IntVec> images;
    for (const IntVec& g : gens_rest) images.push_back(q * g);
    IntVec xbar = q * x;
    size_t m = q.rows();
    std::vector<IntVec> nonzero;
    for (const IntVec& g : images)
        if (!is_zero(g)) nonzero.push_back(g);
    if (nonzero.empty()) return false;
    IntVec phi = positive_functional(nonzero, m);
    if (!monoid_contains_pointed(nonzero, xbar, m, phi)) return false;
    // any witness works: the remainder lies in the V-group
    return true;
}

WeightMonoidData weight_monoid_data(const std::vector<IntVec>& generators, size_t rank) {
    for (const IntVec& g : generators)
        if (g.size() != rank) throw Error("BadShape", "generator of wrong rank");
    WeightMonoidData out;
    out.lambda0 = Sublattice(rank, generators);

    ConeGenerators cg = cone_from_generators(generators, rank);
    out.cone_generators = cg.rays;
    out.cone_lineality = cg.lineality;

    // saturation: monoid(gens) == cone(gens) cap Lambda_0
    if (generators.empty()) {
        out.saturated = true;
        return out;
    }
    // work in Lambda_0 coordinates so the ambient lattice is exactly the group hull
    std::vector<IntVec> basis = out.lambda0.basis();
    size_t r = basis.size();
    if (r == 0) {
        out.saturated = true;
        return out;
    }
    QMat B(rank, r);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < rank; ++i) B(i, j) = Rat(basis[j][i]);
    auto to_coords = [&](const IntVec& v) {
        auto y = solve_rational(B, to_rat(v));
        if (!y) throw Error("Internal", "generator outside its own group hull");
        IntVec out_v(r);
        for (size_t t = 0; t < r; ++t) {
            if ((*y)[t].get_den() != 1)
                throw Error("Internal", "generator has non-integral lattice coordinates");
            out_v[t] = (*y)[t].get_num();
        }
        return out_v;
    };
    std::vector<IntVec> gens_c;
    for (const IntVec& g : generators) gens_c.push_back(to_coords(g));

    ConeGenerators cgc = cone_from_generators(gens_c, r);
    std::vector<IntVec> gens_v, gens_rest;
    for (const IntVec& g : gens_c) {
        if (in_span(cgc.lineality, g, r)) gens_v.push_back(g);
        else gens_rest.push_back(g);
    }
    // lineality part must be a full group on the saturated sublattice it spans
    bool ok = true;
    if (!cgc.lineality.empty()) {
        ConeGenerators inner = cone_from_generators(gens_v, r);
        if (!inner.rays.empty() || inner.lineality.size() != cgc.lineality.size()) ok = false;
        else {
            Sublattice group_v(r, gens_v);
            Sublattice full_v = Sublattice(r, cgc.lineality).saturation();
            ok = (group_v == full_v);
        }
    }
    if (ok) {
        IntMat q = quotient_map(gens_v, r);
        if (q.rows() > 0) {
            std::vector<IntVec> images;
            for (const IntVec& g : gens_rest) images.push_back(q * g);
            ok = pointed_monoid_saturated(images, q.rows());
        }
    }
    out.saturated = ok;
    return out;
}

DelzantVerdict delzant_check(const RationalPolytope& Q, const Sublattice& lambda) {
    if (!Q.feasible()) throw Error("Infeasible", "empty polytope");
    if (!Q.bounded()) throw Error("Unbounded", "the Delzant test needs a compact polytope");
    size_t n = Q.dim();
    if (lambda.ambient_rank() != n) throw Error("BadShape", "lattice ambient rank mismatch");
    std::vector<IntVec> basis = lambda.basis();
    size_t r = basis.size();
    QMat B(n, r);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < n; ++i) B(i, j) = Rat(basis[j][i]);

    auto faces = Q.face_lattice();
    DelzantVerdict verdict;
    verdict.delzant = true;
    for (const Face& f : faces) {
        if (f.dim != 0) continue;
        DelzantCertificate cert;
        cert.vertex = f.sample;
        size_t vid = f.vertex_ids[0];
        std::vector<IntVec> dirs;
        bool in_lattice_span = true;
        for (const Face& e : faces) {
            if (e.dim != 1) continue;
            if (std::find(e.vertex_ids.begin(), e.vertex_ids.end(), vid) == e.vertex_ids.end())
                continue;
            size_t other = (e.vertex_ids[0] == vid) ? e.vertex_ids[1] : e.vertex_ids[0];
            RatVec d(n);
            for (size_t t = 0; t < n; ++t) d[t] = Q.vertices()[other][t] - f.sample[t];
            // primitive direction with respect to lambda
            auto y = solve_rational(B, d);
            if (!y) {
                in_lattice_span = false;
                continue;
            }
            dirs.push_back(primitive_direction(*y));
        }
        cert.edge_dirs = dirs;
        cert.simple = in_lattice_span && dirs.size() == r;
        if (cert.simple && r > 0) {
            IntMat E(r, r);
            for (size_t j = 0; j < r; ++j)
                for (size_t i = 0; i < r; ++i) E(i, j) = dirs[j][i];
            cert.det = E.det();
            cert.unimodular = (cert.det == 1 || cert.det == -1);
        } else {
            cert.det = 0;
            cert.unimodular = (r == 0 && in_lattice_span && dirs.empty());
        }
        verdict.delzant = verdict.delzant && cert.simple && cert.unimodular;
        verdict.certificates.push_back(std::move(cert));
    }
    return verdict;
}

DelzantVerdict delzant_check(const RationalPolytope& Q) {
    return delzant_check(Q, Sublattice::full(Q.dim()));
}

Su2Classification classify_su2(const Rat& x, const Rat& y, const Int& d) {
    if (x < 0 || y < x) throw Error("InvalidInput", "need 0 <= x <= y");
    Su2Classification out;
    out.x = x;
    out.y = y;
    out.d = d;
    if (x == y) {
        if (d != 0) throw Error("InvalidInput", "a point has no lattice scale; use d = 0");
        out.tag = Su2Case::Point;
        out.manifold = (x == 0) ? "point" : "P^1 (coadjoint orbit)";
        return out;
    }
    if (d <= 0) throw Error("InvalidInput", "an interval needs a positive lattice scale d");
    if (x == 0) {
        out.tag = Su2Case::WallInterval;
        if (d == 1) out.manifold = "P^2";
        else if (d == 2) out.manifold = "P^1 x P^1";
        else if (d == 4) out.manifold = "P(sl2)";
        else
            throw Error("InvalidPair",
                        "no multiplicity free manifold over [0,y] with d outside {1,2,4}");
        return out;
    }
    out.tag = Su2Case::InteriorInterval;
    out.manifold = "Hirzebruch surface of degree " + d.get_str();
    return out;
}

namespace {

// canonical fingerprint of a pointed cone in lattice coordinates
std::vector<IntVec> cone_fingerprint(const std::vector<IntVec>& gens) {
    std::vector<IntVec> out;
    for (const IntVec& g : gens) out.push_back(primitive_part(g));
    std::sort(out.begin(), out.end());
    return out;
}

MfFaceReport check_point(const MomentumData& data, const RootDatum& ambient,
                         const LocalOracleTable& oracle, const RatVec& v) {
    MfFaceReport rep;
    rep.point = v;
    LocalSubsystem sub = ambient_local_roots(ambient, v);
    TangentCone cone = data.Q.tangent_cone(v);
    size_t n = ambient.rank;

    std::vector<IntVec> basis = data.lambda0.basis();
    size_t r = basis.size();
    QMat B(n, r);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < n; ++i) B(i, j) = Rat(basis[j][i]);
    // cone generators in Lambda_0 coordinates, primitive there
    auto lambda_coords = [&](const IntVec& g) -> std::optional<IntVec> {
        if (r == 0) return std::nullopt;
        auto y = solve_rational(B, to_rat(g));
        if (!y) return std::nullopt;
        RatVec back = B * *y;
        for (size_t t = 0; t < n; ++t)
            if (back[t] != Rat(g[t])) return std::nullopt;
        return primitive_direction(*y);
    };

    if (sub.roots.empty()) {
        rep.local_type = "-";
        if (cone.lineality.size() == r && cone.generators.empty()) {
            rep.verdict = MfVerdict::MultiplicityFree;
            rep.reason = "interior point: tangent cone is the full space";
            return rep;
        }
        if (!cone.lineality.empty()) {
            rep.verdict = MfVerdict::Undecided;
            rep.reason = "trivial local type with a partially unbounded tangent cone";
            return rep;
        }
        // pointed: primitive generators must form a basis of Lambda_0
        std::vector<IntVec> dirs;
        for (const IntVec& g : cone.generators) {
            auto y = lambda_coords(g);
            if (!y) {
                rep.verdict = MfVerdict::NotMultiplicityFree;
                rep.reason = "tangent cone leaves the span of Lambda_0";
                return rep;
            }
            dirs.push_back(*y);
        }
        if (dirs.size() != r) {
            rep.verdict = MfVerdict::NotMultiplicityFree;
            rep.reason = "vertex is not simple relative to Lambda_0";
            return rep;
        }
        Int det = 1;
        if (r > 0) {
            IntMat E(r, r);
            for (size_t j = 0; j < r; ++j)
                for (size_t i = 0; i < r; ++i) E(i, j) = dirs[j][i];
            det = E.det();
        }
        if (det == 1 || det == -1) {
            rep.verdict = MfVerdict::MultiplicityFree;
            rep.reason = "tangent cone is spanned by a lattice basis";
        } else {
            rep.verdict = MfVerdict::NotMultiplicityFree;
            rep.reason = "edge determinant " + det.get_str();
        }
        return rep;
    }

    if (sub.roots.size() == 2) {
        rep.local_type = "A1";
        // built-in rank-one rows
        size_t pos_idx = sub.positive.empty() ? sub.roots[0] : sub.positive[0];
        const IntVec& alpha_v = ambient.coroots[pos_idx];
        if (cone.generators.empty() && cone.lineality.empty() && r == 0) {
            rep.verdict = MfVerdict::MultiplicityFree;
            rep.reason = "zero cone with trivial lattice: coadjoint orbit";
            return rep;
        }
        if (cone.generators.size() == 1 && cone.lineality.empty() && r == 1) {
            auto y = lambda_coords(cone.generators[0]);
            if (y) {
                // primitive lattice generator along the ray
                IntVec g(n, Int(0));
                for (size_t i = 0; i < n; ++i) g[i] += basis[0][i] * (*y)[0];
                Rat d = dot(to_rat(g), alpha_v);
                if (d < 0) d = -d;
                if (d.get_den() == 1 && (d == 1 || d == 2 || d == 4)) {
                    rep.verdict = MfVerdict::MultiplicityFree;
                    rep.reason = "rank-one wall row d = " + rat_to_string(d);
                } else {
                    rep.verdict = MfVerdict::NotMultiplicityFree;
                    rep.reason = "rank-one wall row rejects d = " + rat_to_string(d) +
                                 " (admissible: 1, 2, 4)";
                }
                return rep;
            }
        }
        // anything else falls through to the oracle
    } else {
        IntMat C(sub.simples.size(), sub.simples.size());
        for (size_t i = 0; i < sub.simples.size(); ++i)
            for (size_t j = 0; j < sub.simples.size(); ++j)
                C(i, j) = dot(ambient.roots[sub.simples[i]], ambient.coroots[sub.simples[j]]);
        rep.local_type = recognize_finite_type(C);
    }

    // oracle lookup on (type, lattice divisors, cone fingerprint)
    std::vector<IntVec> fp;
    bool fp_ok = true;
    for (const IntVec& g : cone.generators) {
        auto y = lambda_coords(g);
        if (!y) {
            fp_ok = false;
            break;
        }
        fp.push_back(*y);
    }
    if (fp_ok && cone.lineality.empty()) {
        std::vector<IntVec> fingerprint = cone_fingerprint(fp);
        // pairing divisors of the cone generators against the local simple coroots
        std::vector<Int> divisors;
        if (!sub.simples.empty() && !fp.empty()) {
            IntMat Pm(fp.size(), sub.simples.size());
            for (size_t i = 0; i < fp.size(); ++i) {
                IntVec g(n, Int(0));
                for (size_t bj = 0; bj < r; ++bj)
                    for (size_t t = 0; t < n; ++t) g[t] += basis[bj][t] * fp[i][bj];
                for (size_t j = 0; j < sub.simples.size(); ++j)
                    Pm(i, j) = dot(g, ambient.coroots[sub.simples[j]]);
            }
            for (const Int& d : smith_normal_form(Pm).diagonal())
                if (d != 0) divisors.push_back(d);
        }
        for (const OracleRow& row : oracle.rows) {
            if (row.local_type != rep.local_type) continue;
            if (!row.lattice_divisors.empty() && row.lattice_divisors != divisors) continue;
            bool admissible = false;
            for (const auto& cone_spec : row.admissible_cones)
                if (cone_fingerprint(cone_spec) == fingerprint) admissible = true;
            rep.verdict = admissible ? MfVerdict::MultiplicityFree
                                     : MfVerdict::NotMultiplicityFree;
            rep.reason = admissible ? "oracle row admits this tangent cone"
                                    : "oracle row excludes this tangent cone";
            return rep;
        }
    }
    rep.verdict = MfVerdict::Undecided;
    rep.reason = "no oracle row for local type " + rep.local_type;
    return rep;
}

}  // namespace

MfResult mf_check(const MomentumData& data, const RootDatum& ambient,
                  const LocalOracleTable& oracle, bool vertices_only,
                  const std::vector<RatVec>& explicit_points) {
    std::vector<IntVec> pos_coroots;
    for (size_t i : ambient.positive) pos_coroots.push_back(ambient.coroots[i]);
    if (!chamber_containment(data.Q, pos_coroots))
        throw Error("NotInChamber", "momentum image leaves the dominant chamber");

    std::vector<RatVec> points;
    if (!explicit_points.empty()) {
        points = explicit_points;
    } else if (data.Q.bounded() && vertices_only) {
        points = data.Q.vertices();
    } else if (vertices_only && !data.Q.bounded()) {
        throw Error("NeedFaceList",
                    "unbounded momentum image: supply explicit face points to check");
    } else {
        for (const Face& f : data.Q.face_lattice()) points.push_back(f.sample);
    }

    MfResult out;
    out.verdict = MfVerdict::MultiplicityFree;
    for (const RatVec& v : points) {
        MfFaceReport rep = check_point(data, ambient, oracle, v);
        if (rep.verdict == MfVerdict::NotMultiplicityFree)
            out.verdict = MfVerdict::NotMultiplicityFree;
        else if (rep.verdict == MfVerdict::Undecided &&
                 out.verdict == MfVerdict::MultiplicityFree)
            out.verdict = MfVerdict::Undecided;
        out.faces.push_back(std::move(rep));
    }
    return out;
}

}  // namespace polyweyl
