#include "polyweyl/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyweyl {

bool Inequality::operator<(const Inequality& o) const {
    if (normal != o.normal) {
        return std::lexicographical_compare(normal.begin(), normal.end(), o.normal.begin(),
                                            o.normal.end());
    }
    return offset < o.offset;
}

namespace {

struct DDRay {
    IntVec v;
    std::set<size_t> tight;  // processed constraint indices held with equality
};

Int eval(const IntVec& c, const IntVec& x) { return dot(c, x); }

}  // namespace

ConeGenerators double_description(const std::vector<IntVec>& constraints, size_t dim) {
    std::vector<IntVec> lin;
    for (size_t i = 0; i < dim; ++i) {
        IntVec e(dim, Int(0));
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<DDRay> rays;

    for (size_t k = 0; k < constraints.size(); ++k) {
        const IntVec& a = constraints[k];
        if (a.size() != dim) throw Error("BadShape", "constraint of wrong dimension");

        // reduce the lineality space first
        size_t l0 = lin.size();
        for (size_t i = 0; i < lin.size(); ++i)
            if (eval(a, lin[i]) != 0) {
                l0 = i;
                break;
            }
        if (l0 < lin.size()) {
            IntVec pivot = lin[l0];
            if (eval(a, pivot) < 0) pivot = negate(pivot);
            Int ap = eval(a, pivot);
            std::vector<IntVec> new_lin;
            for (size_t i = 0; i < lin.size(); ++i) {
                if (i == l0) continue;
                Int ai = eval(a, lin[i]);
                IntVec w(dim);
                for (size_t t = 0; t < dim; ++t) w[t] = ap * lin[i][t] - ai * pivot[t];
                new_lin.push_back(primitive_part(w));
            }
            lin = std::move(new_lin);
            std::set<size_t> all_processed;
            for (size_t j = 0; j < k; ++j) all_processed.insert(j);
            for (DDRay& r : rays) {
                Int ar = eval(a, r.v);
                if (ar != 0) {
                    IntVec w(dim);
                    for (size_t t = 0; t < dim; ++t) w[t] = ap * r.v[t] - ar * pivot[t];
                    r.v = primitive_part(w);
                }
                r.tight.insert(k);
            }
            DDRay pr{pivot, all_processed};
            rays.push_back(std::move(pr));
            continue;
        }

        // partition rays by the sign of the new constraint
        std::vector<DDRay> pos, zero, neg;
        for (DDRay& r : rays) {
            int s = sgn(eval(a, r.v));
            if (s > 0) pos.push_back(std::move(r));
            else if (s == 0) {
                r.tight.insert(k);
                zero.push_back(std::move(r));
            } else neg.push_back(std::move(r));
        }

        size_t needed = dim - lin.size() >= 2 ? dim - lin.size() - 2 : static_cast<size_t>(-1);
        std::vector<DDRay> created;
        for (const DDRay& rp : pos)
            for (const DDRay& rn : neg) {
                // algebraic adjacency: common tight constraints span rank dim-lin-2
                std::vector<size_t> common;
                std::set_intersection(rp.tight.begin(), rp.tight.end(), rn.tight.begin(),
                                      rn.tight.end(), std::back_inserter(common));
                if (needed == static_cast<size_t>(-1)) continue;
                std::vector<IntVec> normals;
                normals.reserve(common.size());
                for (size_t j : common) normals.push_back(constraints[j]);
                if (rank_of(normals, dim) != needed) continue;
                Int cp = eval(a, rp.v), cn = eval(a, rn.v);
                IntVec w(dim);
                for (size_t t = 0; t < dim; ++t) w[t] = cp * rn.v[t] - cn * rp.v[t];
                w = primitive_part(w);
                if (is_zero(w)) continue;
                DDRay nr;
                nr.v = std::move(w);
                nr.tight = std::set<size_t>(common.begin(), common.end());
                nr.tight.insert(k);
                created.push_back(std::move(nr));
            }

        rays.clear();
        std::set<IntVec> seen;
        auto push = [&](DDRay&& r) {
            if (seen.insert(r.v).second) rays.push_back(std::move(r));
        };
        for (DDRay& r : pos) push(std::move(r));
        for (DDRay& r : zero) push(std::move(r));
        for (DDRay& r : created) push(std::move(r));
    }

    ConeGenerators out;
    for (DDRay& r : rays) out.rays.push_back(std::move(r.v));
    out.lineality = std::move(lin);
    std::sort(out.rays.begin(), out.rays.end());
    std::sort(out.lineality.begin(), out.lineality.end());
    return out;
}

namespace {

// Homogenized integer constraint (normal, -offset) * denominator
IntVec homogenize(const Inequality& q, size_t dim) {
    Int den = q.offset.get_den();
    IntVec c(dim + 1);
    for (size_t t = 0; t < dim; ++t) c[t] = q.normal[t] * den;
    c[dim] = -q.offset.get_num();
    return c;
}

std::optional<Inequality> normalize_ineq(const IntVec& normal, const Rat& offset,
                                         bool& infeasible_flag) {
    IntVec n = primitive_part(normal);
    if (is_zero(n)) {
        if (offset > 0) infeasible_flag = true;
        return std::nullopt;  // 0 >= c is vacuous or infeasible, never a facet
    }
    Int g = content(normal);
    return Inequality{n, offset / Rat(g)};
}

}  // namespace

RationalPolytope::RationalPolytope(size_t dim, std::vector<Inequality> inequalities)
    : dim_(dim) {
    bool trivially_infeasible = false;
    std::map<IntVec, Rat> tightest;
    for (const Inequality& q : inequalities) {
        if (q.normal.size() != dim) throw Error("BadShape", "inequality of wrong dimension");
        auto norm = normalize_ineq(q.normal, q.offset, trivially_infeasible);
        if (!norm) continue;
        auto it = tightest.find(norm->normal);
        if (it == tightest.end()) tightest.emplace(norm->normal, norm->offset);
        else it->second = std::max(it->second, norm->offset);
    }
    std::vector<Inequality> work;
    for (const auto& [n, c] : tightest) work.push_back({n, c});

    if (trivially_infeasible) {
        feasible_ = false;
        ineqs_ = std::move(work);
        return;
    }

    std::vector<IntVec> constraints;
    for (const Inequality& q : work) constraints.push_back(homogenize(q, dim));
    IntVec tpos(dim + 1, Int(0));
    tpos[dim] = 1;
    constraints.push_back(tpos);

    ConeGenerators gen = double_description(constraints, dim + 1);

    feasible_ = false;
    for (const IntVec& r : gen.rays) {
        if (r[dim] > 0) {
            feasible_ = true;
            RatVec p(dim);
            for (size_t t = 0; t < dim; ++t) p[t] = Rat(r[t]) / Rat(r[dim]);
            points_.push_back(p);
        } else if (r[dim] == 0) {
            IntVec d(r.begin(), r.begin() + dim);
            rays_.push_back(primitive_part(d));
        } else {
            throw Error("Internal", "homogenized ray with negative last coordinate");
        }
    }
    for (const IntVec& l : gen.lineality) {
        IntVec d(l.begin(), l.begin() + dim);
        lineality_.push_back(primitive_part(d));
    }
    std::sort(points_.begin(), points_.end());
    std::sort(rays_.begin(), rays_.end());
    std::sort(lineality_.begin(), lineality_.end());

    if (!feasible_) {
        ineqs_ = std::move(work);
        points_.clear();
        rays_.clear();
        lineality_.clear();
        return;
    }

    // keep facets and implicit equalities, drop redundant inequalities
    std::vector<RatVec> all_gens;
    for (const IntVec& r : gen.rays) all_gens.push_back(to_rat(r));
    for (const IntVec& l : gen.lineality) all_gens.push_back(to_rat(l));
    size_t cone_dim = rank_of(all_gens, dim + 1);
    for (size_t i = 0; i < work.size(); ++i) {
        IntVec c = homogenize(work[i], dim);
        std::vector<RatVec> tight;
        for (const IntVec& l : gen.lineality) tight.push_back(to_rat(l));
        for (const IntVec& r : gen.rays)
            if (dot(c, r) == 0) tight.push_back(to_rat(r));
        size_t face_rank = rank_of(tight, dim + 1);
        if (face_rank + 1 >= cone_dim) ineqs_.push_back(work[i]);
    }
    std::sort(ineqs_.begin(), ineqs_.end());
}

RationalPolytope RationalPolytope::from_vertices(size_t dim, const std::vector<RatVec>& verts) {
    if (verts.empty()) throw Error("Infeasible", "no vertices given");
    // facet enumeration: dual double description on homogenized points
    std::vector<IntVec> constraints;
    for (const RatVec& v : verts) {
        RatVec h = v;
        h.push_back(1);
        constraints.push_back(primitive_direction(h));
    }
    ConeGenerators dual = double_description(constraints, dim + 1);
    std::vector<Inequality> ineqs;
    auto add = [&](const IntVec& c, int sign) {
        IntVec n(dim);
        for (size_t t = 0; t < dim; ++t) n[t] = sign * c[t];
        if (is_zero(n)) return;
        ineqs.push_back({n, Rat(-sign * c[dim])});
    };
    for (const IntVec& c : dual.rays) add(c, 1);
    for (const IntVec& c : dual.lineality) {
        add(c, 1);
        add(c, -1);
    }
    return RationalPolytope(dim, std::move(ineqs));
}

int RationalPolytope::affine_dim() const {
    if (!feasible_) return -1;
    std::vector<RatVec> dirs;
    for (size_t i = 1; i < points_.size(); ++i) {
        RatVec d(dim_);
        for (size_t t = 0; t < dim_; ++t) d[t] = points_[i][t] - points_[0][t];
        dirs.push_back(d);
    }
    for (const IntVec& r : rays_) dirs.push_back(to_rat(r));
    for (const IntVec& l : lineality_) dirs.push_back(to_rat(l));
    return static_cast<int>(rank_of(dirs, dim_));
}

bool RationalPolytope::contains(const RatVec& x) const {
    if (x.size() != dim_) throw Error("BadShape", "point of wrong dimension");
    if (!feasible_) return false;
    for (const Inequality& q : ineqs_)
        if (dot(x, q.normal) < q.offset) return false;
    return true;
}

std::vector<Face> RationalPolytope::face_lattice() const {
    if (!feasible_) throw Error("Infeasible", "face lattice of an empty polytope");
    if (!bounded()) throw Error("Unbounded", "face lattice requires a bounded polytope");

    std::set<std::vector<size_t>> vertex_sets;
    std::vector<size_t> all(points_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    vertex_sets.insert(all);
    for (const Inequality& q : ineqs_) {
        std::vector<size_t> tight;
        for (size_t i = 0; i < points_.size(); ++i)
            if (dot(points_[i], q.normal) == q.offset) tight.push_back(i);
        if (!tight.empty()) vertex_sets.insert(tight);
    }
    // closure under intersection
    for (;;) {
        std::set<std::vector<size_t>> next = vertex_sets;
        for (const auto& s1 : vertex_sets)
            for (const auto& s2 : vertex_sets) {
                std::vector<size_t> inter;
                std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                                      std::back_inserter(inter));
                if (!inter.empty()) next.insert(inter);
            }
        if (next.size() == vertex_sets.size()) break;
        vertex_sets = std::move(next);
    }

    std::vector<Face> faces;
    for (const auto& vs : vertex_sets) {
        Face f;
        f.vertex_ids = vs;
        f.sample.assign(dim_, Rat(0));
        for (size_t id : vs)
            for (size_t t = 0; t < dim_; ++t) f.sample[t] += points_[id][t];
        for (size_t t = 0; t < dim_; ++t) f.sample[t] /= Rat(static_cast<long>(vs.size()));
        std::vector<RatVec> dirs;
        for (size_t i = 1; i < vs.size(); ++i) {
            RatVec d(dim_);
            for (size_t t = 0; t < dim_; ++t) d[t] = points_[vs[i]][t] - points_[vs[0]][t];
            dirs.push_back(d);
        }
        f.dim = rank_of(dirs, dim_);
        for (size_t i = 0; i < ineqs_.size(); ++i) {
            bool tight = true;
            for (size_t id : vs)
                if (dot(points_[id], ineqs_[i].normal) != ineqs_[i].offset) {
                    tight = false;
                    break;
                }
            if (tight) f.tight.push_back(i);
        }
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_ids < b.vertex_ids;
    });
    return faces;
}

TangentCone RationalPolytope::tangent_cone(const RatVec& a) const {
    if (!contains(a)) throw Error("PointOutside", "tangent cone apex not in the polytope");
    std::vector<IntVec> tight_normals;
    for (const Inequality& q : ineqs_)
        if (dot(a, q.normal) == q.offset) tight_normals.push_back(q.normal);
    ConeGenerators gen = double_description(tight_normals, dim_);
    TangentCone c;
    c.apex = a;
    c.generators = std::move(gen.rays);
    c.lineality = std::move(gen.lineality);
    return c;
}

RationalPolytope::Extremum RationalPolytope::minimize(const IntVec& functional) const {
    Extremum e;
    if (!feasible_) return e;
    for (const IntVec& l : lineality_)
        if (dot(functional, l) != 0) return e;  // unbounded below
    for (const IntVec& r : rays_)
        if (dot(functional, r) < 0) return e;
    bool first = true;
    for (const RatVec& p : points_) {
        Rat v = dot(p, functional);
        if (first || v < e.value) {
            e.value = v;
            e.where = p;
            first = false;
        }
    }
    e.finite = !first;
    return e;
}

RationalPolytope::Extremum RationalPolytope::maximize(const IntVec& functional) const {
    Extremum e = minimize(negate(functional));
    if (e.finite) e.value = -e.value;
    return e;
}

RationalPolytope RationalPolytope::intersect(const std::vector<Inequality>& extra) const {
    std::vector<Inequality> all = ineqs_;
    all.insert(all.end(), extra.begin(), extra.end());
    return RationalPolytope(dim_, std::move(all));
}

RationalPolytope RationalPolytope::transform(const QMat& M) const {
    // image { M x : x in P }: constraint n.x >= c becomes (M^-T n) . y >= c
    QMat Minv = M.inverse();
    std::vector<Inequality> out;
    for (const Inequality& q : ineqs_) {
        RatVec n(dim_, Rat(0));
        for (size_t j = 0; j < dim_; ++j)
            for (size_t i = 0; i < dim_; ++i) n[j] += Rat(q.normal[i]) * Minv(i, j);
        // scale to primitive integer normal
        IntVec ni = primitive_direction(n);
        // find the positive scale factor applied
        Rat scale;
        for (size_t t = 0; t < dim_; ++t)
            if (n[t] != 0) {
                scale = Rat(ni[t]) / n[t];
                break;
            }
        out.push_back({ni, q.offset * scale});
    }
    return RationalPolytope(dim_, std::move(out));
}

HyperplaneMeet hyperplane_meets(const RationalPolytope& P, const IntVec& coroot) {
    HyperplaneMeet out;
    if (is_zero(coroot)) throw Error("ZeroCoroot", "hyperplane of the zero functional");
    if (!P.feasible()) return out;

    for (const RatVec& p : P.vertices())
        if (dot(p, coroot) == 0) {
            out.meets = true;
            out.witness = p;
            return out;
        }

    // exact crossing between points of opposite sign, or along a ray / lineality
    const RatVec* vpos = nullptr;
    const RatVec* vneg = nullptr;
    for (const RatVec& p : P.vertices()) {
        if (dot(p, coroot) > 0) vpos = &p;
        else vneg = &p;
    }
    if (vpos && vneg) {
        Rat a = dot(*vpos, coroot), b = dot(*vneg, coroot);
        Rat t = a / (a - b);  // in (0,1); crossing of the segment
        out.meets = true;
        out.witness.assign(P.dim(), Rat(0));
        for (size_t i = 0; i < P.dim(); ++i)
            out.witness[i] = (*vpos)[i] + t * ((*vneg)[i] - (*vpos)[i]);
        return out;
    }
    const RatVec& base = P.vertices().front();
    Rat v0 = dot(base, coroot);
    auto walk = [&](const IntVec& dir) -> bool {
        Rat d = dot(to_rat(dir), coroot);
        if (d == 0) return false;
        Rat t = -v0 / d;
        if (t < 0) return false;
        out.meets = true;
        out.witness.assign(P.dim(), Rat(0));
        for (size_t i = 0; i < P.dim(); ++i) out.witness[i] = base[i] + t * Rat(dir[i]);
        return true;
    };
    for (const IntVec& r : P.recession_rays())
        if (walk(r)) return out;
    for (const IntVec& l : P.lineality()) {
        if (walk(l)) return out;
        if (walk(negate(l))) return out;
    }
    return out;
}

bool chamber_containment(const RationalPolytope& P, const std::vector<IntVec>& pos_coroots) {
    if (!P.feasible()) return true;
    for (const IntVec& cv : pos_coroots) {
        for (const RatVec& p : P.vertices())
            if (dot(p, cv) < 0) return false;
        for (const IntVec& r : P.recession_rays())
            if (dot(cv, r) < 0) return false;
        for (const IntVec& l : P.lineality())
            if (dot(cv, l) != 0) return false;
    }
    return true;
}

RationalPolytope cut_corner(const RationalPolytope& P, const RatVec& v, const Rat& eps) {
    if (eps <= 0) throw Error("EpsilonTooLarge", "cut size must be positive");
    if (!P.bounded()) throw Error("Unbounded", "corner cutting needs a bounded polytope");
    if (!P.contains(v)) throw Error("PointOutside", "cut point not in the polytope");
    bool is_vertex = false;
    for (const RatVec& p : P.vertices()) is_vertex |= (p == v);
    if (!is_vertex) throw Error("NotVertex", "cut point is not a vertex");

    TangentCone cone = P.tangent_cone(v);
    size_t n = P.dim();
    if (!cone.lineality.empty() || cone.generators.size() != n)
        throw Error("NotSimplicial", "tangent cone at the vertex is not simplicial");
    if (rank_of(cone.generators, n) != n)
        throw Error("NotSimplicial", "tangent cone generators are dependent");
    // w with E^T w = (1,...,1): the new inequality reads w.(x - v) >= eps
    QMat Et(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Et(i, j) = Rat(cone.generators[i][j]);
    auto w = solve_rational(Et, RatVec(n, Rat(1)));
    if (!w) throw Error("NotSimplicial", "dual coordinates do not exist");

    Rat base = dot(*w, v);
    for (const RatVec& u : P.vertices()) {
        if (u == v) continue;
        if (dot(*w, u) <= base + eps)
            throw Error("EpsilonTooLarge", "new facet meets a face not incident to the vertex");
    }
    IntVec wi = primitive_direction(*w);
    Rat scale;
    for (size_t t = 0; t < n; ++t)
        if ((*w)[t] != 0) {
            scale = Rat(wi[t]) / (*w)[t];
            break;
        }
    return P.intersect({Inequality{wi, (base + eps) * scale}});
}

Inequality make_ineq(const std::vector<long>& normal, const Rat& offset) {
    IntVec n(normal.size());
    for (size_t i = 0; i < normal.size(); ++i) n[i] = normal[i];
    return Inequality{n, offset};
}

RationalPolytope box_polytope(const RatVec& lo, const RatVec& hi) {
    size_t n = lo.size();
    std::vector<Inequality> qs;
    for (size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        qs.push_back({e, lo[i]});
        qs.push_back({negate(e), -hi[i]});
    }
    return RationalPolytope(n, std::move(qs));
}

}  // namespace polyweyl
