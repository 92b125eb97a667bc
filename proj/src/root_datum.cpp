#include "polyweyl/root_datum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyweyl {

IntMat RootDatum::reflection(size_t i) const {
    IntMat s = IntMat::identity(rank);
    const IntVec& a = roots[i];
    const IntVec& av = coroots[i];
    for (size_t r = 0; r < rank; ++r)
        for (size_t c = 0; c < rank; ++c) s(r, c) -= a[r] * av[c];
    return s;
}

size_t RootDatum::negative_of(size_t i) const {
    IntVec neg = negate(roots[i]);
    for (size_t j = 0; j < roots.size(); ++j)
        if (roots[j] == neg) return j;
    throw Error("InvalidDatum", "root set not symmetric");
}

std::vector<size_t> RootDatum::simple_indices() const {
    std::vector<size_t> simple;
    for (size_t i : positive) {
        bool is_sum = false;
        for (size_t j : positive) {
            if (is_sum) break;
            for (size_t k : positive) {
                IntVec s(rank);
                for (size_t t = 0; t < rank; ++t) s[t] = roots[j][t] + roots[k][t];
                if (s == roots[i]) {
                    is_sum = true;
                    break;
                }
            }
        }
        if (!is_sum) simple.push_back(i);
    }
    return simple;
}

Sublattice RootDatum::root_lattice() const {
    return Sublattice(rank, roots);
}

void RootDatum::validate() const {
    if (roots.size() != coroots.size())
        throw Error("InvalidDatum", "roots and coroots not parallel");
    for (size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].size() != rank || coroots[i].size() != rank)
            throw Error("InvalidDatum", "root of wrong rank");
        if (dot(roots[i], coroots[i]) != 2)
            throw Error("InvalidDatum", "<alpha, alpha^vee> != 2");
    }
    // reduced: alpha in Delta => 2 alpha not in Delta
    std::set<IntVec> root_set(roots.begin(), roots.end());
    for (const IntVec& a : roots) {
        IntVec twice(rank);
        for (size_t t = 0; t < rank; ++t) twice[t] = 2 * a[t];
        if (root_set.count(twice)) throw Error("InvalidDatum", "datum not reduced");
    }
    // Delta = Delta+ disjoint-union -Delta+
    std::set<size_t> pos(positive.begin(), positive.end());
    if (2 * pos.size() != roots.size())
        throw Error("InvalidDatum", "positive system has wrong size");
    for (size_t i : pos) {
        size_t n = negative_of(i);
        if (pos.count(n)) throw Error("InvalidDatum", "positive system contains a pair +-alpha");
    }
    // reflections permute Delta and Delta^vee compatibly
    for (size_t i = 0; i < roots.size(); ++i) {
        IntMat s = reflection(i);
        IntMat sv = s.transpose();  // dual reflection on Lambda^vee
        for (size_t j = 0; j < roots.size(); ++j) {
            IntVec rb = s * roots[j];
            bool ok = false;
            for (size_t k = 0; k < roots.size(); ++k)
                if (roots[k] == rb && coroots[k] == sv * coroots[j]) {
                    ok = true;
                    break;
                }
            if (!ok) throw Error("InvalidDatum", "reflection does not permute the datum");
        }
    }
}

RootDatum datum_from_simples(size_t rank, const std::vector<IntVec>& simple_roots,
                             const std::vector<IntVec>& simple_coroots) {
    if (simple_roots.size() != simple_coroots.size())
        throw Error("InvalidDatum", "simple roots and coroots not parallel");
    RootDatum d;
    d.rank = rank;
    std::set<std::pair<IntVec, IntVec>> seen;
    std::vector<std::pair<IntVec, IntVec>> queue;
    for (size_t i = 0; i < simple_roots.size(); ++i) {
        auto p = std::make_pair(simple_roots[i], simple_coroots[i]);
        auto n = std::make_pair(negate(simple_roots[i]), negate(simple_coroots[i]));
        if (seen.insert(p).second) queue.push_back(p);
        if (seen.insert(n).second) queue.push_back(n);
    }
    // orbit of the simples under their own reflections
    for (size_t head = 0; head < queue.size(); ++head) {
        auto [beta, betav] = queue[head];
        for (size_t i = 0; i < simple_roots.size(); ++i) {
            const IntVec& a = simple_roots[i];
            const IntVec& av = simple_coroots[i];
            Int c = dot(beta, av);
            Int cv = dot(a, betav);
            IntVec rb(rank), rbv(rank);
            for (size_t t = 0; t < rank; ++t) {
                rb[t] = beta[t] - c * a[t];
                rbv[t] = betav[t] - cv * av[t];
            }
            auto p = std::make_pair(rb, rbv);
            if (seen.insert(p).second) queue.push_back(p);
            if (queue.size() > 100000) throw Error("GuardExceeded", "root closure too large");
        }
    }
    std::sort(queue.begin(), queue.end());
    // positivity: nonnegative rational coordinates in the simple basis
    std::vector<RatVec> basis_rows;
    for (const auto& s : simple_roots) basis_rows.push_back(to_rat(s));
    QMat B(rank, simple_roots.size());
    for (size_t j = 0; j < simple_roots.size(); ++j)
        for (size_t i = 0; i < rank; ++i) B(i, j) = Rat(simple_roots[j][i]);
    for (const auto& [r, cv] : queue) {
        d.roots.push_back(r);
        d.coroots.push_back(cv);
    }
    for (size_t i = 0; i < d.roots.size(); ++i) {
        auto x = solve_rational(B, to_rat(d.roots[i]));
        if (!x) throw Error("InvalidDatum", "generated root outside simple span");
        bool nonneg = true;
        for (const Rat& c : *x)
            if (c < 0) nonneg = false;
        if (nonneg) d.positive.push_back(i);
    }
    return d;
}

RootDatum datum_sl2() {
    return datum_from_simples(1, {{Int(2)}}, {{Int(1)}});
}

RootDatum datum_pgl2() {
    return datum_from_simples(1, {{Int(1)}}, {{Int(2)}});
}

namespace {

IntVec unit(size_t n, size_t i, long v = 1) {
    IntVec e(n, Int(0));
    e[i] = v;
    return e;
}

// Simple roots e_i in root-lattice coordinates; coroots are Cartan columns.
RootDatum datum_from_cartan(const IntMat& C) {
    size_t n = C.rows();
    std::vector<IntVec> roots, coroots;
    for (size_t i = 0; i < n; ++i) {
        roots.push_back(unit(n, i));
        coroots.push_back(C.col(i));
    }
    return datum_from_simples(n, roots, coroots);
}

}  // namespace

RootDatum datum_a(size_t n) {
    IntMat C(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            C(i, j) = (i == j) ? 2 : ((i + 1 == j || j + 1 == i) ? -1 : 0);
    return datum_from_cartan(C);
}

RootDatum datum_bn_epsilon(size_t n) {
    // simple roots e_1-e_2, ..., e_{n-1}-e_n, e_n; short coroots doubled
    std::vector<IntVec> roots, coroots;
    for (size_t i = 0; i + 1 < n; ++i) {
        IntVec r(n, Int(0));
        r[i] = 1;
        r[i + 1] = -1;
        roots.push_back(r);
        coroots.push_back(r);
    }
    roots.push_back(unit(n, n - 1));
    coroots.push_back(unit(n, n - 1, 2));
    return datum_from_simples(n, roots, coroots);
}

RootDatum datum_cn_epsilon(size_t n) {
    std::vector<IntVec> roots, coroots;
    for (size_t i = 0; i + 1 < n; ++i) {
        IntVec r(n, Int(0));
        r[i] = 1;
        r[i + 1] = -1;
        roots.push_back(r);
        coroots.push_back(r);
    }
    roots.push_back(unit(n, n - 1, 2));
    coroots.push_back(unit(n, n - 1, 1));
    return datum_from_simples(n, roots, coroots);
}

RootDatum datum_g2() {
    IntMat C{{2, -1}, {-3, 2}};
    return datum_from_cartan(C);
}

RootDatum datum_a1xa1() {
    return datum_from_simples(2, {unit(2, 0, 2), unit(2, 1, 2)},
                              {unit(2, 0, 1), unit(2, 1, 1)});
}

bool WeylGroup::contains(const IntMat& m) const {
    return std::binary_search(elements.begin(), elements.end(), m);
}

std::vector<IntMat> WeylGroup::stabilizer(const RatVec& a) const {
    std::vector<IntMat> out;
    for (const IntMat& m : elements) {
        bool fixes = true;
        for (size_t i = 0; i < dim && fixes; ++i) {
            Rat v = 0;
            for (size_t j = 0; j < dim; ++j) v += Rat(m(i, j)) * a[j];
            if (v != a[i]) fixes = false;
        }
        if (fixes) out.push_back(m);
    }
    return out;
}

std::vector<IntMat> subgroup_closure(const std::vector<IntMat>& gens, size_t dim,
                                     size_t guard) {
    std::set<IntMat> seen;
    std::vector<IntMat> queue;
    IntMat id = IntMat::identity(dim);
    seen.insert(id);
    queue.push_back(id);
    for (size_t head = 0; head < queue.size(); ++head) {
        for (const IntMat& g : gens) {
            IntMat p = queue[head] * g;
            if (seen.insert(p).second) {
                queue.push_back(p);
                if (queue.size() > guard)
                    throw Error("GuardExceeded", "group closure exceeds the guard");
            }
        }
    }
    std::vector<IntMat> out(seen.begin(), seen.end());
    return out;
}

WeylGroup enumerate_weyl(const std::vector<IntMat>& generators, size_t dim, size_t guard) {
    for (const IntMat& g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            throw Error("BadShape", "generator of wrong size");
        if (!(g * g).is_identity())
            throw Error("InvalidDatum", "generator is not an involution");
    }
    WeylGroup w;
    w.dim = dim;
    w.generators = generators;
    w.elements = subgroup_closure(generators, dim, guard);
    return w;
}

IntMat cartan_matrix(const RootDatum& datum, const std::vector<size_t>& subset) {
    if (subset.empty()) throw Error("EmptySubset", "cartan_matrix needs a non-empty subset");
    IntMat C(subset.size(), subset.size());
    for (size_t i = 0; i < subset.size(); ++i)
        for (size_t j = 0; j < subset.size(); ++j)
            C(i, j) = dot(datum.roots[subset[i]], datum.coroots[subset[j]]);
    return C;
}

namespace {

struct Component {
    std::vector<size_t> nodes;
};

std::vector<Component> diagram_components(const IntMat& C) {
    size_t n = C.rows();
    std::vector<int> comp(n, -1);
    std::vector<Component> out;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        Component c;
        std::vector<size_t> stack{i};
        comp[i] = static_cast<int>(out.size());
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            c.nodes.push_back(v);
            for (size_t u = 0; u < n; ++u)
                if (u != v && C(v, u) != 0 && comp[u] < 0) {
                    comp[u] = static_cast<int>(out.size());
                    stack.push_back(u);
                }
        }
        std::sort(c.nodes.begin(), c.nodes.end());
        out.push_back(c);
    }
    return out;
}

struct TypeLabel {
    char letter;
    size_t rank;
};

// Classify one connected GCM component or throw SingularOrAffine.
TypeLabel classify_component(const IntMat& C, const std::vector<size_t>& nodes) {
    size_t n = nodes.size();
    auto entry = [&](size_t a, size_t b) { return C(nodes[a], nodes[b]); };
    if (n == 1) return {'A', 1};

    // edge list with multiplicities m = C_ij * C_ji
    struct Edge {
        size_t a, b;
        Int m;
        bool a_to_short;  // C(a,b) = -m means the b end is short
    };
    std::vector<Edge> edges;
    std::vector<size_t> degree(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Int cij = entry(i, j), cji = entry(j, i);
            if (cij == 0) continue;
            Int m = cij * cji;
            if (m > 3) throw Error("SingularOrAffine", "edge weight exceeds 3");
            edges.push_back({i, j, m, cij <= cji});
            ++degree[i];
            ++degree[j];
        }
    if (edges.size() != n - 1) throw Error("SingularOrAffine", "diagram contains a cycle");

    size_t max_degree = *std::max_element(degree.begin(), degree.end());
    size_t num_double = 0, num_triple = 0;
    for (const Edge& e : edges) {
        if (e.m == 2) ++num_double;
        if (e.m == 3) ++num_triple;
    }

    if (num_triple > 0) {
        if (n == 2 && num_triple == 1) return {'G', 2};
        throw Error("SingularOrAffine", "triple edge in a diagram of rank > 2");
    }

    if (num_double > 1) throw Error("SingularOrAffine", "more than one double edge");

    if (num_double == 1) {
        if (max_degree > 2) throw Error("SingularOrAffine", "double edge with branching");
        // a path; locate the double edge
        const Edge& d = *std::find_if(edges.begin(), edges.end(),
                                      [](const Edge& e) { return e.m == 2; });
        if (n == 2) return {'B', 2};
        bool a_end = degree[d.a] == 1, b_end = degree[d.b] == 1;
        if (!a_end && !b_end) {
            if (n == 4) return {'F', 4};
            throw Error("SingularOrAffine", "interior double edge outside F4");
        }
        // terminal node of the double edge; short end determines B vs C.
        // C(i, j) = <alpha_i, alpha_j^vee> = -2 marks alpha_j as the short root.
        size_t terminal = a_end ? d.a : d.b;
        size_t other = a_end ? d.b : d.a;
        bool terminal_short = entry(other, terminal) == -2;
        return {terminal_short ? 'B' : 'C', n};
    }

    // single-laced tree
    if (max_degree <= 2) return {'A', n};
    size_t branch_count = 0, branch = 0;
    for (size_t i = 0; i < n; ++i)
        if (degree[i] >= 3) {
            ++branch_count;
            branch = i;
        }
    if (branch_count != 1 || degree[branch] != 3)
        throw Error("SingularOrAffine", "branching not of finite type");
    // leg lengths from the branch node
    std::vector<size_t> legs;
    std::vector<std::vector<size_t>> adj(n);
    for (const Edge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (size_t start : adj[branch]) {
        size_t len = 1, prev = branch, cur = start;
        while (true) {
            size_t next = n;
            for (size_t u : adj[cur])
                if (u != prev) next = u;
            if (next == n) break;
            prev = cur;
            cur = next;
            ++len;
        }
        legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs[0] == 1 && legs[1] == 1) return {'D', n};
    if (legs[0] == 1 && legs[1] == 2 && legs[2] == 2) return {'E', 6};
    if (legs[0] == 1 && legs[1] == 2 && legs[2] == 3) return {'E', 7};
    if (legs[0] == 1 && legs[1] == 2 && legs[2] == 4) return {'E', 8};
    throw Error("SingularOrAffine", "tree shape not of finite type");
}

}  // namespace

std::string recognize_finite_type(const IntMat& C) {
    if (C.rows() != C.cols()) throw Error("InvalidCartan", "matrix not square");
    size_t n = C.rows();
    if (n == 0) throw Error("InvalidCartan", "empty matrix");
    for (size_t i = 0; i < n; ++i) {
        if (C(i, i) != 2) throw Error("InvalidCartan", "diagonal entry is not 2");
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (C(i, j) > 0) throw Error("InvalidCartan", "positive off-diagonal entry");
            if ((C(i, j) == 0) != (C(j, i) == 0))
                throw Error("InvalidCartan", "zero pattern not symmetric");
        }
    }
    std::vector<TypeLabel> labels;
    for (const Component& c : diagram_components(C)) labels.push_back(classify_component(C, c.nodes));
    std::sort(labels.begin(), labels.end(), [](const TypeLabel& a, const TypeLabel& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.letter < b.letter;
    });
    std::string out;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) out += "x";
        out += labels[i].letter;
        out += std::to_string(labels[i].rank);
    }
    return out;
}

Int weyl_order_of_type(const std::string& label) {
    Int total = 1;
    size_t pos = 0;
    while (pos < label.size()) {
        char letter = label[pos++];
        size_t start = pos;
        while (pos < label.size() && isdigit(label[pos])) ++pos;
        size_t n = std::stoul(label.substr(start, pos - start));
        Int factor = 1;
        auto factorial = [](size_t k) {
            Int f = 1;
            for (size_t i = 2; i <= k; ++i) f *= static_cast<long>(i);
            return f;
        };
        Int two_pow = 1;
        for (size_t i = 0; i < n; ++i) two_pow *= 2;
        switch (letter) {
            case 'A': factor = factorial(n + 1); break;
            case 'B':
            case 'C': factor = two_pow * factorial(n); break;
            case 'D': factor = two_pow / 2 * factorial(n); break;
            case 'G': factor = 12; break;
            case 'F': factor = 1152; break;
            case 'E':
                if (n == 6) factor = 51840;
                else if (n == 7) factor = 2903040;
                else factor = Int("696729600");
                break;
            default: throw Error("InvalidType", "unknown type letter");
        }
        total *= factor;
        if (pos < label.size() && label[pos] == 'x') ++pos;
    }
    return total;
}

RootDatum phi_max(const WeylGroup& W, size_t rank) {
    for (const IntMat& g : W.generators) {
        IntMat d = IntMat::identity(rank) - g;
        if (rank_of(d.row_vectors(), rank) != 1)
            throw Error("NotReflection", "generator fixes a subspace of codimension != 1");
    }
    std::set<std::pair<IntVec, IntVec>> pairs;
    IntMat id = IntMat::identity(rank);
    for (const IntMat& m : W.elements) {
        if (m.is_identity()) continue;
        if (!(m * m).is_identity()) continue;
        IntMat diff_t = (id - m).transpose();  // id - m^T, image spans the coroot line
        if (rank_of(diff_t.row_vectors(), rank) != 1) continue;
        // primitive generator of the image of id - m^T
        IntVec corootv;
        for (size_t j = 0; j < rank; ++j) {
            IntVec c = diff_t.col(j);
            if (!is_zero(c)) {
                corootv = primitive_part(c);
                break;
            }
        }
        // x with <x, coroot> = 1 exists since the coroot is primitive
        IntMat row(1, rank);
        for (size_t j = 0; j < rank; ++j) row(0, j) = corootv[j];
        auto x = integer_solve(row, {Int(1)});
        if (!x) throw Error("NotReflection", "coroot direction not primitive");
        IntVec root(rank);
        IntVec mx = m * *x;
        for (size_t j = 0; j < rank; ++j) root[j] = (*x)[j] - mx[j];
        pairs.insert({root, corootv});
        pairs.insert({negate(root), negate(corootv)});
    }
    RootDatum d;
    d.rank = rank;
    for (const auto& [r, cv] : pairs) {
        d.roots.push_back(r);
        d.coroots.push_back(cv);
    }
    // positivity by lexicographic sign of the root vector
    for (size_t i = 0; i < d.roots.size(); ++i) {
        for (size_t t = 0; t < rank; ++t) {
            if (d.roots[i][t] > 0) {
                d.positive.push_back(i);
                break;
            }
            if (d.roots[i][t] < 0) break;
        }
    }
    return d;
}

DiagonalizableGroupDescriptor diagonalizable_quotient(const Sublattice& L) {
    QuotientInvariants q = quotient_invariants(L);
    return {q.free_rank, q.torsion};
}

FiberStructure fiber_structure(const RootDatum& datum, const RatVec& a) {
    if (a.size() != datum.rank) throw Error("BadShape", "point has wrong rank");
    FiberStructure f;
    std::vector<IntVec> local;
    for (size_t i = 0; i < datum.num_roots(); ++i) {
        if (dot(a, datum.coroots[i]) == 0) {
            f.local_roots.push_back(i);
            local.push_back(datum.roots[i]);
        }
    }
    Sublattice span(datum.rank, local);
    f.semisimple = diagonalizable_quotient(span);
    f.unipotent_rank = span.rank();
    return f;
}

DiagonalizableGroupDescriptor global_sections(const RootDatum& datum) {
    return diagonalizable_quotient(datum.root_lattice());
}

namespace {

// Connected component of the root system through root `start`:
// roots connected when <beta, gamma^vee> != 0.
std::vector<size_t> root_component(const RootDatum& d, size_t start) {
    std::vector<char> in(d.num_roots(), 0);
    std::vector<size_t> stack{start}, comp;
    in[start] = 1;
    while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (size_t u = 0; u < d.num_roots(); ++u)
            if (!in[u] && dot(d.roots[v], d.coroots[u]) != 0) {
                in[u] = 1;
                stack.push_back(u);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

bool half_in_lattice(const IntVec& v) {
    for (const Int& x : v)
        if (x % 2 != 0) return false;
    return true;
}

// Orbit of a root index under the reflections of a set of roots.
std::vector<size_t> root_orbit(const RootDatum& d, size_t start,
                               const std::vector<size_t>& reflection_roots) {
    std::set<size_t> seen{start};
    std::vector<size_t> queue{start};
    std::map<IntVec, size_t> index_of;
    for (size_t i = 0; i < d.num_roots(); ++i) index_of[d.roots[i]] = i;
    for (size_t head = 0; head < queue.size(); ++head) {
        const IntVec& beta = d.roots[queue[head]];
        for (size_t r : reflection_roots) {
            Int c = dot(beta, d.coroots[r]);
            IntVec img(d.rank);
            for (size_t t = 0; t < d.rank; ++t) img[t] = beta[t] - c * d.roots[r][t];
            auto it = index_of.find(img);
            if (it == index_of.end()) throw Error("InvalidDatum", "reflection left the root set");
            if (seen.insert(it->second).second) queue.push_back(it->second);
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<SpecialRootCertificate> special_roots(const RootDatum& datum) {
    std::vector<SpecialRootCertificate> out;
    std::set<size_t> pos(datum.positive.begin(), datum.positive.end());
    for (size_t i : datum.positive) {
        if (!half_in_lattice(datum.coroots[i])) continue;
        SpecialRootCertificate cert;
        cert.root_index = i;
        std::vector<size_t> comp = root_component(datum, i);
        // short roots of the summand = orbit of alpha under the component
        cert.short_orbit = root_orbit(datum, i, comp);
        std::vector<IntVec> short_roots;
        size_t n_short_pos = 0;
        for (size_t j : cert.short_orbit) {
            short_roots.push_back(datum.roots[j]);
            if (!half_in_lattice(datum.coroots[j]))
                throw Error("CertificateFailure",
                            "orbit of a special root contains a non-special root");
            if (pos.count(j)) ++n_short_pos;
        }
        cert.short_root_lattice = Sublattice(datum.rank, short_roots);
        if (!is_direct_summand(cert.short_root_lattice))
            throw Error("CertificateFailure", "short-root lattice is not a direct summand");
        // the component must carry a type-B shape with alpha short
        std::vector<size_t> comp_simples;
        for (size_t s : datum.simple_indices())
            if (std::binary_search(comp.begin(), comp.end(), s)) comp_simples.push_back(s);
        std::string type = recognize_finite_type(cartan_matrix(datum, comp_simples));
        size_t bn = comp_simples.size();
        bool ok = (bn == 1 && type == "A1") || (type == "B" + std::to_string(bn));
        if (!ok || n_short_pos != bn)
            throw Error("CertificateFailure", "special root not short in a type-B summand");
        cert.summand_type = "B" + std::to_string(bn);
        out.push_back(std::move(cert));
    }
    return out;
}

IntVec special_involution(const RootDatum& datum, size_t root_index) {
    bool is_positive = false;
    for (size_t i : datum.positive) is_positive |= (i == root_index);
    size_t pos_index = is_positive ? root_index : datum.negative_of(root_index);
    if (!half_in_lattice(datum.coroots[pos_index]))
        throw Error("NotSpecial", "half of the coroot is not in the cocharacter lattice");
    std::vector<SpecialRootCertificate> certs = special_roots(datum);
    const SpecialRootCertificate* cert = nullptr;
    for (const auto& c : certs)
        if (c.root_index == pos_index) cert = &c;
    if (!cert) throw Error("NotSpecial", "root is not special");

    std::set<size_t> shorts(cert->short_orbit.begin(), cert->short_orbit.end());
    size_t n = datum.rank;

    // GF(2) system for the mod-2 functional m:
    //   m . sigma = 1 for short roots of the summand,
    //   m . beta  = 0 for every other root,
    //   m . v     = 0 for v in a basis of Lambda^W,
    //   (w^T - id) m = 0 mod 2 for the Weyl generators.
    std::vector<std::vector<int>> rows;
    std::vector<int> rhs;
    auto add_row = [&](const IntVec& v, int b) {
        std::vector<int> r(n);
        for (size_t t = 0; t < n; ++t) {
            Int m2 = v[t] % 2;
            r[t] = (m2 != 0) ? 1 : 0;
        }
        rows.push_back(r);
        rhs.push_back(b);
    };
    for (size_t j = 0; j < datum.num_roots(); ++j) add_row(datum.roots[j], shorts.count(j) ? 1 : 0);
    std::vector<IntMat> gens;
    for (size_t s : datum.simple_indices()) gens.push_back(datum.reflection(s));
    for (const IntVec& v : fixed_sublattice(gens, n).basis()) add_row(v, 0);
    for (const IntMat& g : gens) {
        IntMat gt = g.transpose();
        for (size_t col = 0; col < n; ++col) {
            // row j of (g - id) pairs m against column vectors; use (g^T - id) rows
            IntVec r(n);
            for (size_t t = 0; t < n; ++t) r[t] = gt(col, t) - (col == t ? 1 : 0);
            add_row(r, 0);
        }
    }

    // Gaussian elimination over GF(2); deterministic minimal solution (free vars 0)
    size_t m_rows = rows.size();
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m_rows; ++col) {
        size_t p = row;
        while (p < m_rows && rows[p][col] == 0) ++p;
        if (p == m_rows) continue;
        std::swap(rows[p], rows[row]);
        std::swap(rhs[p], rhs[row]);
        for (size_t i = 0; i < m_rows; ++i) {
            if (i != row && rows[i][col]) {
                for (size_t t = 0; t < n; ++t) rows[i][t] ^= rows[row][t];
                rhs[i] ^= rhs[row];
            }
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t i = row; i < m_rows; ++i)
        if (rhs[i]) throw Error("CertificateFailure", "involution system inconsistent");
    IntVec m(n, Int(0));
    for (size_t i = 0; i < row; ++i) m[pivot_col_of_row[i]] = rhs[i];
    return m;
}

int involution_value(const IntVec& mod2_vector, const IntVec& chi) {
    Int s = dot(mod2_vector, chi);
    return (s % 2 == 0) ? 1 : -1;
}

bool component_injectivity_check(const RootDatum& datum,
                                 const std::vector<IntVec>& sub_roots) {
    Sublattice sub(datum.rank, sub_roots);
    Sublattice full = datum.root_lattice();
    // torsion of Lambda/<sub> = sat(<sub>)/<sub>; it injects into Lambda/<Delta>
    // iff sat(<sub>) meets <Delta> only in <sub>.
    Sublattice inter = sub.saturation().intersect(full);
    return inter == Sublattice(datum.rank, sub.basis());
}

DiagonalizableGroupDescriptor lattice_change_group(const RootDatum& datum,
                                                   const Sublattice& sub) {
    if (sub.ambient_rank() != datum.rank) throw Error("BadShape", "ambient rank mismatch");
    if (sub.rank() != datum.rank)
        throw Error("InfiniteIndex", "sublattice has lower rank than the character lattice");
    for (const IntVec& r : datum.roots)
        if (!sub.contains(r)) throw Error("RootsNotContained", "a root lies outside the sublattice");
    return diagonalizable_quotient(sub);
}

}  // namespace polyweyl
