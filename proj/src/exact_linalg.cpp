#include "polyweyl/exact_linalg.hpp"

#include <algorithm>

namespace polyweyl {

std::vector<Int> SmithDecomposition::diagonal() const {
    std::vector<Int> d;
    size_t n = std::min(D.rows(), D.cols());
    for (size_t i = 0; i < n; ++i) d.push_back(D(i, i));
    return d;
}

size_t SmithDecomposition::rank() const {
    size_t r = 0;
    for (const Int& d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

// Left-multiply by the unimodular 2x2 block [[p,q],[r,s]] acting on rows i, j.
void row_op(IntMat& M, size_t i, size_t j, const Int& p, const Int& q, const Int& r,
            const Int& s) {
    for (size_t k = 0; k < M.cols(); ++k) {
        Int a = M(i, k), b = M(j, k);
        M(i, k) = p * a + q * b;
        M(j, k) = r * a + s * b;
    }
}

void col_op(IntMat& M, size_t i, size_t j, const Int& p, const Int& q, const Int& r,
            const Int& s) {
    for (size_t k = 0; k < M.rows(); ++k) {
        Int a = M(k, i), b = M(k, j);
        M(k, i) = p * a + q * b;
        M(k, j) = r * a + s * b;
    }
}

// Zero M(i, pos) against the pivot row t. A plain subtraction when the pivot
// divides the entry (keeps row t fixed); otherwise a gcd step, which strictly
// shrinks |M(t, pos)| and therefore terminates.
void clear_row_entry(IntMat& M, IntMat& U, size_t t, size_t i, size_t pos) {
    const Int& d = M(t, pos);
    const Int& e = M(i, pos);
    if (d != 0 && e % d == 0) {
        Int f = e / d;
        row_op(M, t, i, 1, 0, -f, 1);
        row_op(U, t, i, 1, 0, -f, 1);
        return;
    }
    Int p, q;
    Int g = gcdext(d, e, p, q);
    Int a = d / g, b = e / g;
    row_op(M, t, i, p, q, -b, a);
    row_op(U, t, i, p, q, -b, a);
}

void clear_col_entry(IntMat& M, IntMat& V, size_t t, size_t j, size_t pos) {
    const Int& d = M(pos, t);
    const Int& e = M(pos, j);
    if (d != 0 && e % d == 0) {
        Int f = e / d;
        col_op(M, t, j, 1, 0, -f, 1);
        col_op(V, t, j, 1, 0, -f, 1);
        return;
    }
    Int p, q;
    Int g = gcdext(d, e, p, q);
    Int a = d / g, b = e / g;
    col_op(M, t, j, p, q, -b, a);
    col_op(V, t, j, p, q, -b, a);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& A) {
    size_t m = A.rows(), n = A.cols();
    SmithDecomposition out{IntMat::identity(m), A, IntMat::identity(n)};
    IntMat& D = out.D;
    IntMat& U = out.U;
    IntMat& V = out.V;

    size_t t = 0;
    while (t < m && t < n) {
        // locate a nonzero pivot in the trailing block, smallest |entry| first
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (D(i, j) == 0) continue;
                if (!found || mpz_cmpabs(D(i, j).get_mpz_t(), D(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) {
            D.swap_rows(t, pi);
            U.swap_rows(t, pi);
        }
        if (pj != t) {
            D.swap_cols(t, pj);
            V.swap_cols(t, pj);
        }

        for (;;) {
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                clean = false;
                clear_row_entry(D, U, t, i, t);
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                clean = false;
                clear_col_entry(D, V, t, j, t);
            }
            if (!clean) continue;
            // enforce divisibility d_t | D(i, j) on the trailing block
            bool divisible = true;
            for (size_t i = t + 1; i < m && divisible; ++i)
                for (size_t j = t + 1; j < n && divisible; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_op(D, t, i, 1, 1, 0, 1);  // row_t += row_i
                        row_op(U, t, i, 1, 1, 0, 1);
                        divisible = false;
                    }
            if (divisible) break;
        }
        ++t;
    }
    for (size_t i = 0; i < std::min(m, n); ++i)
        if (D(i, i) < 0) {
            for (size_t k = 0; k < n; ++k) D(i, k) = -D(i, k);
            for (size_t k = 0; k < m; ++k) U(i, k) = -U(i, k);
        }
    return out;
}

IntMat hermite_normal_form(const IntMat& A) {
    size_t m = A.rows(), n = A.cols();
    IntMat H = A;
    IntMat scratch = IntMat::identity(m);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        // clear the column below `row` by gcd steps
        size_t pivot = row;
        while (pivot < m && H(pivot, col) == 0) ++pivot;
        if (pivot == m) continue;
        if (pivot != row) H.swap_rows(row, pivot);
        for (size_t i = row + 1; i < m; ++i) {
            if (H(i, col) == 0) continue;
            clear_row_entry(H, scratch, row, i, col);
        }
        if (H(row, col) < 0)
            for (size_t k = 0; k < n; ++k) H(row, k) = -H(row, k);
        for (size_t i = 0; i < row; ++i) {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
            if (f == 0) continue;
            for (size_t k = 0; k < n; ++k) H(i, k) -= f * H(row, k);
        }
        ++row;
    }
    IntMat out(row, n);
    for (size_t i = 0; i < row; ++i)
        for (size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
    return out;
}

std::vector<IntVec> integer_kernel(const IntMat& A) {
    SmithDecomposition s = smith_normal_form(A);
    size_t r = s.rank(), n = A.cols();
    std::vector<IntVec> basis;
    for (size_t j = r; j < n; ++j) basis.push_back(s.V.col(j));
    return basis;
}

std::optional<IntVec> integer_solve(const IntMat& A, const IntVec& b) {
    if (b.size() != A.rows()) throw Error("BadShape", "rhs size mismatch");
    SmithDecomposition s = smith_normal_form(A);
    IntVec c = s.U * b;
    size_t n = A.cols();
    IntVec y(n, Int(0));
    for (size_t i = 0; i < A.rows(); ++i) {
        Int d = (i < n) ? s.D(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return s.V * y;
}

Sublattice::Sublattice(size_t ambient_rank, std::vector<IntVec> generators)
    : ambient_rank_(ambient_rank), generators_(std::move(generators)) {
    for (const auto& g : generators_)
        if (g.size() != ambient_rank_)
            throw Error("BadShape", "generator does not live in the ambient rank");
}

Sublattice Sublattice::full(size_t ambient_rank) {
    std::vector<IntVec> gens;
    for (size_t i = 0; i < ambient_rank; ++i) {
        IntVec e(ambient_rank, Int(0));
        e[i] = 1;
        gens.push_back(e);
    }
    return Sublattice(ambient_rank, std::move(gens));
}

std::vector<IntVec> Sublattice::basis() const {
    if (generators_.empty()) return {};
    return hermite_normal_form(IntMat::from_rows(generators_, ambient_rank_)).row_vectors();
}

size_t Sublattice::rank() const { return basis().size(); }

bool Sublattice::contains(const IntVec& v) const {
    if (v.size() != ambient_rank_) throw Error("BadShape", "vector has wrong rank");
    if (is_zero(v)) return true;
    if (generators_.empty()) return false;
    IntMat G = IntMat::from_rows(generators_, ambient_rank_);
    return integer_solve(G.transpose(), v).has_value();
}

bool Sublattice::operator==(const Sublattice& other) const {
    if (ambient_rank_ != other.ambient_rank_) return false;
    auto a = basis(), b = other.basis();
    return a == b;
}

Sublattice Sublattice::intersect(const Sublattice& other) const {
    if (ambient_rank_ != other.ambient_rank_) throw Error("BadShape", "ambient rank mismatch");
    if (generators_.empty() || other.generators_.empty()) return Sublattice(ambient_rank_);
    // v = B1^T u = B2^T w  <=>  (u, w) in ker [B1^T | -B2^T]
    size_t k1 = generators_.size(), k2 = other.generators_.size();
    IntMat M(ambient_rank_, k1 + k2);
    for (size_t j = 0; j < k1; ++j)
        for (size_t i = 0; i < ambient_rank_; ++i) M(i, j) = generators_[j][i];
    for (size_t j = 0; j < k2; ++j)
        for (size_t i = 0; i < ambient_rank_; ++i) M(i, k1 + j) = -other.generators_[j][i];
    std::vector<IntVec> gens;
    for (const IntVec& uw : integer_kernel(M)) {
        IntVec v(ambient_rank_, Int(0));
        for (size_t j = 0; j < k1; ++j)
            for (size_t i = 0; i < ambient_rank_; ++i) v[i] += uw[j] * generators_[j][i];
        if (!is_zero(v)) gens.push_back(v);
    }
    return Sublattice(ambient_rank_, std::move(gens));
}

Sublattice Sublattice::saturation() const {
    if (generators_.empty()) return Sublattice(ambient_rank_);
    // double orthogonal complement w.r.t. the standard pairing
    IntMat G = IntMat::from_rows(generators_, ambient_rank_);
    std::vector<IntVec> perp = integer_kernel(G);
    if (perp.empty()) return Sublattice::full(ambient_rank_);
    IntMat P = IntMat::from_rows(perp, ambient_rank_);
    return Sublattice(ambient_rank_, integer_kernel(P));
}

Sublattice Sublattice::sum(const Sublattice& other) const {
    if (ambient_rank_ != other.ambient_rank_) throw Error("BadShape", "ambient rank mismatch");
    std::vector<IntVec> gens = generators_;
    gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
    return Sublattice(ambient_rank_, std::move(gens));
}

bool is_direct_summand(const Sublattice& L) {
    if (L.generators().empty()) return true;
    SmithDecomposition s =
        smith_normal_form(IntMat::from_rows(L.generators(), L.ambient_rank()));
    for (const Int& d : s.diagonal())
        if (d != 0 && d != 1) return false;
    return true;
}

QuotientInvariants quotient_invariants(const Sublattice& L) {
    QuotientInvariants q;
    if (L.generators().empty()) {
        q.free_rank = L.ambient_rank();
        return q;
    }
    SmithDecomposition s =
        smith_normal_form(IntMat::from_rows(L.generators(), L.ambient_rank()));
    size_t r = 0;
    for (const Int& d : s.diagonal())
        if (d != 0) {
            ++r;
            if (d > 1) q.torsion.push_back(d);
        }
    q.free_rank = L.ambient_rank() - r;
    return q;
}

Sublattice fixed_sublattice(const std::vector<IntMat>& mats, size_t n) {
    if (mats.empty()) return Sublattice::full(n);
    IntMat stacked(mats.size() * n, n);
    for (size_t k = 0; k < mats.size(); ++k) {
        const IntMat& M = mats[k];
        if (M.rows() != n || M.cols() != n)
            throw Error("BadShape", "fixed_sublattice needs square matrices of equal size");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) stacked(k * n + i, j) = M(i, j) - (i == j ? 1 : 0);
    }
    Sublattice fixed(n, integer_kernel(stacked));
    return Sublattice(n, fixed.basis());
}

}  // namespace polyweyl
