#include "polyweyl/rank_one.hpp"

#include <algorithm>

#include "polyweyl/error.hpp"

namespace polyweyl {

namespace {

// squarefree decomposition n = s^2 * d by trial division; desk-scale inputs
void squarefree_split(const Int& n, Int& square_root_part, Int& squarefree) {
    Int rest = n;
    square_root_part = 1;
    squarefree = 1;
    if (rest == 0) {
        squarefree = 0;
        return;
    }
    for (Int p = 2; p * p <= rest && p < 100000; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            square_root_part *= p;
        }
        if (rest % p == 0) {
            rest /= p;
            squarefree *= p;
        }
    }
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        square_root_part *= r;
    } else {
        squarefree *= rest;
    }
}

}  // namespace

QuadExt sqrt_exact(const Rat& r) {
    if (r < 0) throw Error("NegativeRadicand", "square root of a negative rational");
    if (r == 0) return QuadExt::of(0);
    // sqrt(p/q) = sqrt(p q) / q
    Int pq = r.get_num() * r.get_den();
    Int s, d;
    squarefree_split(pq, s, d);
    QuadExt out;
    out.a = 0;
    out.b = Rat(s) / Rat(r.get_den());
    out.D = d;
    if (d == 1) return QuadExt::of(out.b);
    return out;
}

namespace {

Int common_radical(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0 || x.D == 1) return (y.b == 0) ? Int(1) : y.D;
    if (y.b == 0 || y.D == 1) return x.D;
    if (x.D != y.D) throw Error("MixedRadicals", "operands live in different extensions");
    return x.D;
}

}  // namespace

QuadExt QuadExt::operator+(const QuadExt& o) const {
    Int d = common_radical(*this, o);
    return {a + o.a, b + o.b, d};
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    Int d = common_radical(*this, o);
    return {a - o.a, b - o.b, d};
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
    Int d = common_radical(*this, o);
    return {a * o.a + Rat(d) * b * o.b, a * o.b + b * o.a, d};
}

bool QuadExt::operator==(const QuadExt& o) const {
    if (a != o.a) return false;
    if (b == 0 && o.b == 0) return true;
    return b == o.b && common_radical(*this, o) >= 1;
}

RankOneElement RankOneElement::from_parameter(const Rat& s, const Rat& m) {
    Rat denom = 1 - s * m * m;
    if (denom == 0) throw Error("InvalidElement", "parameter on the degenerate locus");
    RankOneElement u{(1 + s * m * m) / denom, 2 * m / denom, s};
    u.check_invariant();
    return u;
}

void RankOneElement::check_invariant() const {
    if (a * a - s * b * b != 1)
        throw Error("InvalidElement", "a^2 - s b^2 != 1");
}

RankOneElement multiply(const RankOneElement& u, const RankOneElement& v) {
    if (u.s != v.s) throw Error("BaseMismatch", "elements over different base points");
    return {u.a * v.a + u.s * u.b * v.b, u.a * v.b + v.a * u.b, u.s};
}

FiberDescriptor fiber_decompose(const Rat& s) {
    FiberDescriptor f;
    if (s != 0) {
        f.torus = true;
        return f;
    }
    f.torus = false;
    f.component_order = 2;
    f.unipotent_rank = 1;
    return f;
}

Rat trivialize(const RankOneElement& u, const Rat& t) {
    if (t * t != u.s) throw Error("BadRoot", "t^2 != s");
    return u.a + t * u.b;
}

std::array<QuadExt, 4> real_form_psi(const RankOneElement& u) {
    if (u.s > 0) throw Error("PositiveS", "real form defined over s <= 0 only");
    u.check_invariant();
    QuadExt w = sqrt_exact(-u.s);
    QuadExt a = QuadExt::of(u.a);
    QuadExt wb = w * QuadExt::of(u.b);
    QuadExt neg_wb = QuadExt::of(0) - wb;
    return {a, neg_wb, wb, a};
}

QuadExt det2(const std::array<QuadExt, 4>& m) { return m[0] * m[3] - m[1] * m[2]; }

std::array<QuadExt, 4> mat2_mul(const std::array<QuadExt, 4>& x,
                                const std::array<QuadExt, 4>& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// --- exterior algebra ------------------------------------------------------

void Poly3::add_term(const std::array<long, 3>& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly3 poly3_term(const std::array<long, 3>& e, const Rat& c) {
    Poly3 p;
    p.add_term(e, c);
    return p;
}

Poly3 Poly3::constant(const Rat& c) { return poly3_term({0, 0, 0}, c); }

Poly3 Poly3::var(size_t i) {
    std::array<long, 3> e{0, 0, 0};
    e[i] = 1;
    return poly3_term(e, 1);
}

Poly3 Poly3::operator+(const Poly3& o) const {
    Poly3 out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Poly3 Poly3::operator-(const Poly3& o) const {
    Poly3 out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

Poly3 Poly3::operator*(const Poly3& o) const {
    Poly3 out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            out.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return out;
}

Poly3 Poly3::operator*(const Rat& c) const {
    Poly3 out;
    for (const auto& [e, coeff] : terms_) out.add_term(e, coeff * c);
    return out;
}

bool Poly3::operator==(const Poly3& o) const { return terms_ == o.terms_; }

Poly3 Poly3::derivative(size_t i) const {
    Poly3 out;
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        std::array<long, 3> d = e;
        d[i] -= 1;
        out.add_term(d, c * Rat(e[i]));
    }
    return out;
}

Poly3 Poly3::substitute(size_t i, const Poly3& p) const {
    Poly3 out;
    for (const auto& [e, c] : terms_) {
        std::array<long, 3> rest = e;
        rest[i] = 0;
        Poly3 term = poly3_term(rest, c);
        for (long k = 0; k < e[i]; ++k) term = term * p;
        out = out + term;
    }
    return out;
}

std::string Poly3::to_string(const std::array<std::string, 3>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += rat_to_string(c);
        for (size_t i = 0; i < 3; ++i)
            for (long k = 0; k < e[i]; ++k) out += "*" + names[i];
    }
    return out;
}

Form3 Form3::operator+(const Form3& o) const {
    Form3 out;
    out.deg0 = deg0 + o.deg0;
    for (size_t i = 0; i < 3; ++i) {
        out.deg1[i] = deg1[i] + o.deg1[i];
        out.deg2[i] = deg2[i] + o.deg2[i];
    }
    out.deg3 = deg3 + o.deg3;
    return out;
}

Form3 Form3::operator-(const Form3& o) const {
    Form3 out;
    out.deg0 = deg0 - o.deg0;
    for (size_t i = 0; i < 3; ++i) {
        out.deg1[i] = deg1[i] - o.deg1[i];
        out.deg2[i] = deg2[i] - o.deg2[i];
    }
    out.deg3 = deg3 - o.deg3;
    return out;
}

bool Form3::operator==(const Form3& o) const {
    return deg0 == o.deg0 && deg1 == o.deg1 && deg2 == o.deg2 && deg3 == o.deg3;
}

bool Form3::is_homogeneous_zero(int degree) const {
    switch (degree) {
        case 0: return deg0.is_zero();
        case 1: return deg1[0].is_zero() && deg1[1].is_zero() && deg1[2].is_zero();
        case 2: return deg2[0].is_zero() && deg2[1].is_zero() && deg2[2].is_zero();
        case 3: return deg3.is_zero();
        default: return true;
    }
}

Form3 form_scalar(const Poly3& p) {
    Form3 f;
    f.deg0 = p;
    return f;
}

Form3 form_d(size_t i) {
    Form3 f;
    f.deg1[i] = Poly3::constant(1);
    return f;
}

namespace {

// wedge of basis covectors: dx_i ^ dx_j -> (sign, deg2 index); i < j pairs map
// to [01]->0, [02]->1, [12]->2
int wedge1(size_t i, size_t j, size_t& out_index) {
    if (i == j) return 0;
    int sign = 1;
    size_t a = i, b = j;
    if (a > b) {
        std::swap(a, b);
        sign = -1;
    }
    if (a == 0 && b == 1) out_index = 0;
    else if (a == 0 && b == 2) out_index = 1;
    else out_index = 2;
    return sign;
}

// dx_i ^ (deg2 basis k) -> sign into the volume form
int wedge12(size_t i, size_t k) {
    // deg2 basis: 0 = d0^d1, 1 = d0^d2, 2 = d1^d2
    if (k == 0) return (i == 2) ? 1 : 0;    // d2 ^ d0^d1 = + vol
    if (k == 1) return (i == 1) ? -1 : 0;   // d1 ^ d0^d2 = - vol
    return (i == 0) ? 1 : 0;                // d0 ^ d1^d2 = + vol
}

}  // namespace

Form3 wedge(const Form3& x, const Form3& y) {
    Form3 out;
    out.deg0 = x.deg0 * y.deg0;
    for (size_t i = 0; i < 3; ++i)
        out.deg1[i] = x.deg0 * y.deg1[i] + x.deg1[i] * y.deg0;
    for (size_t k = 0; k < 3; ++k)
        out.deg2[k] = x.deg0 * y.deg2[k] + x.deg2[k] * y.deg0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            size_t idx;
            int s = wedge1(i, j, idx);
            if (s != 0) out.deg2[idx] = out.deg2[idx] + x.deg1[i] * y.deg1[j] * Rat(s);
        }
    out.deg3 = x.deg0 * y.deg3 + x.deg3 * y.deg0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t k = 0; k < 3; ++k) {
            int s1 = wedge12(i, k);
            if (s1 != 0) out.deg3 = out.deg3 + x.deg1[i] * y.deg2[k] * Rat(s1);
            // deg2 ^ deg1 with the same sign (2-forms commute past 1-forms evenly)
            int s2 = wedge12(i, k);
            if (s2 != 0) out.deg3 = out.deg3 + x.deg2[k] * y.deg1[i] * Rat(s2);
        }
    return out;
}

Form3 exterior_derivative(const Poly3& p) {
    Form3 out;
    for (size_t i = 0; i < 3; ++i) out.deg1[i] = p.derivative(i);
    return out;
}

namespace {

SymplecticCheck run_symplectic_check(const Rat& omega_coefficient) {
    SymplecticCheck out;
    // variables (a, b, s)
    Poly3 A = Poly3::var(0), Bv = Poly3::var(1), S = Poly3::var(2);
    Form3 da = form_d(0), db = form_d(1), ds = form_d(2);

    Form3 omega = wedge(form_scalar(A * omega_coefficient), db) -
                  wedge(form_scalar(Bv * omega_coefficient), da);
    omega = wedge(omega, ds);

    Poly3 f = A * A - S * Bv * Bv - Poly3::constant(1);
    Form3 df = exterior_derivative(f);

    Form3 lhs = wedge(omega, df);
    Poly3 rhs = f + Poly3::constant(1);
    Form3 vol = wedge(wedge(da, db), ds);
    Form3 expected = wedge(form_scalar(rhs), vol);

    out.identity_holds = (lhs == expected);
    if (!out.identity_holds) {
        Poly3 diff = lhs.deg3 - expected.deg3;
        out.mismatch = "volume coefficient differs by " +
                       diff.to_string({"a", "b", "s"});
    }

    // cancellation bridge in the double-cover variables (a, b, t), s = t^2:
    // (a da - t^2 b db) ^ dt = 1/2 d(a^2 - t^2 b^2 - 1) ^ dt
    Poly3 T = Poly3::var(2);
    Form3 dt = form_d(2);
    Form3 first_summand =
        wedge(wedge(form_scalar(A), da) - wedge(form_scalar(T * T * Bv), db), dt);
    Poly3 ft = A * A - T * T * Bv * Bv - Poly3::constant(1);
    Form3 half_df_dt = wedge(exterior_derivative(ft), dt);
    // scale by 1/2
    Form3 half;
    half.deg0 = Poly3::constant(Rat(1, 2));
    half_df_dt = wedge(half, half_df_dt);
    out.cancellation_holds = (first_summand == half_df_dt);
    if (!out.cancellation_holds && out.mismatch.empty())
        out.mismatch = "cancellation bridge fails in the (a, b, t) chart";
    return out;
}

}  // namespace

SymplecticCheck symplectic_identity_check() { return run_symplectic_check(Rat(1, 2)); }

SymplecticCheck symplectic_identity_check_perturbed(const Rat& coefficient) {
    return run_symplectic_check(coefficient);
}

// --- rational functions in one variable ------------------------------------

namespace {

using Poly = std::vector<Rat>;  // constant term first

void strip(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bool poly_zero(const Poly& p) {
    for (const Rat& c : p)
        if (c != 0) return false;
    return true;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    strip(out);
    return out;
}

Poly poly_neg(const Poly& a) {
    Poly out = a;
    for (Rat& c : out) c = -c;
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (poly_zero(a) || poly_zero(b)) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    strip(out);
    return out;
}

// a = q*b + r
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (poly_zero(b)) throw Error("DivideByZero", "polynomial division by zero");
    r = a;
    strip(r);
    q.clear();
    Poly bb = b;
    strip(bb);
    while (r.size() >= bb.size() && !poly_zero(r)) {
        size_t shift = r.size() - bb.size();
        Rat c = r.back() / bb.back();
        if (q.size() < shift + 1) q.resize(shift + 1, Rat(0));
        q[shift] += c;
        for (size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
        strip(r);
    }
}

Poly poly_gcd(Poly a, Poly b) {
    strip(a);
    strip(b);
    while (!poly_zero(b)) {
        Poly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;  // monic
    }
    return a;
}

Poly poly_derivative(const Poly& a) {
    Poly out;
    for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * Rat(static_cast<long>(i)));
    strip(out);
    return out;
}

void normalize(Poly& num, Poly& den) {
    strip(num);
    strip(den);
    if (poly_zero(den)) throw Error("DivideByZero", "zero denominator");
    if (poly_zero(num)) {
        num = {};
        den = {Rat(1)};
        return;
    }
    Poly g = poly_gcd(num, den);
    if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
        Poly q, r;
        poly_divmod(num, g, q, r);
        num = q;
        poly_divmod(den, g, q, r);
        den = q;
    }
    Rat lead = den.back();
    for (Rat& c : num) c /= lead;
    for (Rat& c : den) c /= lead;
}

}  // namespace

RatFunc RatFunc::from_coeffs(std::vector<Rat> n, std::vector<Rat> d) {
    RatFunc f;
    f.num = std::move(n);
    f.den = std::move(d);
    normalize(f.num, f.den);
    return f;
}

RatFunc rf_add(const RatFunc& x, const RatFunc& y) {
    return RatFunc::from_coeffs(poly_add(poly_mul(x.num, y.den), poly_mul(y.num, x.den)),
                                poly_mul(x.den, y.den));
}

RatFunc rf_sub(const RatFunc& x, const RatFunc& y) {
    return RatFunc::from_coeffs(
        poly_add(poly_mul(x.num, y.den), poly_neg(poly_mul(y.num, x.den))),
        poly_mul(x.den, y.den));
}

RatFunc rf_mul(const RatFunc& x, const RatFunc& y) {
    return RatFunc::from_coeffs(poly_mul(x.num, y.num), poly_mul(x.den, y.den));
}

RatFunc rf_derivative(const RatFunc& x) {
    // (n/d)' = (n'd - nd')/d^2
    return RatFunc::from_coeffs(
        poly_add(poly_mul(poly_derivative(x.num), x.den),
                 poly_neg(poly_mul(x.num, poly_derivative(x.den)))),
        poly_mul(x.den, x.den));
}

bool rf_is_zero(const RatFunc& x) { return poly_zero(x.num); }

bool rf_equal(const RatFunc& x, const RatFunc& y) { return rf_is_zero(rf_sub(x, y)); }

bool has_rational_antiderivative(const RatFunc& g) {
    Poly num = g.num, den = g.den;
    normalize(num, den);
    if (poly_zero(num)) return true;
    if (den.size() == 1) return true;  // polynomial part always integrates

    // proper part
    Poly q, r;
    poly_divmod(num, den, q, r);
    num = r;
    if (poly_zero(num)) return true;

    // Ostrogradsky: num/den = (P/B1)' + Q/B2, B1 = gcd(den, den'), B2 = den/B1.
    // A rational antiderivative exists iff Q = 0.
    Poly B1 = poly_gcd(den, poly_derivative(den));
    Poly B2, rem;
    poly_divmod(den, B1, B2, rem);
    if (!poly_zero(rem)) throw Error("Internal", "gcd does not divide the denominator");
    if (B1.size() == 1) {
        // squarefree denominator: purely logarithmic part
        return poly_zero(num);
    }
    // T = B1' * B2 / B1 is a polynomial
    Poly T, rem2;
    poly_divmod(poly_mul(poly_derivative(B1), B2), B1, T, rem2);
    if (!poly_zero(rem2)) throw Error("Internal", "Hermite quotient is not polynomial");

    size_t np = B1.size() - 1;  // deg P < deg B1
    size_t nq = B2.size() - 1;  // deg Q < deg B2
    size_t unknowns = np + nq;
    size_t eqs = std::max(num.size(), std::max(B2.size() + np, B1.size() + nq));
    QMat M(eqs, unknowns);
    RatVec rhs(eqs, Rat(0));
    for (size_t i = 0; i < num.size(); ++i) rhs[i] = num[i];
    // columns for P coefficients: P' * B2 - P * T
    for (size_t j = 0; j < np; ++j) {
        Poly pj(j + 1, Rat(0));
        pj[j] = 1;
        Poly contrib =
            poly_add(poly_mul(poly_derivative(pj), B2), poly_neg(poly_mul(pj, T)));
        for (size_t i = 0; i < contrib.size(); ++i) M(i, j) += contrib[i];
    }
    // columns for Q coefficients: Q * B1
    for (size_t j = 0; j < nq; ++j) {
        Poly qj(j + 1, Rat(0));
        qj[j] = 1;
        Poly contrib = poly_mul(qj, B1);
        for (size_t i = 0; i < contrib.size(); ++i) M(i, np + j) += contrib[i];
    }
    auto sol = solve_rational(M, rhs);
    if (!sol) throw Error("Internal", "Ostrogradsky system is inconsistent");
    for (size_t j = 0; j < nq; ++j)
        if ((*sol)[np + j] != 0) return false;
    return true;
}

bool section_form_is_exact(const RankOneSection& sec) {
    RatFunc s = RatFunc::from_coeffs({Rat(0), Rat(1)}, {Rat(1)});
    RatFunc inv = rf_sub(rf_mul(sec.a, sec.a), rf_mul(s, rf_mul(sec.b, sec.b)));
    RatFunc one = RatFunc::from_coeffs({Rat(1)}, {Rat(1)});
    if (!rf_equal(inv, one))
        throw Error("InvalidSection", "a^2 - s b^2 != 1 as rational functions");
    RatFunc g = rf_sub(rf_mul(sec.a, rf_derivative(sec.b)),
                       rf_mul(sec.b, rf_derivative(sec.a)));
    g = rf_mul(g, RatFunc::from_coeffs({Rat(1, 2)}, {Rat(1)}));
    return has_rational_antiderivative(g);
}

}  // namespace polyweyl
