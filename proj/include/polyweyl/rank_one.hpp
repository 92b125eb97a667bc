#pragma once

#include <array>
#include <map>
#include <string>

#include "polyweyl/numeric.hpp"
#include "polyweyl/root_datum.hpp"

namespace polyweyl {

// Element a + b*sqrt(D) of a real quadratic extension of Q; D a squarefree
// nonnegative integer fixed per value.
struct QuadExt {
    Rat a, b;
    Int D = 1;

    static QuadExt of(const Rat& r) { return {r, 0, 1}; }
    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    bool operator==(const QuadExt& o) const;
    bool is_rational() const { return b == 0 || D == 1; }
};

// sqrt of a nonnegative rational as q * sqrt(D) with D squarefree
QuadExt sqrt_exact(const Rat& r);

// Fiber element (a, b, s) with a^2 - s b^2 = 1 exactly.
struct RankOneElement {
    Rat a, b, s;

    static RankOneElement identity(const Rat& s) { return {1, 0, s}; }
    // Rational parametrization through (1, 0): m -> ((1+s m^2)/(1-s m^2), 2m/(1-s m^2)).
    static RankOneElement from_parameter(const Rat& s, const Rat& m);

    void check_invariant() const;  // throws Error("InvalidElement", ...)
    RankOneElement inverse() const { return {a, -b, s}; }
};

// Errors: BaseMismatch when u.s != v.s.
RankOneElement multiply(const RankOneElement& u, const RankOneElement& v);

struct FiberDescriptor {
    bool torus = false;          // s != 0: one-dimensional torus
    size_t component_order = 1;  // 2 for the zero fiber {+-1} x C
    size_t unipotent_rank = 0;   // 1 for the zero fiber
};

FiberDescriptor fiber_decompose(const Rat& s);

// x = a + t b for an exact square root t of s. Errors: BadRoot.
Rat trivialize(const RankOneElement& u, const Rat& t);

// 2x2 rotation matrix ((a, -sqrt(-s) b), (sqrt(-s) b, a)) over Q(sqrt(-s)).
// Errors: PositiveS when s > 0.
std::array<QuadExt, 4> real_form_psi(const RankOneElement& u);

QuadExt det2(const std::array<QuadExt, 4>& m);
std::array<QuadExt, 4> mat2_mul(const std::array<QuadExt, 4>& x,
                                const std::array<QuadExt, 4>& y);

// --- minimal exterior algebra in three variables -------------------------

// Sparse polynomial over Q in three named variables.
class Poly3 {
public:
    Poly3() = default;
    static Poly3 constant(const Rat& c);
    static Poly3 var(size_t i);  // 0, 1, 2

    Poly3 operator+(const Poly3& o) const;
    Poly3 operator-(const Poly3& o) const;
    Poly3 operator*(const Poly3& o) const;
    Poly3 operator*(const Rat& c) const;
    bool operator==(const Poly3& o) const;
    bool is_zero() const { return terms_.empty(); }

    Poly3 derivative(size_t i) const;
    // substitute variable i by a polynomial
    Poly3 substitute(size_t i, const Poly3& p) const;

    std::string to_string(const std::array<std::string, 3>& names) const;

private:
    // exponent triple -> coefficient, zero coefficients never stored
    std::map<std::array<long, 3>, Rat> terms_;
    void add_term(const std::array<long, 3>& e, const Rat& c);
    friend Poly3 poly3_term(const std::array<long, 3>& e, const Rat& c);
};

Poly3 poly3_term(const std::array<long, 3>& e, const Rat& c);

// Graded-commutative form of degree 0..3 over Poly3 with basis
// dx0, dx1, dx2 / dx0^dx1, dx0^dx2, dx1^dx2 / dx0^dx1^dx2.
struct Form3 {
    Poly3 deg0;
    std::array<Poly3, 3> deg1;
    std::array<Poly3, 3> deg2;
    Poly3 deg3;

    Form3 operator+(const Form3& o) const;
    Form3 operator-(const Form3& o) const;
    bool operator==(const Form3& o) const;
    bool is_homogeneous_zero(int degree) const;
};

Form3 form_scalar(const Poly3& p);
Form3 form_d(size_t i);                       // the 1-form dx_i
Form3 wedge(const Form3& x, const Form3& y);
Form3 exterior_derivative(const Poly3& p);    // df

// Verifies the closed identity omega~ ^ df = (f + 1) da^db^ds and, in the
// double-cover variables (a, b, t), the cancellation
// (a da - t^2 b db) ^ dt = 1/2 df ^ dt. Returns the failing side as text when
// a check fails (for the perturbed negative control).
struct SymplecticCheck {
    bool identity_holds = false;
    bool cancellation_holds = false;
    std::string mismatch;  // empty when both hold
};

SymplecticCheck symplectic_identity_check();
// same check with the leading coefficient of omega~ replaced (negative control)
SymplecticCheck symplectic_identity_check_perturbed(const Rat& coefficient);

// --- rational-function sections ------------------------------------------

// Rational function in one variable s over Q.
struct RatFunc {
    // numerator and denominator coefficient lists, constant term first
    std::vector<Rat> num{Rat(0)};
    std::vector<Rat> den{Rat(1)};

    static RatFunc from_coeffs(std::vector<Rat> n, std::vector<Rat> d);
};

RatFunc rf_add(const RatFunc& x, const RatFunc& y);
RatFunc rf_sub(const RatFunc& x, const RatFunc& y);
RatFunc rf_mul(const RatFunc& x, const RatFunc& y);
RatFunc rf_derivative(const RatFunc& x);
bool rf_is_zero(const RatFunc& x);
bool rf_equal(const RatFunc& x, const RatFunc& y);

// Does g ds have a rational antiderivative? (Hermite reduction: true iff the
// logarithmic part vanishes.)
bool has_rational_antiderivative(const RatFunc& g);

// A section s -> (a(s), b(s)) with a^2 - s b^2 = 1. The pullback of
// (a db - b da)/2 is exact iff the section integrates a global Hamiltonian.
struct RankOneSection {
    RatFunc a, b;
};

// Errors: InvalidSection when a^2 - s b^2 != 1 identically.
bool section_form_is_exact(const RankOneSection& sec);

}  // namespace polyweyl
