#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qhiso/linalg.hpp"
#include "qhiso/tolerances.hpp"

namespace qhiso {

struct malformed_input_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Faddeev-LeVerrier trace recursion.  Returns the monic coefficients
/// p[0..6] of chi(x) = p0 x^6 + p1 x^5 + ... + p6 with p0 = 1.
/// Division-free apart from the exact integer divisions of the recursion,
/// so the result is exact over an exact scalar.
template <class T>
std::array<T, 7> char_poly_coeffs(const SqMat<T, 6>& m) {
    std::array<T, 7> p;
    p[0] = T(1);
    SqMat<T, 6> mk = m;
    for (int k = 1; k <= 6; ++k) {
        T ck = -mk.trace() / T(k);
        p[static_cast<size_t>(k)] = ck;
        if (k < 6) {
            SqMat<T, 6> shifted = mk;
            for (int i = 0; i < 6; ++i) shifted.at(i, i) = shifted.at(i, i) + ck;
            mk = m * shifted;
        }
    }
    return p;
}

/// Monic real sextic with the palindromic-residual report.
struct CharPoly6 {
    std::array<double, 7> coeff{}; // coeff[k] multiplies x^(6-k); coeff[0] = 1
    double self_dual_residual = 0.0;
    double imag_residual = 0.0;
};

CharPoly6 char_poly(const Mat6c& m, const Tolerances& tol = {});
CharPoly6 char_poly(const Mat6d& m);

/// (a, b, c) from chi = x^6 - a x^5 + b x^4 - c x^3 + b x^2 - a x + 1.
/// Rejects polynomials whose self-dual residual exceeds the gate.
std::array<double, 3> extract_abc(const CharPoly6& p, const Tolerances& tol = {});

struct GHD {
    double G, H, Delta;
};
/// G = 27(a-c) + 9ab - 2a^3,  H = 3(b-3) - a^2,  Delta = G^2 + 4H^3.
GHD ghd(double a, double b, double c);

/// The cubic g(t) = t^3 - a t^2 + (b-3) t - (c-2a) obtained from chi by the
/// substitution t = x + 1/x, with roots clustered by multiplicity.
struct ResolventCubic {
    double a = 0, b = 0, c = 0;
    std::array<double, 4> coeff{}; // monic: t^3 + coeff[1] t^2 + coeff[2] t + coeff[3]
    struct Root {
        std::complex<double> value;
        int multiplicity;
    };
    std::vector<Root> roots; // multiplicities sum to 3; conjugate pairs appear as two entries
};

ResolventCubic resolvent(double a, double b, double c, const Tolerances& tol = {});

/// Double root of g under the hypothesis Delta = 0, G != 0: the critical
/// point of g at which |g| is smallest (an exact root of g', so it is
/// obtained at full precision rather than sqrt(eps)).
double resolvent_double_root(double a, double b, double c);

/// |R(g, g'') + 8G| where the resultant R is evaluated independently as the
/// 4x4 Sylvester determinant of g and g'' = 6t - 2a.
double resultant_check(double a, double b, double c);

/// One irreducible real factor of chi with its char-poly multiplicity and
/// its exponent in the minimal polynomial (the largest Jordan block).
struct FactorPower {
    bool linear;       // (x - root) vs (x^2 + c1 x + c0)
    double root = 0;   // linear root
    double c1 = 0, c0 = 0;
    int chi_multiplicity = 0;
    int exponent = 0;
    std::string text;
};

/// Real irreducible factor structure of the minimal polynomial of a 6x6
/// embedding, with min_degree = sum of exponents over distinct factors
/// (one term per eigenvalue similarity class, weighted by largest Jordan
/// block -- the quaternionic minimal-polynomial degree).
struct MinimalPolyStructure {
    std::vector<FactorPower> factors;
    int min_degree = 0;
    bool borderline = false;
};

MinimalPolyStructure minimal_poly_structure(const Mat6c& m, const Tolerances& tol = {});
MinimalPolyStructure minimal_poly_structure(const Mat6d& m, const Tolerances& tol = {});

/// The (a,b,c,G,H,Delta, minimal-degree) tuple driving classification.
struct InvariantRecord {
    double a = 0, b = 0, c = 0;
    double G = 0, H = 0, Delta = 0;
    int min_degree = 0;
    std::vector<FactorPower> factor_structure;
    double self_dual_residual = 0;
    double membership_residual = 0;
    Tolerances tol_used;
};

/// Scale used for sign decisions on Delta: tol * max(1, G^2, |H|^3).
double delta_sign_scale(double G, double H);
/// Scale for sign decisions on G: tol * max(1, sum of |term|).
double g_sign_scale(double a, double b, double c);

} // namespace qhiso
