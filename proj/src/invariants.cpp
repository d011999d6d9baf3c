#include "qhiso/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qhiso {

namespace {

CharPoly6 realize(const std::array<std::complex<double>, 7>& c, const Tolerances& tol,
                  bool check_imag) {
    CharPoly6 p;
    double scale = 0.0;
    for (const auto& z : c) scale = std::max(scale, std::abs(z));
    double imag = 0.0;
    for (int k = 0; k <= 6; ++k) {
        p.coeff[static_cast<size_t>(k)] = c[static_cast<size_t>(k)].real();
        imag = std::max(imag, std::fabs(c[static_cast<size_t>(k)].imag()));
    }
    p.imag_residual = imag;
    if (check_imag && imag > tol.rel * (1.0 + scale))
        throw malformed_input_error("char_poly: complex coefficients (input is not a group embedding)");
    p.self_dual_residual = std::max({std::fabs(p.coeff[1] - p.coeff[5]),
                                     std::fabs(p.coeff[2] - p.coeff[4]),
                                     std::fabs(p.coeff[6] - p.coeff[0])});
    return p;
}

} // namespace

CharPoly6 char_poly(const Mat6c& m, const Tolerances& tol) {
    auto c = char_poly_coeffs<std::complex<double>>(m);
    return realize(c, tol, true);
}

CharPoly6 char_poly(const Mat6d& m) {
    auto cr = char_poly_coeffs<double>(m);
    std::array<std::complex<double>, 7> c;
    for (int k = 0; k <= 6; ++k) c[static_cast<size_t>(k)] = cr[static_cast<size_t>(k)];
    return realize(c, Tolerances{}, false);
}

std::array<double, 3> extract_abc(const CharPoly6& p, const Tolerances& tol) {
    double scale = 0.0;
    for (double c : p.coeff) scale = std::max(scale, std::fabs(c));
    if (p.self_dual_residual > tol.rel * (1.0 + scale))
        throw malformed_input_error("extract_abc: polynomial is not self-dual (input is not a group member)");
    return {-p.coeff[1], p.coeff[2], -p.coeff[3]};
}

GHD ghd(double a, double b, double c) {
    GHD r;
    r.G = 27.0 * (a - c) + 9.0 * a * b - 2.0 * a * a * a;
    r.H = 3.0 * (b - 3.0) - a * a;
    r.Delta = r.G * r.G + 4.0 * r.H * r.H * r.H;
    return r;
}

double delta_sign_scale(double G, double H) {
    return std::max({1.0, G * G, std::fabs(H * H * H)});
}

double g_sign_scale(double a, double b, double c) {
    return std::max(1.0, 27.0 * (std::fabs(a) + std::fabs(c)) + 9.0 * std::fabs(a * b) +
                             2.0 * std::fabs(a * a * a));
}

namespace {

struct CubicCoeffs {
    double p, q, r; // t^3 + p t^2 + q t + r
};

inline CubicCoeffs cubic_of(double a, double b, double c) {
    return {-a, b - 3.0, -(c - 2.0 * a)};
}

inline double eval_cubic(const CubicCoeffs& g, double t) {
    return ((t + g.p) * t + g.q) * t + g.r;
}

// Roots without multiplicity assignment; may return 1 or 3 real values, plus
// an optional complex pair.
struct RawRoots {
    int n_real = 0;
    double real[3] = {0, 0, 0};
    bool has_pair = false;
    std::complex<double> pair;
};

// delta_sign is the already-decided (tolerance-scaled) sign of Delta, so the
// branch taken here always matches the classifier's decision.
RawRoots solve_cubic(const CubicCoeffs& g, int delta_sign) {
    RawRoots out;
    const double p = g.p, q = g.q, r = g.r;
    double P = q - p * p / 3.0;
    double Q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    double disc = Q * Q / 4.0 + P * P * P / 27.0;
    double shift = -p / 3.0;
    if (delta_sign > 0) {
        double sq = std::sqrt(std::max(disc, 0.0));
        double u3 = -Q / 2.0 + (Q <= 0 ? sq : -sq); // avoid cancellation
        double u = std::cbrt(u3);
        double v = u == 0.0 ? 0.0 : -P / (3.0 * u);
        double s1 = u + v;
        out.n_real = 1;
        out.real[0] = s1 + shift;
        // deflate: s^2 + s1 s + (P + s1^2)
        double im2 = 3.0 * s1 * s1 + 4.0 * P;
        out.has_pair = true;
        out.pair = {-s1 / 2.0 + shift, 0.5 * std::sqrt(std::max(im2, 0.0))};
        return out;
    }
    double m = 2.0 * std::sqrt(std::max(-P, 0.0) / 3.0);
    double arg = m > 0.0 ? std::clamp(3.0 * Q / (P * m), -1.0, 1.0) : 0.0;
    double phi = std::acos(arg) / 3.0;
    out.n_real = 3;
    for (int k = 0; k < 3; ++k)
        out.real[k] = m * std::cos(phi - 2.0 * M_PI * k / 3.0) + shift;
    return out;
}

void polish_real_root(const CubicCoeffs& g, double& t) {
    for (int it = 0; it < 3; ++it) {
        double f = eval_cubic(g, t);
        double df = (3.0 * t + 2.0 * g.p) * t + g.q;
        if (df == 0.0) break;
        double step = f / df;
        if (!std::isfinite(step)) break;
        t -= step;
    }
}

} // namespace

double resolvent_double_root(double a, double b, double c) {
    CubicCoeffs g = cubic_of(a, b, c);
    double disc2 = g.p * g.p - 3.0 * g.q;
    if (disc2 <= 0.0) return -g.p / 3.0;
    double sq = std::sqrt(disc2);
    double c1 = (-g.p + sq) / 3.0, c2 = (-g.p - sq) / 3.0;
    return std::fabs(eval_cubic(g, c1)) <= std::fabs(eval_cubic(g, c2)) ? c1 : c2;
}

ResolventCubic resolvent(double a, double b, double c, const Tolerances& tol) {
    ResolventCubic out;
    out.a = a;
    out.b = b;
    out.c = c;
    CubicCoeffs g = cubic_of(a, b, c);
    out.coeff = {1.0, g.p, g.q, g.r};

    GHD inv = ghd(a, b, c);
    double dscale = delta_sign_scale(inv.G, inv.H);
    double gscale = g_sign_scale(a, b, c);
    bool delta_zero = std::fabs(inv.Delta) <= tol.rel * dscale;
    bool g_zero = std::fabs(inv.G) <= tol.rel * gscale;

    if (delta_zero && g_zero) {
        out.roots.push_back({{a / 3.0, 0.0}, 3});
        return out;
    }
    if (delta_zero) {
        double t0 = resolvent_double_root(a, b, c);
        double t1 = -g.p - 2.0 * t0;
        polish_real_root(g, t1);
        out.roots.push_back({{t0, 0.0}, 2});
        out.roots.push_back({{t1, 0.0}, 1});
        return out;
    }

    RawRoots raw = solve_cubic(g, inv.Delta > 0 ? 1 : -1);
    if (raw.has_pair) {
        polish_real_root(g, raw.real[0]);
        out.roots.push_back({{raw.real[0], 0.0}, 1});
        out.roots.push_back({raw.pair, 1});
        out.roots.push_back({std::conj(raw.pair), 1});
        return out;
    }
    for (int k = 0; k < raw.n_real; ++k) polish_real_root(g, raw.real[k]);
    // cluster by |ti - tj| <= root_cluster * (1 + max |t|)
    double maxt = std::max({std::fabs(raw.real[0]), std::fabs(raw.real[1]), std::fabs(raw.real[2])});
    double thr = tol.root_cluster * (1.0 + maxt);
    std::sort(raw.real, raw.real + raw.n_real);
    int i = 0;
    while (i < raw.n_real) {
        int j = i;
        while (j + 1 < raw.n_real && raw.real[j + 1] - raw.real[i] <= thr) ++j;
        int mult = j - i + 1;
        double t = raw.real[i + (j - i) / 2];
        if (mult == 2) t = resolvent_double_root(a, b, c);
        if (mult == 3) t = a / 3.0;
        out.roots.push_back({{t, 0.0}, mult});
        i = j + 1;
    }
    return out;
}

double resultant_check(double a, double b, double c) {
    CubicCoeffs g = cubic_of(a, b, c);
    // Sylvester matrix of (t^3 + p t^2 + q t + r, 6t - 2a): one row of the
    // cubic, three shifted rows of the linear factor.
    double m[16] = {1, g.p, g.q, g.r,
                    6, -2 * a, 0, 0,
                    0, 6, -2 * a, 0,
                    0, 0, 6, -2 * a};
    // 4x4 determinant by elimination
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r2 = col + 1; r2 < 4; ++r2)
            if (std::fabs(m[r2 * 4 + col]) > std::fabs(m[piv * 4 + col])) piv = r2;
        if (m[piv * 4 + col] == 0.0) return std::fabs(8.0 * ghd(a, b, c).G);
        if (piv != col) {
            for (int cc = 0; cc < 4; ++cc) std::swap(m[piv * 4 + cc], m[col * 4 + cc]);
            det = -det;
        }
        det *= m[col * 4 + col];
        for (int r2 = col + 1; r2 < 4; ++r2) {
            double f = m[r2 * 4 + col] / m[col * 4 + col];
            for (int cc = col; cc < 4; ++cc) m[r2 * 4 + cc] -= f * m[col * 4 + cc];
        }
    }
    return std::fabs(det + 8.0 * ghd(a, b, c).G);
}

namespace {

std::string factor_text(const FactorPower& f) {
    char buf[96];
    if (f.linear)
        std::snprintf(buf, sizeof buf, "(x %c %.6g)^%d", f.root >= 0 ? '-' : '+',
                      std::fabs(f.root), f.exponent);
    else
        std::snprintf(buf, sizeof buf, "(x^2 %c %.6g x + %.6g)^%d", f.c1 >= 0 ? '+' : '-',
                      std::fabs(f.c1), f.c0, f.exponent);
    return buf;
}

MinimalPolyStructure structure_impl(const Mat6c& m, const Tolerances& tol) {
    CharPoly6 p = char_poly(m, tol);
    auto abc = extract_abc(p, tol);
    ResolventCubic res = resolvent(abc[0], abc[1], abc[2], tol);

    MinimalPolyStructure out;
    double band = tol.root_cluster * 10.0;
    for (const auto& root : res.roots) {
        if (std::fabs(root.value.imag()) > 0) {
            if (root.value.imag() < 0) continue; // conjugate partner already handled
            // t complex: lambda + 1/lambda = t with |lambda| > 1 gives the two
            // real quadratics (x^2 - 2 Re(lambda) x + |lambda|^2) and its
            // reciprocal partner.
            std::complex<double> t = root.value;
            std::complex<double> s = std::sqrt(t * t - 4.0);
            std::complex<double> lam = (t + s) / 2.0;
            if (std::abs(lam) < 1.0) lam = (t - s) / 2.0;
            std::complex<double> mu = 1.0 / lam;
            FactorPower f1{false, 0, -2.0 * lam.real(), std::norm(lam), root.multiplicity, 1, ""};
            FactorPower f2{false, 0, -2.0 * mu.real(), std::norm(mu), root.multiplicity, 1, ""};
            out.factors.push_back(f1);
            out.factors.push_back(f2);
            continue;
        }
        double t = root.value.real();
        if (std::fabs(std::fabs(t) - 2.0) <= band) {
            double sign = t >= 0 ? 1.0 : -1.0;
            out.factors.push_back({true, sign, 0, 0, 2 * root.multiplicity, 1, ""});
        } else if (std::fabs(t) > 2.0) {
            double lam = (t + (t >= 0 ? 1.0 : -1.0) * std::sqrt(t * t - 4.0)) / 2.0;
            double mu = 1.0 / lam;
            out.factors.push_back({true, lam, 0, 0, root.multiplicity, 1, ""});
            out.factors.push_back({true, mu, 0, 0, root.multiplicity, 1, ""});
        } else {
            out.factors.push_back({false, 0, -t, 1.0, root.multiplicity, 1, ""});
        }
    }

    // Exponent of each factor in the minimal polynomial: smallest k with
    // rank q(M)^k = rank q(M)^(k+1).  Factors of char-poly multiplicity 1
    // are forced to exponent 1.
    Mat6c m2 = m * m;
    for (auto& f : out.factors) {
        if (f.chi_multiplicity <= 1) {
            f.exponent = 1;
            f.text = factor_text(f);
            continue;
        }
        Mat6c q;
        if (f.linear) {
            q = m;
            for (int i = 0; i < 6; ++i) q.at(i, i) -= f.root;
        } else {
            q = m2;
            for (size_t t2 = 0; t2 < q.e.size(); ++t2) q.e[t2] += f.c1 * m.e[t2];
            for (int i = 0; i < 6; ++i) q.at(i, i) += f.c0;
        }
        Mat6c power = q;
        // threshold anchored to the first power: sigma_max(q(M))^k
        double s1 = std::max(svd6(q).sigma[0], 1e-300);
        int prev_rank = -1;
        int exponent = 1;
        double scale_k = 1.0;
        for (int k = 1; k <= 4; ++k) {
            scale_k *= s1;
            bool bl = false;
            int rk = numeric_rank_abs(svd6(power), tol.rank_rel * scale_k, &bl,
                                      tol.borderline_factor);
            out.borderline = out.borderline || bl;
            if (rk == prev_rank) {
                exponent = k - 1;
                break;
            }
            prev_rank = rk;
            exponent = k;
            if (rk == 0) break; // q(M)^k vanished; exponent is k
            power = power * q;
        }
        f.exponent = exponent;
        f.text = factor_text(f);
    }
    for (auto& f : out.factors)
        if (f.text.empty()) f.text = factor_text(f);

    out.min_degree = 0;
    for (const auto& f : out.factors) out.min_degree += f.exponent;
    return out;
}

} // namespace

MinimalPolyStructure minimal_poly_structure(const Mat6c& m, const Tolerances& tol) {
    return structure_impl(m, tol);
}

MinimalPolyStructure minimal_poly_structure(const Mat6d& m, const Tolerances& tol) {
    Mat6c c;
    for (size_t t = 0; t < m.e.size(); ++t) c.e[t] = m.e[t];
    return structure_impl(c, tol);
}

} // namespace qhiso
