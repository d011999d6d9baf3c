#include "qhiso/exact_classify.hpp"

#include <cmath>

#include "qhiso/detail/decision_tree.hpp"
#include "qhiso/embed.hpp"
#include "qhiso/invariants.hpp"

namespace qhiso {

namespace {

using XMat6 = SqMat<XComplex, 6>;

ExactReal max_abs_defect(const XMat3& defect) {
    ExactReal m(0);
    for (const auto& q : defect.e) {
        ExactReal a = max_abs(q);
        if (a > m) m = a;
    }
    return m;
}

// exact kernel of a 6x6 matrix over the field Q(sqrt2)(i)
std::vector<std::array<XComplex, 6>> exact_nullspace(XMat6 m) {
    int pivot_col[6];
    int rank = 0;
    for (int col = 0; col < 6 && rank < 6; ++col) {
        int piv = -1;
        for (int r = rank; r < 6; ++r)
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < 6; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        XComplex inv = XComplex(1) / m.at(rank, col);
        for (int c = 0; c < 6; ++c) m.at(rank, c) = m.at(rank, c) * inv;
        for (int r = 0; r < 6; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            XComplex f = m.at(r, col);
            for (int c = 0; c < 6; ++c) m.at(r, c) = m.at(r, c) - f * m.at(rank, c);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<std::array<XComplex, 6>> basis;
    bool is_pivot[6] = {};
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (int free = 0; free < 6; ++free) {
        if (is_pivot[free]) continue;
        std::array<XComplex, 6> v{};
        v[static_cast<size_t>(free)] = XComplex(1);
        for (int r = 0; r < rank; ++r) v[static_cast<size_t>(pivot_col[r])] = -m.at(r, free);
        basis.push_back(v);
    }
    return basis;
}

int exact_rank(XMat6 m) {
    int rank = 0;
    for (int col = 0; col < 6 && rank < 6; ++col) {
        int piv = -1;
        for (int r = rank; r < 6; ++r)
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < 6; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        XComplex inv = XComplex(1) / m.at(rank, col);
        for (int c = 0; c < 6; ++c) m.at(rank, c) = m.at(rank, c) * inv;
        for (int r = rank + 1; r < 6; ++r) {
            if (m.at(r, col).is_zero()) continue;
            XComplex f = m.at(r, col);
            for (int c = 0; c < 6; ++c) m.at(r, c) = m.at(r, c) - f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

// q(M) for q = x - root (linear) or x^2 + c1 x + c0
XMat6 eval_poly(const XMat6& m, bool linear, const ExactReal& root, const ExactReal& c1,
                const ExactReal& c0) {
    XMat6 p;
    if (linear) {
        p = m;
        for (int i = 0; i < 6; ++i) p.at(i, i) = p.at(i, i) - XComplex(root);
    } else {
        p = m * m;
        for (size_t t = 0; t < p.e.size(); ++t) p.e[t] = p.e[t] + XComplex(c1) * m.e[t];
        for (int i = 0; i < 6; ++i) p.at(i, i) = p.at(i, i) + XComplex(c0);
    }
    return p;
}

int exponent_of(const XMat6& m, bool linear, const ExactReal& root, const ExactReal& c1,
                const ExactReal& c0) {
    XMat6 q = eval_poly(m, linear, root, c1, c0);
    XMat6 power = q;
    int prev = -1, exponent = 1;
    for (int k = 1; k <= 4; ++k) {
        int rk = exact_rank(power);
        if (rk == prev) {
            exponent = k - 1;
            break;
        }
        prev = rk;
        exponent = k;
        if (rk == 0) break;
        power = power * q;
    }
    return exponent;
}

// signature of an exact Hermitian form given by its Gram matrix, by
// congruence reduction with basis vectors carried explicitly
struct Signature {
    int pos = 0, neg = 0, zero = 0;
};

Signature exact_signature(std::vector<std::vector<XComplex>> gram) {
    size_t n = gram.size();
    // basis coefficient vectors
    std::vector<std::vector<XComplex>> basis(n, std::vector<XComplex>(n));
    for (size_t i = 0; i < n; ++i) basis[i][i] = XComplex(1);
    auto form = [&](const std::vector<XComplex>& u, const std::vector<XComplex>& v) {
        XComplex acc;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) acc += conj(u[i]) * gram[i][j] * v[j];
        return acc;
    };
    Signature sig;
    std::vector<std::vector<XComplex>> work = basis;
    while (!work.empty()) {
        // prefer a vector with nonzero self-pairing
        int chosen = -1;
        for (size_t i = 0; i < work.size(); ++i)
            if (!form(work[i], work[i]).is_zero()) {
                chosen = static_cast<int>(i);
                break;
            }
        if (chosen < 0) {
            // all isotropic: look for a nonzero cross pairing and recombine
            int bi = -1, bj = -1;
            XComplex z;
            for (size_t i = 0; i < work.size() && bi < 0; ++i)
                for (size_t j = i + 1; j < work.size(); ++j) {
                    z = form(work[i], work[j]);
                    if (!z.is_zero()) {
                        bi = static_cast<int>(i);
                        bj = static_cast<int>(j);
                        break;
                    }
                }
            if (bi < 0) {
                sig.zero += static_cast<int>(work.size());
                break;
            }
            for (size_t c = 0; c < n; ++c)
                work[static_cast<size_t>(bi)][c] += conj(z) * work[static_cast<size_t>(bj)][c];
            continue;
        }
        std::vector<XComplex> pivot = work[static_cast<size_t>(chosen)];
        XComplex pp = form(pivot, pivot);
        sig.pos += pp.re.sign() > 0 ? 1 : 0;
        sig.neg += pp.re.sign() < 0 ? 1 : 0;
        std::vector<std::vector<XComplex>> next;
        for (size_t i = 0; i < work.size(); ++i) {
            if (static_cast<int>(i) == chosen) continue;
            XComplex coef = form(pivot, work[i]) / pp;
            std::vector<XComplex> v = work[i];
            for (size_t c = 0; c < n; ++c) v[c] -= coef * pivot[c];
            next.push_back(std::move(v));
        }
        work = std::move(next);
    }
    return sig;
}

// Gram of the folded kernel vectors under the model form, complexified.
// A spanning (possibly dependent) set is fine for sign counts.
bool kernel_hosts_negative(const XMat3& a, ModelKind m, bool linear, const ExactReal& root,
                           const ExactReal& c1, const ExactReal& c0) {
    XMat3 p;
    if (linear) {
        p = a;
        for (int i = 0; i < 3; ++i) p.at(i, i) = p.at(i, i) - XQuat::scalar(root);
    } else {
        p = a * a;
        for (size_t t = 0; t < p.e.size(); ++t) p.e[t] = p.e[t] + a.e[t] * c1;
        for (int i = 0; i < 3; ++i) p.at(i, i) = p.at(i, i) + XQuat::scalar(c0);
    }
    auto null_basis = exact_nullspace(complexify<ExactReal>(p));
    size_t k = null_basis.size();
    if (k == 0) return false;
    // fold to quaternionic vectors
    std::vector<std::array<XQuat, 3>> vecs;
    for (const auto& w : null_basis) {
        std::array<XQuat, 3> v;
        for (int i = 0; i < 3; ++i) {
            const XComplex& z1 = w[static_cast<size_t>(i)];
            const XComplex& z2 = w[static_cast<size_t>(i + 3)];
            v[static_cast<size_t>(i)] = XQuat(z1.re, z1.im, z2.re, -z2.im);
        }
        vecs.push_back(v);
    }
    auto qinner = [&](const std::array<XQuat, 3>& z, const std::array<XQuat, 3>& w2) {
        if (m == ModelKind::Ball)
            return -(z[0].conj() * w2[0]) + z[1].conj() * w2[1] + z[2].conj() * w2[2];
        return -(z[0].conj() * w2[1]) - z[1].conj() * w2[0] + z[2].conj() * w2[2];
    };
    // complexified Gram of the quaternionic Gram
    size_t n2 = 2 * k;
    std::vector<std::vector<XComplex>> h(n2, std::vector<XComplex>(n2));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            XQuat q = qinner(vecs[i], vecs[j]);
            XComplex z1(q.w, q.x), z2(q.y, -q.z);
            h[i][j] = z1;
            h[i][j + k] = -conj(z2);
            h[i + k][j] = z2;
            h[i + k][j + k] = conj(z1);
        }
    return exact_signature(std::move(h)).neg > 0;
}

ExactReal sylvester_resultant(const ExactReal& a, const ExactReal& b, const ExactReal& c) {
    // det of the 4x4 Sylvester matrix of g = t^3 - a t^2 + (b-3) t - (c-2a)
    // and g'' = 6t - 2a, by exact elimination
    ExactReal p = -a, q = b - ExactReal(3), r = -(c - ExactReal(2) * a);
    ExactReal m[16] = {ExactReal(1), p, q, r,
                       ExactReal(6), ExactReal(-2) * a, ExactReal(0), ExactReal(0),
                       ExactReal(0), ExactReal(6), ExactReal(-2) * a, ExactReal(0),
                       ExactReal(0), ExactReal(0), ExactReal(6), ExactReal(-2) * a};
    ExactReal det(1);
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int row = col; row < 4; ++row)
            if (!m[row * 4 + col].is_zero()) {
                piv = row;
                break;
            }
        if (piv < 0) return ExactReal(0);
        if (piv != col) {
            for (int cc = 0; cc < 4; ++cc) std::swap(m[piv * 4 + cc], m[col * 4 + cc]);
            det = -det;
        }
        det = det * m[col * 4 + col];
        for (int row = col + 1; row < 4; ++row) {
            if (m[row * 4 + col].is_zero()) continue;
            ExactReal f = m[row * 4 + col] / m[col * 4 + col];
            for (int cc = col; cc < 4; ++cc) m[row * 4 + cc] = m[row * 4 + cc] - f * m[col * 4 + cc];
        }
    }
    return det;
}

} // namespace

ExactReal membership_residual_exact(const XMat3& a, ModelKind m) {
    return max_abs_defect(form_defect<ExactReal>(a, m));
}

ExactReal resultant_check_exact(const ExactReal& a, const ExactReal& b, const ExactReal& c) {
    ExactReal g = ExactReal(27) * (a - c) + ExactReal(9) * a * b - ExactReal(2) * a * a * a;
    return (sylvester_resultant(a, b, c) + ExactReal(8) * g).abs();
}

XMat3 cayley_conjugate_exact(const XMat3& a, CayleyDirection dir) {
    XMat3 cm = cayley_matrix<ExactReal>(ExactReal::sqrt2_half());
    XMat3 cinv = cm.adjoint();
    return dir == CayleyDirection::BallToSiegel ? cm * a * cinv : cinv * a * cm;
}

XQuat exact_quaternion_from_strings(const std::string& w, const std::string& x,
                                    const std::string& y, const std::string& z) {
    return XQuat(parse_exact_real(w), parse_exact_real(x), parse_exact_real(y),
                 parse_exact_real(z));
}

ExactClassifyResult classify_exact(const XMat3& a, ModelKind m, Field field) {
    ExactReal res = membership_residual_exact(a, m);
    if (!res.is_zero()) throw membership_error(res.to_double());

    std::array<XComplex, 7> coeff;
    XMat6 m6;
    if (field == Field::H) {
        m6 = complexify<ExactReal>(a);
        coeff = char_poly_coeffs<XComplex>(m6);
    } else {
        SqMat<ExactReal, 6> mr = realify(a);
        auto cr = char_poly_coeffs<ExactReal>(mr);
        for (int k = 0; k <= 6; ++k) coeff[static_cast<size_t>(k)] = XComplex(cr[static_cast<size_t>(k)]);
        // the complex 6x6 view drives the rank computations either way
        m6 = complexify<ExactReal>(a);
    }
    for (const auto& ck : coeff)
        if (!ck.im.is_zero())
            throw malformed_input_error("classify_exact: complex characteristic coefficients");
    if (!(coeff[1].re == coeff[5].re) || !(coeff[2].re == coeff[4].re) ||
        !(coeff[6].re == ExactReal(1)))
        throw malformed_input_error("classify_exact: characteristic polynomial is not self-dual");

    ExactClassifyResult out;
    ExactReal a_ = -coeff[1].re, b_ = coeff[2].re, c_ = -coeff[3].re;
    ExactReal G = ExactReal(27) * (a_ - c_) + ExactReal(9) * a_ * b_ - ExactReal(2) * a_ * a_ * a_;
    ExactReal H = ExactReal(3) * (b_ - ExactReal(3)) - a_ * a_;
    ExactReal Delta = G * G + ExactReal(4) * H * H * H;
    out.inv = ExactInvariants{a_, b_, c_, G, H, Delta, 0};

    detail::TreeInputs in;
    in.sign_delta = Delta.sign();
    in.g_zero = G.is_zero();
    in.abc_unipotent = a_ == ExactReal(6) && b_ == ExactReal(15) && c_ == ExactReal(20);

    // resolvent g(t) = t^3 + p t^2 + q t + r over Q(sqrt2)
    ExactReal p = -a_, q = b_ - ExactReal(3), r = -(c_ - ExactReal(2) * a_);
    ExactReal t0, t1;
    bool have_t0 = false;
    std::vector<EigenClassInfo> classes;
    int min_degree = 3;
    bool hosts_for_two = false; // repeated class hosts the negative line

    if (in.sign_delta == 0) {
        if (in.g_zero) {
            t0 = a_ / ExactReal(3); // triple root
            have_t0 = true;
            // single class, exponent of its factor
            bool real_angle = (t0 == ExactReal(2)) || (t0 == ExactReal(-2));
            bool lin = real_angle;
            ExactReal root = t0.sign() >= 0 ? ExactReal(1) : ExactReal(-1);
            min_degree = exponent_of(m6, lin, root, -t0, ExactReal(1));
            EigenClassInfo c;
            c.modulus = 1.0;
            c.angle = std::acos(std::max(-1.0, std::min(1.0, t0.to_double() / 2.0)));
            if (real_angle) c.angle = t0.sign() >= 0 ? 0.0 : M_PI;
            c.multiplicity = 3;
            c.unit_modulus = true;
            c.real_angle = real_angle;
            c.hosts_negative = true;
            classes.push_back(c);
        } else {
            // double root from one exact Euclidean step: remainder of g by g'
            // is linear alpha t + beta and t0 = -beta/alpha
            ExactReal three(3);
            ExactReal alpha = (ExactReal(2) * q) / three - (ExactReal(2) * p * p) / ExactReal(9);
            ExactReal beta = r - (p * q) / ExactReal(9);
            if (alpha.is_zero()) throw malformed_input_error("classify_exact: degenerate resolvent");
            t0 = -beta / alpha;
            t1 = -p - ExactReal(2) * t0;
            have_t0 = true;
            ExactReal t0sq = t0 * t0;
            in.double_root_off_circle = (t0sq - ExactReal(4)).sign() > 0;

            ExactReal lhs = ExactReal(16) * (a_ + c_) * (a_ + c_);
            ExactReal rhs_base = a_ * a_ + ExactReal(4) * b_ + ExactReal(8);
            in.strict_identity_holds = lhs == rhs_base * rhs_base;

            auto push_unit = [&](const ExactReal& t, int mult, bool hosts) {
                EigenClassInfo c;
                c.modulus = 1.0;
                bool real_angle = (t == ExactReal(2)) || (t == ExactReal(-2));
                c.angle = real_angle ? (t.sign() >= 0 ? 0.0 : M_PI)
                                     : std::acos(std::max(-1.0, std::min(1.0, t.to_double() / 2.0)));
                c.multiplicity = mult;
                c.unit_modulus = true;
                c.real_angle = real_angle;
                c.hosts_negative = hosts;
                classes.push_back(c);
            };
            if (in.double_root_off_circle) {
                // off-circle pair from t0, unit class from t1
                double t0d = t0.to_double();
                double lam = (t0d + (t0d >= 0 ? 1.0 : -1.0) * std::sqrt(t0d * t0d - 4.0)) / 2.0;
                for (double v : {lam, 1.0 / lam}) {
                    EigenClassInfo c;
                    c.modulus = std::fabs(v);
                    c.angle = v >= 0 ? 0.0 : M_PI;
                    c.multiplicity = 1;
                    c.unit_modulus = false;
                    c.real_angle = true;
                    classes.push_back(c);
                }
                push_unit(t1, 1, false);
                min_degree = 3;
            } else {
                // unit double class t0 and unit simple class t1: exponent of
                // the t0 factor decides complex elliptic vs screw parabolic
                bool lin0 = (t0 == ExactReal(2)) || (t0 == ExactReal(-2));
                ExactReal root0 = t0.sign() >= 0 ? ExactReal(1) : ExactReal(-1);
                int e0 = exponent_of(m6, lin0, root0, -t0, ExactReal(1));
                min_degree = e0 + 1;
                hosts_for_two = kernel_hosts_negative(a, m, lin0, root0, -t0, ExactReal(1));
                push_unit(t0, 2, hosts_for_two);
                push_unit(t1, 1, !hosts_for_two);
            }
        }
    } else {
        min_degree = 3; // distinct classes, semisimple
        // presentation classes from the floating resolvent; exact reality
        // flags from g(+-2) = 0
        ResolventCubic cub = resolvent(a_.to_double(), b_.to_double(), c_.to_double());
        auto geval = [&](const ExactReal& t) {
            return ((t + p) * t + q) * t + r;
        };
        bool root_at_2 = geval(ExactReal(2)).is_zero();
        bool root_at_m2 = geval(ExactReal(-2)).is_zero();
        for (const auto& root : cub.roots) {
            if (std::fabs(root.value.imag()) > 0) {
                if (root.value.imag() < 0) continue;
                std::complex<double> t = root.value;
                std::complex<double> s = std::sqrt(t * t - 4.0);
                std::complex<double> lam = (t + s) / 2.0;
                if (std::abs(lam) < 1.0) lam = (t - s) / 2.0;
                for (std::complex<double> v : {lam, 1.0 / lam}) {
                    EigenClassInfo c;
                    c.modulus = std::abs(v);
                    c.angle = std::fabs(std::arg(v));
                    c.multiplicity = 1;
                    c.unit_modulus = false;
                    c.real_angle = false;
                    classes.push_back(c);
                }
                continue;
            }
            EigenClassInfo c;
            c.modulus = 1.0;
            double t = root.value.real();
            bool is2 = root_at_2 && std::fabs(t - 2.0) < 1e-6;
            bool ism2 = root_at_m2 && std::fabs(t + 2.0) < 1e-6;
            c.angle = is2 ? 0.0 : (ism2 ? M_PI : std::acos(std::max(-1.0, std::min(1.0, t / 2.0))));
            c.multiplicity = 1;
            c.unit_modulus = std::fabs(t) <= 2.0;
            if (!c.unit_modulus) {
                // cannot occur for members (odd pair multiplicity); keep data sane
                c.modulus = std::fabs(t);
            }
            c.real_angle = is2 || ism2;
            classes.push_back(c);
        }
    }

    in.min_degree = min_degree;
    out.inv.min_degree = min_degree;
    DynamicalType t = detail::decide(in);
    out.is_identity = in.abc_unipotent && min_degree == 1;
    out.dtype = collapse_for_field(t, field);

    Classification& pres = out.presentation;
    pres.dtype = out.dtype;
    pres.field = field;
    pres.model = m;
    pres.is_identity = out.is_identity;
    pres.borderline = false;
    pres.inv.a = a_.to_double();
    pres.inv.b = b_.to_double();
    pres.inv.c = c_.to_double();
    pres.inv.G = G.to_double();
    pres.inv.H = H.to_double();
    pres.inv.Delta = Delta.to_double();
    pres.inv.min_degree = min_degree;
    pres.inv.self_dual_residual = 0.0;
    pres.inv.membership_residual = 0.0;
    pres.eigen_classes = classes;
    pres.diagnostics = "exact arithmetic over Q(sqrt2)";
    (void)have_t0;
    return out;
}

} // namespace qhiso
