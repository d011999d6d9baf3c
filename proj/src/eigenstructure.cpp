#include "qhiso/eigenstructure.hpp"

#include <cmath>

namespace qhiso {

namespace {

Vec3q normalized_euclidean(const Vec3q& v) {
    double n = std::sqrt(euclidean_norm_sq(v));
    Vec3q r = v;
    for (int i = 0; i < 3; ++i) r[i] = r[i] * (1.0 / n);
    return r;
}

// Greedy selection of `want` quaternionically independent vectors from the
// folded candidates, by modified Gram-Schmidt in the standard positive
// inner product.
std::vector<Vec3q> select_independent(const std::vector<Vec3q>& cands, int want) {
    std::vector<Vec3q> sel;
    for (double floor : {0.25, 1e-12}) {
        for (const auto& cand : cands) {
            if (static_cast<int>(sel.size()) >= want) break;
            Vec3q v = cand;
            for (const auto& s : sel) {
                Quaternion dot;
                for (int i = 0; i < 3; ++i) dot = dot + s[i].conj() * v[i];
                v = v - s * dot;
            }
            if (euclidean_norm_sq(v) > floor * euclidean_norm_sq(cand) + 1e-20)
                sel.push_back(normalized_euclidean(v));
        }
        if (static_cast<int>(sel.size()) >= want) break;
    }
    return sel;
}

Mat3q polynomial_in(const Mat3q& a, bool linear, double root, double c1, double c0) {
    Mat3q p;
    if (linear) {
        p = a;
        for (int i = 0; i < 3; ++i) p.at(i, i) = p.at(i, i) - Quaternion::scalar(root);
    } else {
        p = a * a;
        for (size_t t = 0; t < p.e.size(); ++t) p.e[t] = p.e[t] + a.e[t] * c1;
        for (int i = 0; i < 3; ++i) p.at(i, i) = p.at(i, i) + Quaternion::scalar(c0);
    }
    return p;
}

} // namespace

std::vector<Vec3q> polynomial_kernel(const Mat3q& a, Field field, bool linear, double root,
                                     double c1, double c0, const Tolerances& tol) {
    Mat3q p = polynomial_in(a, linear, root, c1, c0);
    // rank threshold anchored to the polynomial's natural scale, so that a
    // p(A) that ought to vanish (simple elliptic) is not ranked against its
    // own rounding noise
    double coeff_scale = linear ? std::fabs(root) : std::fabs(c1) + std::fabs(c0);
    double s_ref = (1.0 + max_abs_entry(a)) * (linear ? 1.0 : 1.0 + max_abs_entry(a)) + coeff_scale;
    if (field == Field::C) {
        std::array<std::complex<double>, 9> pc;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) pc[static_cast<size_t>(i) * 3 + static_cast<size_t>(j)] =
                complex_part(p.at(i, j));
        SvdResult svd = svd_complex(pc.data(), 3);
        int rank = numeric_rank_abs(svd, tol.rank_rel * s_ref);
        std::vector<Vec3q> out;
        for (int c = rank; c < 3; ++c) {
            Vec3q v;
            for (int r = 0; r < 3; ++r) v[r] = from_complex(svd.V(r, c));
            out.push_back(normalized_euclidean(v));
        }
        return out;
    }
    Mat6c pc = complexify<double>(p);
    SvdResult svd = svd6(pc);
    int rank = numeric_rank_abs(svd, tol.rank_rel * s_ref);
    int nullity = 6 - rank;
    std::vector<Vec3q> cands;
    for (int c = 6 - nullity; c < 6; ++c) {
        Vec6c w;
        for (int r = 0; r < 6; ++r) w[r] = svd.V(r, c);
        cands.push_back(normalized_euclidean(fold_vector(w)));
    }
    return select_independent(cands, nullity / 2);
}

std::vector<Vec3q> eigenvector_basis(const Mat3q& a, Field field, std::complex<double> lambda,
                                     const Tolerances& tol) {
    double s_ref = 1.0 + max_abs_entry(a) + std::abs(lambda);
    std::vector<Vec3q> out;
    if (field == Field::C) {
        std::array<std::complex<double>, 9> pc;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                pc[static_cast<size_t>(i) * 3 + static_cast<size_t>(j)] =
                    complex_part(a.at(i, j)) - (i == j ? lambda : 0.0);
            }
        SvdResult svd = svd_complex(pc.data(), 3);
        int rank = numeric_rank_abs(svd, tol.rank_rel * s_ref);
        for (int c = rank; c < 3; ++c) {
            Vec3q v;
            for (int r = 0; r < 3; ++r) v[r] = from_complex(svd.V(r, c));
            out.push_back(normalized_euclidean(v));
        }
        return out;
    }
    Mat6c pc = complexify<double>(a);
    for (int i = 0; i < 6; ++i) pc.at(i, i) -= lambda;
    SvdResult svd = svd6(pc);
    int rank = numeric_rank_abs(svd, tol.rank_rel * s_ref);
    for (int c = rank; c < 6; ++c) {
        Vec6c w;
        for (int r = 0; r < 6; ++r) w[r] = svd.V(r, c);
        out.push_back(normalized_euclidean(fold_vector(w)));
    }
    return out;
}

std::vector<ClassSpace> eigenclass_spaces(const Mat3q& a, ModelKind m, Field field,
                                          const std::vector<EigenClassInfo>& classes,
                                          const Tolerances& tol) {
    std::vector<ClassSpace> out;
    for (const auto& cls : classes) {
        ClassSpace cs;
        cs.cls = cls;
        bool linear = cls.real_angle;
        double root = cls.modulus * (cls.angle > M_PI_2 ? -1.0 : 1.0);
        double c1 = -2.0 * cls.modulus * std::cos(cls.angle);
        double c0 = cls.modulus * cls.modulus;
        cs.basis = polynomial_kernel(a, field, linear, root, c1, c0, tol);

        int n = static_cast<int>(cs.basis.size());
        if (n == 0) {
            out.push_back(std::move(cs));
            continue;
        }

        // Restricted Hermitian form on the class space.  Over H the n x n
        // quaternionic Gram is complexified to 2n x 2n; over C it is used
        // directly, so eigenvector folds stay complex.
        int n2 = field == Field::H ? 2 * n : n;
        std::vector<std::complex<double>> h(static_cast<size_t>(n2) * static_cast<size_t>(n2));
        auto H = [&](int i, int j) -> std::complex<double>& {
            return h[static_cast<size_t>(i) * static_cast<size_t>(n2) + static_cast<size_t>(j)];
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Quaternion q = inner<double>(cs.basis[static_cast<size_t>(i)],
                                             cs.basis[static_cast<size_t>(j)], m);
                if (field == Field::H) {
                    std::complex<double> z1 = complex_part(q), z2 = jpart(q);
                    H(i, j) = z1;
                    H(i, j + n) = -std::conj(z2);
                    H(i + n, j) = z2;
                    H(i + n, j + n) = std::conj(z1);
                } else {
                    H(i, j) = complex_part(q);
                }
            }
        std::vector<double> eigs;
        std::vector<std::complex<double>> vecs;
        hermitian_eigen(h, n2, eigs, &vecs);
        double scale = 0.0;
        for (double e : eigs) scale = std::max(scale, std::fabs(e));
        double zthr = 1e-5 * std::max(1.0, scale);
        int radical_index = -1;
        for (int i = 0; i < n2; ++i) {
            double e = eigs[static_cast<size_t>(i)];
            if (std::fabs(e) <= zthr) {
                ++cs.sig_zero;
                if (radical_index < 0) radical_index = i;
            } else if (e > 0) {
                ++cs.sig_pos;
            } else {
                ++cs.sig_neg;
            }
        }
        if (field == Field::H) {
            cs.sig_pos /= 2;
            cs.sig_neg /= 2;
            cs.sig_zero /= 2;
        }
        if (radical_index >= 0) {
            std::vector<std::complex<double>> coef(static_cast<size_t>(n2));
            for (int r = 0; r < n2; ++r)
                coef[static_cast<size_t>(r)] =
                    vecs[static_cast<size_t>(r) * static_cast<size_t>(n2) +
                         static_cast<size_t>(radical_index)];
            Vec3q v{};
            for (int i = 0; i < n; ++i) {
                Quaternion gamma = field == Field::H
                                       ? from_parts(coef[static_cast<size_t>(i)],
                                                    coef[static_cast<size_t>(i + n)])
                                       : from_complex(coef[static_cast<size_t>(i)]);
                v = v + cs.basis[static_cast<size_t>(i)] * gamma;
            }
            if (euclidean_norm_sq(v) > 1e-12) cs.radical = normalized_euclidean(v);
        }
        out.push_back(std::move(cs));
    }
    return out;
}

} // namespace qhiso
