#include "qhiso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhiso {

double max_abs_entry(const Mat3q& m) {
    double r = 0.0;
    for (const auto& q : m.e) r = std::max(r, max_component(q));
    return r;
}

double max_abs_entry(const Mat6c& m) {
    double r = 0.0;
    for (const auto& z : m.e) r = std::max(r, std::max(std::fabs(z.real()), std::fabs(z.imag())));
    return r;
}

SvdResult svd_complex(const std::complex<double>* data, int n) {
    std::array<std::complex<double>, 36> a{};
    std::array<std::complex<double>, 36> v{};
    auto A = [&](int i, int j) -> std::complex<double>& {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    };
    auto Vm = [&](int i, int j) -> std::complex<double>& {
        return v[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    };
    for (int i = 0; i < n * n; ++i) a[static_cast<size_t>(i)] = data[i];
    for (int i = 0; i < n; ++i) Vm(i, i) = 1.0;
    const double eps = 1e-15;

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                std::complex<double> apq = 0.0;
                for (int r = 0; r < n; ++r) {
                    app += std::norm(A(r, p));
                    aqq += std::norm(A(r, q));
                    apq += std::conj(A(r, p)) * A(r, q);
                }
                double mag = std::abs(apq);
                if (mag <= eps * std::sqrt(app * aqq) + 1e-300) continue;
                converged = false;
                std::complex<double> phase = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                // columns (p,q) <- (p,q) * [[c, s*phase], [-s*conj(phase), c]]
                for (int r = 0; r < n; ++r) {
                    auto xp = A(r, p), xq = A(r, q);
                    A(r, p) = xp * c - xq * s * std::conj(phase);
                    A(r, q) = xp * s * phase + xq * c;
                    auto vp = Vm(r, p), vq = Vm(r, q);
                    Vm(r, p) = vp * c - vq * s * std::conj(phase);
                    Vm(r, q) = vp * s * phase + vq * c;
                }
            }
        }
        if (converged) break;
    }

    SvdResult out;
    out.n = n;
    std::array<int, 6> order{};
    std::array<double, 6> sig{};
    for (int c = 0; c < n; ++c) {
        order[static_cast<size_t>(c)] = c;
        double nn = 0.0;
        for (int r = 0; r < n; ++r) nn += std::norm(A(r, c));
        sig[static_cast<size_t>(c)] = std::sqrt(nn);
    }
    std::sort(order.begin(), order.begin() + n, [&](int i, int j) {
        return sig[static_cast<size_t>(i)] > sig[static_cast<size_t>(j)];
    });
    for (int c = 0; c < n; ++c) {
        out.sigma[static_cast<size_t>(c)] = sig[static_cast<size_t>(order[static_cast<size_t>(c)])];
        for (int r = 0; r < n; ++r)
            out.v[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(c)] =
                Vm(r, order[static_cast<size_t>(c)]);
    }
    return out;
}

SvdResult svd6(const Mat6c& m) { return svd_complex(m.e.data(), 6); }

int numeric_rank(const SvdResult& s, double rank_rel, bool* borderline, double band) {
    if (s.sigma[0] == 0.0) {
        if (borderline) *borderline = false;
        return 0;
    }
    return numeric_rank_abs(s, rank_rel * s.sigma[0], borderline, band);
}

int numeric_rank_abs(const SvdResult& s, double threshold, bool* borderline, double band) {
    if (borderline) *borderline = false;
    int rank = 0;
    for (int i = 0; i < s.n; ++i) {
        double sv = s.sigma[static_cast<size_t>(i)];
        if (sv > threshold) ++rank;
        if (borderline && sv > threshold / band && sv < threshold * band) *borderline = true;
    }
    return rank;
}

void hermitian_eigen(std::vector<std::complex<double>>& a, int n,
                     std::vector<double>& eigs,
                     std::vector<std::complex<double>>* vecs) {
    auto A = [&](int i, int j) -> std::complex<double>& {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    };
    std::vector<std::complex<double>> v;
    if (vecs) {
        v.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] = 1.0;
    }
    auto V = [&](int i, int j) -> std::complex<double>& {
        return v[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    };

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                (i == j ? diag : off) += std::norm(A(i, j));
        if (off <= 1e-30 * (diag + 1e-300)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                std::complex<double> apq = A(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                double app = A(p, p).real(), aqq = A(q, q).real();
                std::complex<double> phase = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                // R = [[c, s*phase], [-s*conj(phase), c]]: A <- R^* A R on rows/cols p,q
                for (int r = 0; r < n; ++r) {
                    auto xp = A(r, p), xq = A(r, q);
                    A(r, p) = xp * c - xq * s * std::conj(phase);
                    A(r, q) = xp * s * phase + xq * c;
                }
                for (int r = 0; r < n; ++r) {
                    auto xp = A(p, r), xq = A(q, r);
                    A(p, r) = xp * c - xq * s * phase;
                    A(q, r) = xp * s * std::conj(phase) + xq * c;
                }
                if (vecs) {
                    for (int r = 0; r < n; ++r) {
                        auto xp = V(r, p), xq = V(r, q);
                        V(r, p) = xp * c - xq * s * std::conj(phase);
                        V(r, q) = xp * s * phase + xq * c;
                    }
                }
            }
        }
    }
    eigs.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eigs[static_cast<size_t>(i)] = A(i, i).real();
    if (vecs) *vecs = v;
}

Mat6c inverse6(const Mat6c& m) {
    constexpr int N = 6;
    Mat6c a = m, inv = Mat6c::identity();
    for (int col = 0; col < N; ++col) {
        int piv = col;
        double best = std::abs(a.at(col, col));
        for (int r = col + 1; r < N; ++r)
            if (std::abs(a.at(r, col)) > best) {
                best = std::abs(a.at(r, col));
                piv = r;
            }
        if (best < 1e-300) throw std::domain_error("inverse6: singular matrix");
        if (piv != col)
            for (int c = 0; c < N; ++c) {
                std::swap(a.at(piv, c), a.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        std::complex<double> d = a.at(col, col);
        for (int c = 0; c < N; ++c) {
            a.at(col, c) /= d;
            inv.at(col, c) /= d;
        }
        for (int r = 0; r < N; ++r) {
            if (r == col) continue;
            std::complex<double> f = a.at(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < N; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

bool solve_real(std::vector<double>& a, std::vector<double>& b, int n) {
    auto A = [&](int i, int j) -> double& {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A(r, col)) > std::fabs(A(piv, col))) piv = r;
        if (std::fabs(A(piv, col)) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = A(r, col) / A(col, col);
            for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c) acc -= A(r, c) * b[static_cast<size_t>(c)];
        b[static_cast<size_t>(r)] = acc / A(r, r);
    }
    return true;
}

int quaternion_rank(std::vector<Quaternion> m, int rows, int cols, double tol) {
    auto at = [&](int i, int j) -> Quaternion& {
        return m[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    };
    double scale = 0.0;
    for (const auto& q : m) scale = std::max(scale, abs(q));
    if (scale == 0.0) return 0;
    double thr = tol * scale;

    int rank = 0;
    std::vector<bool> used(static_cast<size_t>(rows), false);
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        double best = thr;
        for (int r = 0; r < rows; ++r) {
            if (used[static_cast<size_t>(r)]) continue;
            double a = abs(at(r, col));
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (piv < 0) continue;
        used[static_cast<size_t>(piv)] = true;
        ++rank;
        Quaternion pivinv = at(piv, col).inverse();
        for (int r = 0; r < rows; ++r) {
            if (used[static_cast<size_t>(r)] || r == piv) continue;
            Quaternion f = at(r, col) * pivinv; // left division: f * pivot = entry
            for (int c = 0; c < cols; ++c) at(r, c) = at(r, c) - f * at(piv, c);
        }
    }
    return rank;
}

} // namespace qhiso
