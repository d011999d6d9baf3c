#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qhiso/quaternion.hpp"

namespace qhiso {

inline double conj(double x) { return x; }
inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }

template <class T, int N>
struct SqMat {
    std::array<T, static_cast<size_t>(N) * N> e{};

    T& at(int i, int j) { return e[static_cast<size_t>(i) * N + j]; }
    const T& at(int i, int j) const { return e[static_cast<size_t>(i) * N + j]; }

    static SqMat identity() {
        SqMat m;
        for (int i = 0; i < N; ++i) m.at(i, i) = T(1);
        return m;
    }
    static SqMat zero() { return SqMat{}; }

    friend SqMat operator+(const SqMat& a, const SqMat& b) {
        SqMat r;
        for (size_t t = 0; t < a.e.size(); ++t) r.e[t] = a.e[t] + b.e[t];
        return r;
    }
    friend SqMat operator-(const SqMat& a, const SqMat& b) {
        SqMat r;
        for (size_t t = 0; t < a.e.size(); ++t) r.e[t] = a.e[t] - b.e[t];
        return r;
    }
    friend SqMat operator-(const SqMat& a) {
        SqMat r;
        for (size_t t = 0; t < a.e.size(); ++t) r.e[t] = -a.e[t];
        return r;
    }
    friend SqMat operator*(const SqMat& a, const SqMat& b) {
        SqMat r;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const T& aik = a.at(i, k);
                for (int j = 0; j < N; ++j) r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }

    SqMat adjoint() const { // conjugate transpose
        SqMat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.at(i, j) = conj(at(j, i));
        return r;
    }

    T trace() const {
        T t{};
        for (int i = 0; i < N; ++i) t = t + at(i, i);
        return t;
    }
};

template <class T, int N>
struct Vec {
    std::array<T, N> v{};
    T& operator[](int i) { return v[static_cast<size_t>(i)]; }
    const T& operator[](int i) const { return v[static_cast<size_t>(i)]; }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r;
        for (int i = 0; i < N; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r;
        for (int i = 0; i < N; ++i) r[i] = a[i] - b[i];
        return r;
    }
    /// Right scalar multiple (the underlying space is a right module).
    friend Vec operator*(const Vec& a, const T& s) {
        Vec r;
        for (int i = 0; i < N; ++i) r[i] = a[i] * s;
        return r;
    }
};

template <class T, int N>
Vec<T, N> apply(const SqMat<T, N>& m, const Vec<T, N>& x) {
    Vec<T, N> r;
    for (int i = 0; i < N; ++i) {
        T acc{};
        for (int j = 0; j < N; ++j) acc = acc + m.at(i, j) * x[j];
        r[i] = acc;
    }
    return r;
}

using Mat3q = SqMat<Quaternion, 3>;
using Mat6c = SqMat<std::complex<double>, 6>;
using Mat6d = SqMat<double, 6>;
using Vec3q = Vec<Quaternion, 3>;
using Vec6c = Vec<std::complex<double>, 6>;

double max_abs_entry(const Mat3q& m);
double max_abs_entry(const Mat6c& m);

/// Result of a one-sided Jacobi SVD of an n x n complex matrix (n <= 6):
/// M * V = U * diag(sigma), sigma descending.  One-sided Jacobi keeps high
/// relative accuracy in the small singular values, which the rank
/// thresholds rely on.
struct SvdResult {
    int n = 0;
    std::array<double, 6> sigma{};
    std::array<std::complex<double>, 36> v{}; // right singular vectors, column-major blocks of size n
    std::complex<double> V(int r, int c) const {
        return v[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(c)];
    }
};
SvdResult svd_complex(const std::complex<double>* data, int n);
SvdResult svd6(const Mat6c& m);

/// Numerical rank: count of sigma > rank_rel * sigma_max.  `borderline` is
/// set when some sigma lies within a factor `band` of the threshold.
int numeric_rank(const SvdResult& s, double rank_rel, bool* borderline = nullptr,
                 double band = 10.0);

/// Rank against an absolute threshold (used for matrix powers, where the
/// scale must be anchored to the first power so that a power that ought to
/// vanish is not ranked against its own rounding noise).
int numeric_rank_abs(const SvdResult& s, double threshold, bool* borderline = nullptr,
                     double band = 10.0);

/// Eigen-decomposition of a Hermitian n x n complex matrix (n <= 6) by cyclic
/// Jacobi.  Returns eigenvalues (unsorted) and, if vecs != nullptr, the
/// corresponding orthonormal eigenvectors in columns.
void hermitian_eigen(std::vector<std::complex<double>>& a, int n,
                     std::vector<double>& eigs,
                     std::vector<std::complex<double>>* vecs);

/// Gaussian inverse with partial pivoting; throws std::domain_error when singular.
Mat6c inverse6(const Mat6c& m);

/// Solve a dense real n x n system in place (n small); returns false if singular.
bool solve_real(std::vector<double>& a, std::vector<double>& b, int n);

/// Quaternionic numerical rank by elimination with left division by the
/// largest-modulus pivot; entries below tol * max-modulus count as zero.
int quaternion_rank(std::vector<Quaternion> rows_by_cols, int rows, int cols, double tol);

} // namespace qhiso
