#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qhiso {

/// Quaternion over a scalar ring R (double for the floating backend,
/// ExactReal for the rational-arithmetic backend).
/// q = w + x*i + y*j + z*k with i*j = k, j*k = i, k*i = j.
template <class R>
struct Quat {
    R w{}, x{}, y{}, z{};

    constexpr Quat() = default;
    explicit constexpr Quat(R s) : w(s) {}
    constexpr Quat(R w_, R x_, R y_, R z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quat scalar(R s) { return Quat(s, R(0), R(0), R(0)); }
    static Quat zero() { return Quat(); }
    static Quat one() { return scalar(R(1)); }
    static Quat i() { return Quat(R(0), R(1), R(0), R(0)); }
    static Quat j() { return Quat(R(0), R(0), R(1), R(0)); }
    static Quat k() { return Quat(R(0), R(0), R(0), R(1)); }

    friend Quat operator+(const Quat& p, const Quat& q) {
        return Quat(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z);
    }
    friend Quat operator-(const Quat& p, const Quat& q) {
        return Quat(p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z);
    }
    friend Quat operator-(const Quat& q) { return Quat(-q.w, -q.x, -q.y, -q.z); }

    // Hamilton product.
    friend Quat operator*(const Quat& p, const Quat& q) {
        return Quat(p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                    p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                    p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                    p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w);
    }

    friend Quat operator*(const Quat& q, const R& s) {
        return Quat(q.w * s, q.x * s, q.y * s, q.z * s);
    }
    friend Quat operator*(const R& s, const Quat& q) { return q * s; }

    Quat conj() const { return Quat(w, -x, -y, -z); }
    R norm_sq() const { return w * w + x * x + y * y + z * z; }
    R re() const { return w; }

    /// conj(q)/|q|^2; requires q != 0.
    Quat inverse() const {
        R n = norm_sq();
        return Quat(w / n, -x / n, -y / n, -z / n);
    }

    bool is_zero() const { return w == R(0) && x == R(0) && y == R(0) && z == R(0); }
};

template <class R>
Quat<R> conj(const Quat<R>& q) { return q.conj(); }

using Quaternion = Quat<double>;

inline double abs(const Quaternion& q) { return std::sqrt(q.norm_sq()); }
inline double max_component(const Quaternion& q) {
    return std::max(std::max(std::fabs(q.w), std::fabs(q.x)),
                    std::max(std::fabs(q.y), std::fabs(q.z)));
}

/// The complex number z embedded as z + 0j.
inline Quaternion from_complex(std::complex<double> z) {
    return Quaternion(z.real(), z.imag(), 0.0, 0.0);
}
/// Complex part z1 of q = z1 + j z2.
inline std::complex<double> complex_part(const Quaternion& q) { return {q.w, q.x}; }
/// j-part z2 of q = z1 + j z2 (note z2 = y - z*i, from j(y - zi) = yj + zk).
inline std::complex<double> jpart(const Quaternion& q) { return {q.y, -q.z}; }
inline Quaternion from_parts(std::complex<double> z1, std::complex<double> z2) {
    return Quaternion(z1.real(), z1.imag(), z2.real(), -z2.imag());
}

inline bool is_complex(const Quaternion& q, double tol) {
    return std::fabs(q.y) <= tol && std::fabs(q.z) <= tol;
}

/// Similarity class {u q u^-1 : |u| = 1}, identified with its unique
/// representative r e^{i theta}, r > 0, 0 <= theta <= pi.
struct SimilarityClass {
    double modulus = 0.0;
    double angle = 0.0;
};

/// Class representative of a nonzero quaternion: modulus |q|,
/// angle arccos(Re q / |q|) in [0, pi].  Throws std::domain_error on q = 0.
SimilarityClass similarity_representative(const Quaternion& q);

/// True iff p and q lie in the same similarity class:
/// | |p|-|q| | <= tol*max(1,|p|)  and  |Re p/|p| - Re q/|q|| <= tol.
bool same_class(const Quaternion& p, const Quaternion& q, double tol);

inline std::complex<double> class_rep(const SimilarityClass& c) {
    return std::polar(c.modulus, c.angle);
}

/// Unit u with u q u^{-1} = Re(q) + |Im(q)| i  (the upper-half-plane
/// complex representative of q's similarity class).  u = 1 when the
/// imaginary part already points along +i.
Quaternion conjugator_to_upper_complex(const Quaternion& q);

/// Text form "w+xi+yj+zk" with zero terms omitted.
std::string format_quaternion(const Quaternion& q);

/// Parse the text form accepted by format_quaternion (also bare reals and
/// single terms such as "i", "-2.5k").  Throws std::invalid_argument.
Quaternion parse_quaternion(const std::string& text);

} // namespace qhiso
