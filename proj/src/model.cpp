#include "qhiso/model.hpp"

#include <cmath>

namespace qhiso {

Mat3q inverse_closed_form(const Mat3q& a, ModelKind m, const Tolerances& tol) {
    double scale = 1.0 + max_abs_entry(a) * max_abs_entry(a);
    double res = membership_residual(a, m);
    if (res > tol.membership * scale) throw membership_error(res);
    return inverse_pattern<double>(a, m);
}

Mat3q cayley_conjugate(const Mat3q& a, CayleyDirection dir) {
    const double s = std::sqrt(2.0) / 2.0;
    Mat3q c = cayley_matrix<double>(s);
    Mat3q cinv = c.adjoint(); // C is real orthogonal
    return dir == CayleyDirection::BallToSiegel ? c * a * cinv : cinv * a * c;
}

Vec3q cayley_apply(const Vec3q& z, CayleyDirection dir) {
    const double s = std::sqrt(2.0) / 2.0;
    Mat3q c = cayley_matrix<double>(s);
    if (dir == CayleyDirection::SiegelToBall) c = c.adjoint();
    return apply(c, z);
}

namespace {

bool near_zero(const Quaternion& q, double thr) { return max_component(q) <= thr; }

bool side_conditions_gw(const Mat3q& m, double thr) {
    const Quaternion a = m.at(0, 0), d = m.at(1, 0), e = m.at(1, 1), f = m.at(1, 2),
                     g = m.at(2, 0), l = m.at(2, 2);
    if (std::fabs(abs(l) - 1.0) > thr) return false;
    if (max_component(a.conj() * e - Quaternion::one()) > thr) return false;
    if (std::fabs((a.conj() * d).re() - 0.5 * g.norm_sq()) > thr) return false;
    return near_zero(f - e * g.conj() * l, thr);
}

bool side_conditions_g0(const Mat3q& m, double thr) {
    const Quaternion a = m.at(0, 0), b = m.at(0, 1), c = m.at(0, 2), e = m.at(1, 1),
                     h = m.at(2, 1), l = m.at(2, 2);
    if (std::fabs(abs(l) - 1.0) > thr) return false;
    if (max_component(a.conj() * e - Quaternion::one()) > thr) return false;
    if (std::fabs((e.conj() * b).re() - 0.5 * h.norm_sq()) > thr) return false;
    return near_zero(c - a * h.conj() * l, thr);
}

} // namespace

StabilizerShape stabilizer_shape(const Mat3q& a, const Tolerances& tol) {
    double thr = tol.rel * (1.0 + max_abs_entry(a));
    const bool z01 = near_zero(a.at(0, 1), thr), z02 = near_zero(a.at(0, 2), thr);
    const bool z10 = near_zero(a.at(1, 0), thr), z12 = near_zero(a.at(1, 2), thr);
    const bool z20 = near_zero(a.at(2, 0), thr), z21 = near_zero(a.at(2, 1), thr);

    double cthr = tol.rel * (1.0 + max_abs_entry(a) * max_abs_entry(a));
    if (z01 && z02 && z10 && z12 && z20 && z21) {
        const Quaternion l = a.at(2, 2);
        if (std::fabs(abs(l) - 1.0) <= cthr &&
            near_zero(a.at(0, 0).conj() * a.at(1, 1) - Quaternion::one(), cthr))
            return StabilizerShape::GZeroInfinity;
        return StabilizerShape::None;
    }
    if (z01 && z02 && z21 && side_conditions_gw(a, cthr)) return StabilizerShape::GInfinity;
    if (z10 && z12 && z20 && side_conditions_g0(a, cthr)) return StabilizerShape::GZero;
    return StabilizerShape::None;
}

double euclidean_norm_sq(const Vec3q& v) {
    return v[0].norm_sq() + v[1].norm_sq() + v[2].norm_sq();
}

ProjectivePoint locate(const Vec3q& z, ModelKind m, const Tolerances& tol) {
    double nsq = euclidean_norm_sq(z);
    if (nsq == 0.0) throw std::domain_error("locate: zero vector");
    double ip = inner<double>(z, z, m).re();
    Location loc;
    if (std::fabs(ip) <= tol.boundary * nsq)
        loc = Location::Boundary;
    else
        loc = ip < 0.0 ? Location::Interior : Location::Exterior;
    return ProjectivePoint{z, loc};
}

bool same_projective_point(const Vec3q& v, const Vec3q& w, double tol) {
    double nv = euclidean_norm_sq(v), nw = euclidean_norm_sq(w);
    if (nv == 0.0 || nw == 0.0) throw std::domain_error("same_projective_point: zero vector");
    // q minimizing ||w - v q|| is q = (v . w)/||v||^2 under the standard
    // positive inner product sum conj(v_i) w_i.
    Quaternion dot;
    for (int i = 0; i < 3; ++i) dot = dot + v[i].conj() * w[i];
    Quaternion q = dot * (1.0 / nv);
    Vec3q resid = w - v * q;
    return euclidean_norm_sq(resid) <= tol * tol * nw;
}

} // namespace qhiso
