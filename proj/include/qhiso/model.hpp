#pragma once

#include <string>

#include "qhiso/linalg.hpp"
#include "qhiso/quaternion.hpp"
#include "qhiso/tolerances.hpp"

namespace qhiso {

/// The two Hermitian models of the hyperbolic plane: the ball form with
/// J1 = diag(-1, 1, 1) and the Siegel form <z,w> = -(conj(z0)w1 + conj(z1)w0)
/// + conj(z2)w2, exchanged by the Cayley transform.
enum class ModelKind { Ball, Siegel };

inline const char* model_name(ModelKind m) { return m == ModelKind::Ball ? "ball" : "siegel"; }

enum class CayleyDirection { BallToSiegel, SiegelToBall };

enum class StabilizerShape { GInfinity, GZero, GZeroInfinity, None };

enum class Location { Interior, Boundary, Exterior };

struct ProjectivePoint {
    Vec3q representative;
    Location location;
};

/// Thrown when an operation requiring a group member receives a matrix whose
/// form residual exceeds the gate.
struct membership_error : std::domain_error {
    double residual;
    explicit membership_error(double r)
        : std::domain_error("matrix is not a member of the isometry group (residual " +
                            std::to_string(r) + ")"),
          residual(r) {}
};

template <class R>
SqMat<Quat<R>, 3> form_matrix(ModelKind m) {
    SqMat<Quat<R>, 3> j;
    if (m == ModelKind::Ball) {
        j.at(0, 0) = Quat<R>::scalar(R(-1));
        j.at(1, 1) = Quat<R>::scalar(R(1));
        j.at(2, 2) = Quat<R>::scalar(R(1));
    } else {
        j.at(0, 1) = Quat<R>::scalar(R(-1));
        j.at(1, 0) = Quat<R>::scalar(R(-1));
        j.at(2, 2) = Quat<R>::scalar(R(1));
    }
    return j;
}

/// <z,w> = z^* J w.
template <class R>
Quat<R> inner(const Vec<Quat<R>, 3>& z, const Vec<Quat<R>, 3>& w, ModelKind m) {
    Quat<R> acc;
    if (m == ModelKind::Ball) {
        acc = -(z[0].conj() * w[0]) + z[1].conj() * w[1] + z[2].conj() * w[2];
    } else {
        acc = -(z[0].conj() * w[1]) - z[1].conj() * w[0] + z[2].conj() * w[2];
    }
    return acc;
}

/// A^* J A - J, entrywise.
template <class R>
SqMat<Quat<R>, 3> form_defect(const SqMat<Quat<R>, 3>& a, ModelKind m) {
    auto j = form_matrix<R>(m);
    return a.adjoint() * j * a - j;
}

/// Max absolute real component over all entries of A^* J A - J.
inline double membership_residual(const Mat3q& a, ModelKind m) {
    return max_abs_entry(form_defect<double>(a, m));
}

/// Closed-form inverse from the entry pattern of the isometry groups:
/// ball model      [[ conj a, -conj d, -conj g],
///                  [-conj b,  conj e,  conj h],
///                  [-conj c,  conj f,  conj l]]
/// Siegel model    [[ conj e,  conj b, -conj h],
///                  [ conj d,  conj a, -conj g],
///                  [-conj f, -conj c,  conj l]]
/// Requires membership; the floating overload rejects matrices whose
/// residual exceeds tol * (1 + max|A|^2).
template <class R>
SqMat<Quat<R>, 3> inverse_pattern(const SqMat<Quat<R>, 3>& A, ModelKind m) {
    SqMat<Quat<R>, 3> r;
    const auto a = A.at(0, 0), b = A.at(0, 1), c = A.at(0, 2);
    const auto d = A.at(1, 0), e = A.at(1, 1), f = A.at(1, 2);
    const auto g = A.at(2, 0), h = A.at(2, 1), l = A.at(2, 2);
    if (m == ModelKind::Ball) {
        r.at(0, 0) = a.conj();  r.at(0, 1) = -d.conj(); r.at(0, 2) = -g.conj();
        r.at(1, 0) = -b.conj(); r.at(1, 1) = e.conj();  r.at(1, 2) = h.conj();
        r.at(2, 0) = -c.conj(); r.at(2, 1) = f.conj();  r.at(2, 2) = l.conj();
    } else {
        r.at(0, 0) = e.conj();  r.at(0, 1) = b.conj();  r.at(0, 2) = -h.conj();
        r.at(1, 0) = d.conj();  r.at(1, 1) = a.conj();  r.at(1, 2) = -g.conj();
        r.at(2, 0) = -f.conj(); r.at(2, 1) = -c.conj(); r.at(2, 2) = l.conj();
    }
    return r;
}

Mat3q inverse_closed_form(const Mat3q& a, ModelKind m, const Tolerances& tol = {});

/// Cayley matrix C = [[s, -s, 0], [s, s, 0], [0, 0, 1]], s = sqrt(2)/2.
template <class R>
SqMat<Quat<R>, 3> cayley_matrix(R sqrt2_half) {
    SqMat<Quat<R>, 3> c;
    c.at(0, 0) = Quat<R>::scalar(sqrt2_half);
    c.at(0, 1) = Quat<R>::scalar(-sqrt2_half);
    c.at(1, 0) = Quat<R>::scalar(sqrt2_half);
    c.at(1, 1) = Quat<R>::scalar(sqrt2_half);
    c.at(2, 2) = Quat<R>::one();
    return c;
}

/// C A C^-1 (BallToSiegel) or C^-1 A C (SiegelToBall).
Mat3q cayley_conjugate(const Mat3q& a, CayleyDirection dir);
Vec3q cayley_apply(const Vec3q& z, CayleyDirection dir);

/// Match A against the zero patterns of the boundary-point stabilizers in the
/// Siegel model, validating the side conditions:
///   G_infinity      [[a,0,0],[d,e,f],[g,0,l]],  |l|=1, conj(a)e=1,
///                   Re(conj(a)d)=|g|^2/2, f = e conj(g) l
///   G_zero          [[a,b,c],[0,e,0],[0,h,l]],  |l|=1, conj(a)e=1,
///                   Re(conj(e)b)=|h|^2/2, c = a conj(h) l
///   G_zero_infinity diag(a,e,l), |l|=1, conj(a)e=1
StabilizerShape stabilizer_shape(const Mat3q& a, const Tolerances& tol = {});

/// Classify a nonzero vector by the sign of <z,z> with the boundary band
/// |<z,z>| <= tol.boundary * ||z||^2.  Throws std::domain_error on z = 0.
ProjectivePoint locate(const Vec3q& z, ModelKind m, const Tolerances& tol = {});

/// Projective equality of nonzero quaternionic lines.
bool same_projective_point(const Vec3q& v, const Vec3q& w, double tol);

double euclidean_norm_sq(const Vec3q& v);

} // namespace qhiso
