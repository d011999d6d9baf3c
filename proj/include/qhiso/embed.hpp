#pragma once

#include "qhiso/exact.hpp"
#include "qhiso/linalg.hpp"
#include "qhiso/quaternion.hpp"

namespace qhiso {

/// Scalar-dependent complex type used by the embedding.
template <class R> struct complex_of;
template <> struct complex_of<double> { using type = std::complex<double>; };
template <> struct complex_of<ExactReal> { using type = XComplex; };

/// A -> A_C: write each entry q = z1 + j z2 (z1 = w + xi, z2 = y - zi) and
/// assemble [[A1, -conj(A2)], [A2, conj(A1)]].  Group homomorphism:
/// complexify(AB) = complexify(A) complexify(B).
template <class R>
SqMat<typename complex_of<R>::type, 6> complexify(const SqMat<Quat<R>, 3>& a) {
    using C = typename complex_of<R>::type;
    SqMat<C, 6> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Quat<R>& q = a.at(i, j);
            C z1(q.w, q.x);
            C z2(q.y, -q.z);
            m.at(i, j) = z1;
            m.at(i, j + 3) = -conj(z2);
            m.at(i + 3, j) = z2;
            m.at(i + 3, j + 3) = conj(z1);
        }
    return m;
}

/// A -> A_R for complex matrices (j and k parts must vanish): with
/// A = A1 + A2 i, A1, A2 real, assemble [[A1, -A2], [A2, A1]].
/// The floating overload rejects inputs whose j/k parts exceed
/// tol * (1 + max|A|); the exact overload requires them to be exactly zero.
Mat6d realify(const Mat3q& a, double tol = 1e-12);
SqMat<ExactReal, 6> realify(const SqMat<XQuat, 3>& a);

/// Quaternionic vector from a complex 6-vector: (a; b) -> a + j b.  With the
/// block convention above, (a; b) is an eigenvector of A_C for eigenvalue
/// lambda exactly when a + j b is a right eigenvector of A for lambda.
Vec3q fold_vector(const Vec6c& v);
Vec6c lift_vector(const Vec3q& v);

} // namespace qhiso
