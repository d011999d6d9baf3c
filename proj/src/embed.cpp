#include "qhiso/embed.hpp"

#include <cmath>
#include <stdexcept>

namespace qhiso {

Mat6d realify(const Mat3q& a, double tol) {
    double thr = tol * (1.0 + max_abs_entry(a));
    Mat6d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Quaternion& q = a.at(i, j);
            if (std::fabs(q.y) > thr || std::fabs(q.z) > thr)
                throw std::domain_error("realify: input has nonzero j/k parts");
            m.at(i, j) = q.w;
            m.at(i, j + 3) = -q.x;
            m.at(i + 3, j) = q.x;
            m.at(i + 3, j + 3) = q.w;
        }
    return m;
}

SqMat<ExactReal, 6> realify(const SqMat<XQuat, 3>& a) {
    SqMat<ExactReal, 6> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const XQuat& q = a.at(i, j);
            if (!q.y.is_zero() || !q.z.is_zero())
                throw std::domain_error("realify: input has nonzero j/k parts");
            m.at(i, j) = q.w;
            m.at(i, j + 3) = -q.x;
            m.at(i + 3, j) = q.x;
            m.at(i + 3, j + 3) = q.w;
        }
    return m;
}

Vec3q fold_vector(const Vec6c& v) {
    Vec3q r;
    for (int i = 0; i < 3; ++i) r[i] = from_parts(v[i], v[i + 3]);
    return r;
}

Vec6c lift_vector(const Vec3q& v) {
    Vec6c r;
    for (int i = 0; i < 3; ++i) {
        r[i] = complex_part(v[i]);
        r[i + 3] = jpart(v[i]);
    }
    return r;
}

} // namespace qhiso
