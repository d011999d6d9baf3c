#pragma once

#include "qhiso/classifier.hpp"
#include "qhiso/exact.hpp"
#include "qhiso/model.hpp"

namespace qhiso {

using XMat3 = SqMat<XQuat, 3>;

struct ExactInvariants {
    ExactReal a, b, c, G, H, Delta;
    int min_degree = 0;
};

struct ExactClassifyResult {
    DynamicalType dtype;
    ExactInvariants inv;
    bool is_identity = false;
    Classification presentation; // floating view of the exact data (same schema as classify)
};

/// Exact membership defect: max |component| of A*JA - J over the rationals
/// with sqrt(2).  Zero exactly when A is a member.
ExactReal membership_residual_exact(const XMat3& a, ModelKind m);

/// Exact classification over Q(sqrt 2): every sign and threshold decision in
/// the tree (Delta, G, (a,b,c) = (6,15,20), |t0| vs 2, the strict-hyperbolic
/// coefficient identity, rank-based minimal-polynomial exponents) is decided
/// in exact arithmetic.  Input must be an exact member.
ExactClassifyResult classify_exact(const XMat3& a, ModelKind m, Field field);

/// Exact |R(g, g'') + 8G| via the Sylvester determinant.
ExactReal resultant_check_exact(const ExactReal& a, const ExactReal& b, const ExactReal& c);

/// Exact Cayley conjugation (entries in Q(sqrt 2)).
XMat3 cayley_conjugate_exact(const XMat3& a, CayleyDirection dir);

/// Parse a 3x3 matrix document of exact quaternion entries.
XQuat exact_quaternion_from_strings(const std::string& w, const std::string& x,
                                    const std::string& y, const std::string& z);

} // namespace qhiso
