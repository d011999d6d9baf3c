#pragma once

#include "qhiso/classifier.hpp"
#include "qhiso/model.hpp"

namespace qhiso {

/// Eigenvalue report from the first-principles route: eigenvalues of the
/// 6x6 complex embedding folded into similarity classes.
struct EigenReport {
    std::vector<EigenClassInfo> classes;
    int off_circle = 0;     // classes with modulus != 1
    bool jordan_defect = false;
    DynamicalType dtype;
};

/// Ground-truth classifier by direct eigenvalue analysis (dense eigensolver
/// on complexify(A); no use of the polynomial invariants G/H/Delta).  Used to
/// cross-validate `classify`.
EigenReport eigen_report(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol = {});
DynamicalType eigen_classify(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol = {});

} // namespace qhiso
