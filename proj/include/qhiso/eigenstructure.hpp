#pragma once

#include <optional>
#include <vector>

#include "qhiso/classifier.hpp"
#include "qhiso/embed.hpp"
#include "qhiso/model.hpp"

namespace qhiso {

/// Right-eigenvector space of one eigenvalue similarity class, obtained as
/// the kernel of the class's irreducible real factor evaluated on A.  The
/// factor coefficients come from the resolvent roots, so the kernel is the
/// kernel of an (almost) exact matrix; no defective-eigenvalue accuracy loss.
struct ClassSpace {
    EigenClassInfo cls;
    std::vector<Vec3q> basis; // quaternionic eigenvector basis (geometric multiplicity)
    int sig_pos = 0, sig_neg = 0, sig_zero = 0; // signature of the restricted form
    std::optional<Vec3q> radical; // null direction orthogonal to the whole space, if any
};

/// Kernel of a real polynomial in A (deg <= 2), as quaternionic vectors.
/// For field C the computation runs inside 3x3 complex matrices so the
/// resulting vectors (and everything built from them) stay complex.
/// The vectors span the class eigenspace but are generally mixtures of
/// lambda- and conj(lambda)-eigenvectors; use eigenvector_basis when actual
/// eigenvectors are required.
std::vector<Vec3q> polynomial_kernel(const Mat3q& a, Field field, bool linear, double root,
                                     double c1, double c0, const Tolerances& tol);

/// Right eigenvectors with the given complex right-eigenvalue representative:
/// folds of ker(A_C - lambda I) (or ker(A - lambda I) inside 3x3 complex
/// matrices for field C).  Every returned vector v satisfies A v = v lambda,
/// so recombining them with COMPLEX right coefficients keeps them
/// eigenvectors for the same representative.
std::vector<Vec3q> eigenvector_basis(const Mat3q& a, Field field, std::complex<double> lambda,
                                     const Tolerances& tol);

/// Per-class eigenstructure for the classes listed in `classes`.
std::vector<ClassSpace> eigenclass_spaces(const Mat3q& a, ModelKind m, Field field,
                                          const std::vector<EigenClassInfo>& classes,
                                          const Tolerances& tol);

} // namespace qhiso
