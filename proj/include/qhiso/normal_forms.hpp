#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "qhiso/classifier.hpp"
#include "qhiso/model.hpp"

namespace qhiso {

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct not_parabolic_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct numerical_failure : std::runtime_error {
    double residual;
    explicit numerical_failure(double r)
        : std::runtime_error("normalization pipeline failed to reach the target residual (" +
                             std::to_string(r) + ")"),
          residual(r) {}
};

/// Conjugacy representative: diagonal hyperbolic/elliptic forms and the
/// lower-triangular parabolic form, with the defining parameters kept
/// alongside the matrix.
struct NormalForm {
    enum class Kind { Hyperbolic, Elliptic, Parabolic };
    Kind kind;
    ModelKind model; // Siegel for hyperbolic/parabolic, Ball for elliptic
    Field field;

    double r = 0, beta = 0;            // hyperbolic
    double theta = 0, phi = 0, psi = 0; // angles (elliptic uses all three)
    std::complex<double> d{}, f{}, g{}; // parabolic data
    bool d_projected = false;

    Mat3q matrix;
};

/// diag(r e^{i beta}, r^-1 e^{i beta}, e^{i theta}) in the Siegel model.
/// r > 0, r != 1; angles in [0,pi] over H, [-pi,pi] over C.
NormalForm make_hyperbolic(double r, double beta, double theta, Field field = Field::H);

/// diag(e^{i theta}, e^{i phi}, e^{i psi}) in the ball model.
NormalForm make_elliptic(double theta, double phi, double psi, Field field = Field::H);

/// [[e^{i theta}, 0, 0], [d, e^{i theta}, f], [g, 0, e^{i phi}]] in the
/// Siegel model, f = e^{i(theta+phi)} conj(g).  The membership constraint
/// Re(e^{-i theta} d) = |g|^2/2 is enforced by projecting that component of
/// d (flagged in d_projected when the adjustment is visible).  Rejects
/// parameter sets whose fixed-point system is solvable (elliptic in
/// disguise) with not_parabolic_error.
NormalForm make_parabolic(double theta, double phi, std::complex<double> d,
                          std::complex<double> g, Field field = Field::H,
                          const Tolerances& tol = {});

/// Haar-ish random member: indefinite Gram-Schmidt on a Gaussian matrix,
/// negative column first, retrying on near-degenerate draws.
Mat3q random_isometry(Field field, ModelKind m, std::mt19937_64& rng);

struct Sample {
    Mat3q matrix;
    ModelKind model;
    Field field;
    DynamicalType ground_truth;
    NormalForm form;
    Mat3q conjugator;
};

/// Draw admissible parameters for the requested type (open conditions kept
/// away from their boundaries), build the normal form and conjugate it by a
/// random isometry.
Sample sample(DynamicalType t, Field field, std::mt19937_64& rng);

struct FixedPointReport {
    enum class Kind { Elliptic, Parabolic, HyperbolicPair };
    Kind kind;
    std::vector<ProjectivePoint> points; // one representative per structured fixed set
    int interior_count = 0, boundary_count = 0, exterior_count = 0;
    std::string note;
};

/// Fixed-point analysis from the right-eigenvector spaces, with the
/// rank test on the triangular form as the elliptic/parabolic tie-breaker
/// for boundary-stabilizing members with unitary spectrum.
FixedPointReport fixed_point_analysis(const Mat3q& a, ModelKind m, const Tolerances& tol = {});

/// Rank test for matrices of the triangular parabolic shape with diagonal
/// class representatives e^{i theta}, e^{i theta}, e^{i phi}: the element is
/// elliptic iff rank [[f, d], [e^{i phi}-e^{i theta}, g]] equals
/// rank [[f], [e^{i phi}-e^{i theta}]].  Returns true when elliptic.
bool triangular_fixed_point_test(const Quaternion& d, const Quaternion& f, const Quaternion& g,
                                 double theta, double phi, const Tolerances& tol = {});

struct NormalizeResult {
    NormalForm form;
    Mat3q conjugator; // S with S A S^-1 = form.matrix
    double residual;
    std::optional<Mat3q> triangular_intermediate; // pre-reduction parabolic stage, when distinct
};

/// Reduce a member to its conjugacy normal form with an explicit member
/// conjugator.  Ball-model elliptic forms are produced from ball inputs;
/// hyperbolic/parabolic forms from Siegel inputs; inputs in the other model
/// are routed through the Cayley transform (the conjugator then includes
/// the model change).
NormalizeResult normalize(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol = {});

} // namespace qhiso
