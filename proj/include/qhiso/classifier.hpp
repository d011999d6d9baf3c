#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhiso/invariants.hpp"
#include "qhiso/model.hpp"

namespace qhiso {

enum class Field { H, C };
inline const char* field_name(Field f) { return f == Field::H ? "H" : "C"; }

enum class DynamicalType {
    RegularElliptic,
    ComplexElliptic,
    SimpleElliptic,
    RegularHyperbolic,
    StrictlyHyperbolic,
    ScrewHyperbolic,
    Loxodromic, // collapsed hyperbolic taxonomy for F = C
    VerticalHeisenbergTranslation,
    NonVerticalHeisenbergTranslation,
    ElliptoTranslation,
    ElliptoParabolic,
    ScrewParabolic,
};

const char* type_name(DynamicalType t);
std::optional<DynamicalType> type_from_name(const std::string& name);

/// One eigenvalue similarity class of a classified element.
struct EigenClassInfo {
    double modulus = 1.0;
    double angle = 0.0; // class representative modulus * e^{i angle}, angle in [0, pi]
    int multiplicity = 0;
    bool unit_modulus = true;
    bool real_angle = false;     // angle within tolerance of 0 or pi
    bool hosts_negative = false; // the class eigenspace meets the negative cone (elliptic only)
};

struct Classification {
    DynamicalType dtype;
    InvariantRecord inv;
    std::vector<EigenClassInfo> eigen_classes;
    bool borderline = false;
    bool is_identity = false;
    std::string diagnostics;
    Field field = Field::H;
    ModelKind model = ModelKind::Ball;
};

/// Full invariant pipeline: embed, characteristic polynomial, (a,b,c),
/// (G,H,Delta), resolvent roots, minimal-polynomial structure, then the
/// decision tree.  Throws membership_error when the form residual exceeds
/// the gate; threshold-straddling decisions set `borderline` and list the
/// alternative outcomes in `diagnostics`.
Classification classify(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol = {});

/// The published decision text applied verbatim (inequality bounds instead
/// of the double-root criterion), kept for fidelity comparison against
/// classify.  `covered` is false when no clause applies.
struct LiteralVerdict {
    std::optional<DynamicalType> dtype;
    bool covered = false;
    bool item2_bounds_hold = false; // Delta = 0, G != 0, a > 6, b > 15, c > 20
    bool item3_bounds_hold = false; // Delta <= 0, |a| < 6, |b| < 15, |c| < 20
    std::string note;
};
LiteralVerdict classify_literal_theorem(const InvariantRecord& inv);

/// The field-C taxonomy collapse: hyperbolic types merge to Loxodromic and
/// the ellipto families act as the Heisenberg translations.
DynamicalType collapse_for_field(DynamicalType t, Field f);

} // namespace qhiso
