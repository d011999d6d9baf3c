#pragma once

#include "qhiso/classifier.hpp"

namespace qhiso::detail {

/// Resolved decision inputs; filling them is the only place the floating and
/// exact pipelines differ.
struct TreeInputs {
    int sign_delta = 0;
    bool g_zero = false;
    bool abc_unipotent = false;
    int min_degree = 0;
    bool double_root_off_circle = false; // |t0| > 2, valid when Delta = 0, G != 0
    bool strict_identity_holds = false;  // 16(a+c)^2 = (a^2+4b+8)^2
};

inline DynamicalType decide(const TreeInputs& in) {
    if (in.sign_delta > 0) return DynamicalType::RegularHyperbolic;
    if (in.sign_delta < 0) return DynamicalType::RegularElliptic;
    if (!in.g_zero) {
        if (in.double_root_off_circle)
            return in.strict_identity_holds ? DynamicalType::StrictlyHyperbolic
                                            : DynamicalType::ScrewHyperbolic;
        return in.min_degree >= 3 ? DynamicalType::ScrewParabolic : DynamicalType::ComplexElliptic;
    }
    if (in.min_degree <= 1) return DynamicalType::SimpleElliptic;
    if (in.abc_unipotent)
        return in.min_degree == 2 ? DynamicalType::VerticalHeisenbergTranslation
                                  : DynamicalType::NonVerticalHeisenbergTranslation;
    return in.min_degree == 2 ? DynamicalType::ElliptoTranslation : DynamicalType::ElliptoParabolic;
}

} // namespace qhiso::detail
