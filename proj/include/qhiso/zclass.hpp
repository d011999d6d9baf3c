#pragma once

#include <string>
#include <vector>

#include "qhiso/classifier.hpp"
#include "qhiso/normal_forms.hpp"

namespace qhiso {

enum class ZFamily { Elliptic, Hyperbolic, Unipotent, ParabolicNonUnipotent };

const char* zfamily_name(ZFamily f);

/// Centralizer conjugacy label.  Equality is on (family, case_id); the
/// centralizer string is display metadata.
struct ZClassLabel {
    ZFamily family;
    std::string case_id;
    std::string centralizer;

    friend bool operator==(const ZClassLabel& a, const ZClassLabel& b) {
        return a.family == b.family && a.case_id == b.case_id;
    }
    friend bool operator<(const ZClassLabel& a, const ZClassLabel& b) {
        if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family);
        return a.case_id < b.case_id;
    }
};

/// Centralizer case label from the eigenvalue-class coincidence pattern of a
/// classification (which angles coincide, which lie in {0, pi}, where the
/// negative line sits, and the Jordan structure for parabolics).
ZClassLabel zclass_label(const Classification& c, Field field);

struct ZClassEntry {
    ZClassLabel label;
    std::string description; // parameter recipe realizing the label
    Mat3q representative;
    ModelKind model;
};

/// The complete reachable label set with one representative each:
/// 27 labels over H (11 elliptic + 6 hyperbolic + 2 unipotent + 8 parabolic
/// non-unipotent), 11 over C (4 + 1 + 2 + 4).
std::vector<ZClassEntry> enumerate_zclasses(Field field);

} // namespace qhiso
