#include "qhiso/zclass.hpp"

#include <cmath>
#include <stdexcept>

namespace qhiso {

const char* zfamily_name(ZFamily f) {
    switch (f) {
        case ZFamily::Elliptic: return "elliptic";
        case ZFamily::Hyperbolic: return "hyperbolic";
        case ZFamily::Unipotent: return "unipotent";
        case ZFamily::ParabolicNonUnipotent: return "parabolic non-unipotent";
    }
    return "?";
}

namespace {

bool is_elliptic_type(DynamicalType t) {
    return t == DynamicalType::RegularElliptic || t == DynamicalType::ComplexElliptic ||
           t == DynamicalType::SimpleElliptic;
}

bool is_hyperbolic_type(DynamicalType t) {
    return t == DynamicalType::RegularHyperbolic || t == DynamicalType::StrictlyHyperbolic ||
           t == DynamicalType::ScrewHyperbolic || t == DynamicalType::Loxodromic;
}

bool angle_is_zero(const EigenClassInfo& c) { return c.real_angle && c.angle < M_PI_2; }

ZClassLabel elliptic_label(const Classification& c, Field field) {
    const auto& cls = c.eigen_classes;
    if (cls.size() == 3) {
        if (field == Field::C) return {ZFamily::Elliptic, "distinct", "S¹ × S¹ × S¹"};
        int realc = 0;
        for (const auto& e : cls) realc += e.real_angle ? 1 : 0;
        switch (realc) {
            case 0: return {ZFamily::Elliptic, "distinct-0real", "S¹ × S¹ × S¹"};
            case 1: return {ZFamily::Elliptic, "distinct-1real", "S¹ × S¹ × S³"};
            default: return {ZFamily::Elliptic, "distinct-2real", "S³ × S³ × S¹"};
        }
    }
    if (cls.size() == 1) {
        if (field == Field::C) return {ZFamily::Elliptic, "equal", "U(2,1) (center)"};
        return cls[0].real_angle ? ZClassLabel{ZFamily::Elliptic, "equal-real", "Sp(2,1)"}
                                 : ZClassLabel{ZFamily::Elliptic, "equal-nonreal", "U(2,1)"};
    }
    if (cls.size() != 2) throw std::invalid_argument("zclass_label: malformed elliptic class data");
    const EigenClassInfo& doubled = cls[0].multiplicity == 2 ? cls[0] : cls[1];
    const EigenClassInfo& single = cls[0].multiplicity == 2 ? cls[1] : cls[0];
    if (doubled.hosts_negative) {
        // repeated class spans the signature-(1,1) plane
        if (field == Field::C) return {ZFamily::Elliptic, "mixpair", "U(1,1) × S¹"};
        return doubled.real_angle ? ZClassLabel{ZFamily::Elliptic, "mixpair-real", "Sp(1,1) × S¹"}
                                  : ZClassLabel{ZFamily::Elliptic, "mixpair-nonreal", "U(1,1) × S¹"};
    }
    // repeated class positive definite
    if (field == Field::C) return {ZFamily::Elliptic, "pospair", "S¹ × U(2)"};
    if (!single.real_angle && !doubled.real_angle)
        return {ZFamily::Elliptic, "pospair-nn", "S¹ × U(2)"};
    if (!single.real_angle && doubled.real_angle)
        return {ZFamily::Elliptic, "pospair-nr", "S¹ × Sp(2)"};
    if (single.real_angle && !doubled.real_angle)
        return {ZFamily::Elliptic, "pospair-rn", "S³ × U(2)"};
    return {ZFamily::Elliptic, "pospair-rr", "S³ × Sp(2)"};
}

ZClassLabel hyperbolic_label(const Classification& c, Field field) {
    if (field == Field::C)
        return {ZFamily::Hyperbolic, "loxodromic", "Z_{U(1,1)}(loxodromic) × S¹"};
    const EigenClassInfo* pair = nullptr;
    const EigenClassInfo* unit = nullptr;
    for (const auto& e : c.eigen_classes) {
        if (e.unit_modulus)
            unit = &e;
        else if (e.modulus > 1.0)
            pair = &e;
    }
    if (!pair || !unit) throw std::invalid_argument("zclass_label: malformed hyperbolic class data");
    std::string beta_tag, beta_desc;
    if (!pair->real_angle) {
        beta_tag = "nonreal";
        beta_desc = "Z_{Sp(1,1)}(non-real pair)";
    } else if (pair->angle < M_PI_2) {
        beta_tag = "pos";
        beta_desc = "Z_{Sp(1,1)}(positive real pair)";
    } else {
        beta_tag = "neg";
        beta_desc = "Z_{Sp(1,1)}(negative real pair)";
    }
    bool treal = unit->real_angle;
    return {ZFamily::Hyperbolic, beta_tag + (treal ? "-real" : "-nonreal"),
            beta_desc + (treal ? " × S³" : " × S¹")};
}

ZClassLabel parabolic_label(const Classification& c, Field field) {
    const auto& cls = c.eigen_classes;
    int min_degree = c.inv.min_degree;
    if (cls.size() == 1) {
        bool unipotent = angle_is_zero(cls[0]);
        if (unipotent) {
            if (min_degree == 2)
                return {ZFamily::Unipotent, "translation",
                        "{[[a,0,0],[b,a,a·conj(c)·l],[c,0,l]] : a ∈ C}"};
            return {ZFamily::Unipotent, "strict",
                    "unitary group of the induced (1,1) form on the image of A - I"};
        }
        bool real = cls[0].real_angle; // the class of -1
        if (min_degree == 2) {
            if (field == Field::C)
                return {ZFamily::ParabolicNonUnipotent, "elltrans",
                        "{[[a,0,0],[b,a,a·conj(c)·l],[c,0,l]] ⊂ U-hat(2,1;C)}"};
            return real ? ZClassLabel{ZFamily::ParabolicNonUnipotent, "elltrans-real",
                                      "{[[a,0,0],[b,a,a·conj(c)·l],[c,0,l]] : a ∈ C}"}
                        : ZClassLabel{ZFamily::ParabolicNonUnipotent, "elltrans-nonreal",
                                      "{[[a,0,0],[b,a,a·conj(c)·l],[c,0,l]] ⊂ U-hat(2,1;C)}"};
        }
        if (field == Field::C)
            return real ? ZClassLabel{ZFamily::ParabolicNonUnipotent, "ellpara-real",
                                      "{[[a,0,0],[b,a,a·conj(c)·gag⁻¹],[c,0,gag⁻¹]] ⊂ U-hat(2,1;C)}"}
                        : ZClassLabel{ZFamily::ParabolicNonUnipotent, "ellpara-nonreal",
                                      "two-component unipotent-block subgroup of U-hat(2,1;C)"};
        return real ? ZClassLabel{ZFamily::ParabolicNonUnipotent, "ellpara-real",
                                  "{[[a,0,0],[b,a,a·conj(c)·gag⁻¹],[c,0,gag⁻¹]] ⊂ U-hat(2,1;H)}"}
                    : ZClassLabel{ZFamily::ParabolicNonUnipotent, "ellpara-nonreal",
                                  "two-component unipotent-block subgroup of U-hat(2,1;C)"};
    }
    if (cls.size() != 2)
        throw std::invalid_argument("zclass_label: malformed parabolic class data");
    const EigenClassInfo& doubled = cls[0].multiplicity == 2 ? cls[0] : cls[1];
    const EigenClassInfo& single = cls[0].multiplicity == 2 ? cls[1] : cls[0];
    if (field == Field::C)
        return {ZFamily::ParabolicNonUnipotent, "screw",
                "{[[a,0,0],[b,a,0],[0,0,l]] ⊂ U-hat(2,1;C)}"};
    bool tr = doubled.real_angle, pr = single.real_angle;
    if (tr && pr)
        return {ZFamily::ParabolicNonUnipotent, "screw-rr",
                "{[[a,0,0],[b,a,0],[0,0,l]] : a ∈ C}"};
    if (tr && !pr)
        return {ZFamily::ParabolicNonUnipotent, "screw-rn",
                "{[[a,0,0],[b,a,0],[0,0,l]] : a, l ∈ C}"};
    if (!tr && pr)
        return {ZFamily::ParabolicNonUnipotent, "screw-nr",
                "{[[a,0,0],[b,a,0],[0,0,l]] : a, b ∈ C}"};
    return {ZFamily::ParabolicNonUnipotent, "screw-nn",
            "{[[a,0,0],[b,a,0],[0,0,l]] ⊂ U-hat(2,1;C)}"};
}

} // namespace

ZClassLabel zclass_label(const Classification& c, Field field) {
    if (field != c.field)
        throw std::invalid_argument("zclass_label: classification was produced for the other field");
    if (is_elliptic_type(c.dtype)) return elliptic_label(c, field);
    if (is_hyperbolic_type(c.dtype)) return hyperbolic_label(c, field);
    return parabolic_label(c, field);
}

namespace {

ZClassEntry entry_from_form(const NormalForm& n, const std::string& desc) {
    ZClassEntry e;
    e.representative = n.matrix;
    e.model = n.model;
    e.description = desc;
    return e;
}

void add(std::vector<ZClassEntry>& out, Field field, const NormalForm& n, const std::string& desc) {
    ZClassEntry e = entry_from_form(n, desc);
    Classification c = classify(n.matrix, n.model, field, Tolerances::defaults());
    e.label = zclass_label(c, field);
    out.push_back(std::move(e));
}

} // namespace

std::vector<ZClassEntry> enumerate_zclasses(Field field) {
    std::vector<ZClassEntry> out;
    const double pi = M_PI;
    using std::complex;
    auto ei = [](double t) { return std::polar(1.0, t); };

    if (field == Field::H) {
        add(out, field, make_elliptic(1.0, 1.7, 2.3), "E(1.0, 1.7, 2.3)");
        add(out, field, make_elliptic(0.0, 1.1, 2.0), "E(0, 1.1, 2.0)");
        add(out, field, make_elliptic(0.0, pi, 1.3), "E(0, pi, 1.3)");
        add(out, field, make_elliptic(pi / 3, pi / 3, pi / 3), "E(pi/3, pi/3, pi/3)");
        add(out, field, make_elliptic(0.0, 0.0, 0.0), "identity");
        add(out, field, make_elliptic(1.0, 2.0, 2.0), "E(1.0, 2.0, 2.0)");
        add(out, field, make_elliptic(1.0, 0.0, 0.0), "E(1.0, 0, 0)");
        add(out, field, make_elliptic(0.0, 1.2, 1.2), "E(0, 1.2, 1.2)");
        add(out, field, make_elliptic(0.0, pi, pi), "E(0, pi, pi)");
        add(out, field, make_elliptic(1.2, 1.2, 2.2), "E(1.2, 1.2, 2.2)");
        add(out, field, make_elliptic(0.0, 0.0, 1.5), "E(0, 0, 1.5)");

        add(out, field, make_hyperbolic(2.0, 0.0, 0.0), "L(r=2, beta=0, theta=0)");
        add(out, field, make_hyperbolic(2.0, 0.0, 1.3), "L(r=2, beta=0, theta=1.3)");
        add(out, field, make_hyperbolic(2.0, pi, 0.0), "L(r=2, beta=pi, theta=0)");
        add(out, field, make_hyperbolic(2.0, pi, 1.3), "L(r=2, beta=pi, theta=1.3)");
        add(out, field, make_hyperbolic(2.0, 1.0, pi), "L(r=2, beta=1.0, theta=pi)");
        add(out, field, make_hyperbolic(2.0, 1.0, 1.3), "L(r=2, beta=1.0, theta=1.3)");

        add(out, field, make_parabolic(0, 0, complex<double>(0, 1), 0.0), "vertical translation");
        add(out, field, make_parabolic(0, 0, complex<double>(0.5, 1), 1.0), "strictly parabolic");

        add(out, field, make_parabolic(pi, pi, -complex<double>(0, 1), 0.0),
            "ellipto-translation, eigenvalue -1");
        add(out, field, make_parabolic(1.2, 1.2, ei(1.2) * complex<double>(0, 1), 0.0),
            "ellipto-translation, non-real eigenvalue");
        add(out, field, make_parabolic(pi, pi, -complex<double>(0.5, 1), 1.0),
            "ellipto-parabolic, eigenvalue -1");
        add(out, field, make_parabolic(1.2, 1.2, ei(1.2) * complex<double>(0.5, 1), 1.0),
            "ellipto-parabolic, non-real eigenvalue");
        add(out, field, make_parabolic(0, pi, complex<double>(0, 1), 0.0), "screw, both real");
        add(out, field, make_parabolic(0, 1.3, complex<double>(0, 1), 0.0), "screw, real double class");
        add(out, field, make_parabolic(1.3, 0, ei(1.3) * complex<double>(0, 1), 0.0),
            "screw, real simple class");
        add(out, field, make_parabolic(1.3, 2.1, ei(1.3) * complex<double>(0, 1), 0.0),
            "screw, both non-real");
        return out;
    }

    add(out, field, make_elliptic(0.7, -1.2, 2.0, field), "E(0.7, -1.2, 2.0)");
    add(out, field, make_elliptic(0.9, 0.9, 0.9, field), "E(0.9, 0.9, 0.9) (central)");
    add(out, field, make_elliptic(1.0, 2.0, 2.0, field), "E(1.0, 2.0, 2.0)");
    add(out, field, make_elliptic(1.2, 1.2, 2.2, field), "E(1.2, 1.2, 2.2)");
    add(out, field, make_hyperbolic(2.0, 0.8, -1.1, field), "L(r=2, beta=0.8, theta=-1.1)");
    add(out, field, make_parabolic(0, 0, complex<double>(0, 1), 0.0, field), "vertical translation");
    add(out, field, make_parabolic(0, 0, complex<double>(0.5, 1), 1.0, field), "strictly parabolic");
    add(out, field, make_parabolic(1.2, 1.2, ei(1.2) * complex<double>(0, 1), 0.0, field),
        "ellipto-translation");
    add(out, field, make_parabolic(pi, pi, -complex<double>(0.5, 1), 1.0, field),
        "ellipto-parabolic, eigenvalue -1");
    add(out, field, make_parabolic(1.2, 1.2, ei(1.2) * complex<double>(0.5, 1), 1.0, field),
        "ellipto-parabolic, non-real eigenvalue");
    add(out, field, make_parabolic(1.3, -0.8, ei(1.3) * complex<double>(0, 1), 0.0, field),
        "screw parabolic");
    return out;
}

} // namespace qhiso
