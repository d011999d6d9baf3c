#include "qhiso/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qhiso/detail/decision_tree.hpp"
#include "qhiso/eigenstructure.hpp"
#include "qhiso/embed.hpp"

namespace qhiso {

using detail::TreeInputs;
using detail::decide;

const char* type_name(DynamicalType t) {
    switch (t) {
        case DynamicalType::RegularElliptic: return "regular elliptic";
        case DynamicalType::ComplexElliptic: return "complex elliptic";
        case DynamicalType::SimpleElliptic: return "simple elliptic";
        case DynamicalType::RegularHyperbolic: return "regular hyperbolic";
        case DynamicalType::StrictlyHyperbolic: return "strictly hyperbolic";
        case DynamicalType::ScrewHyperbolic: return "screw hyperbolic";
        case DynamicalType::Loxodromic: return "loxodromic";
        case DynamicalType::VerticalHeisenbergTranslation: return "vertical Heisenberg translation";
        case DynamicalType::NonVerticalHeisenbergTranslation: return "non-vertical Heisenberg translation";
        case DynamicalType::ElliptoTranslation: return "ellipto-translation";
        case DynamicalType::ElliptoParabolic: return "ellipto-parabolic";
        case DynamicalType::ScrewParabolic: return "screw parabolic";
    }
    return "?";
}

std::optional<DynamicalType> type_from_name(const std::string& name) {
    static const std::map<std::string, DynamicalType> table = {
        {"regular-elliptic", DynamicalType::RegularElliptic},
        {"complex-elliptic", DynamicalType::ComplexElliptic},
        {"simple-elliptic", DynamicalType::SimpleElliptic},
        {"regular-hyperbolic", DynamicalType::RegularHyperbolic},
        {"strictly-hyperbolic", DynamicalType::StrictlyHyperbolic},
        {"screw-hyperbolic", DynamicalType::ScrewHyperbolic},
        {"loxodromic", DynamicalType::Loxodromic},
        {"vertical-heisenberg", DynamicalType::VerticalHeisenbergTranslation},
        {"non-vertical-heisenberg", DynamicalType::NonVerticalHeisenbergTranslation},
        {"ellipto-translation", DynamicalType::ElliptoTranslation},
        {"ellipto-parabolic", DynamicalType::ElliptoParabolic},
        {"screw-parabolic", DynamicalType::ScrewParabolic},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

DynamicalType collapse_for_field(DynamicalType t, Field f) {
    if (f == Field::H) return t;
    switch (t) {
        case DynamicalType::RegularHyperbolic:
        case DynamicalType::StrictlyHyperbolic:
        case DynamicalType::ScrewHyperbolic: return DynamicalType::Loxodromic;
        case DynamicalType::ElliptoTranslation: return DynamicalType::VerticalHeisenbergTranslation;
        case DynamicalType::ElliptoParabolic: return DynamicalType::NonVerticalHeisenbergTranslation;
        default: return t;
    }
}

namespace {

// Sign decision with a tolerance band and a near-flip flag.
int sign_with_band(double v, double thr, double factor, bool* near) {
    double av = std::fabs(v);
    if (near) *near = av > thr / factor && av < thr * factor;
    if (av <= thr) return 0;
    return v > 0 ? 1 : -1;
}

std::vector<EigenClassInfo> classes_from_roots(const ResolventCubic& res, const Tolerances& tol,
                                               std::string& notes) {
    std::vector<EigenClassInfo> out;
    auto push_unit = [&](double t, int mult) {
        EigenClassInfo c;
        c.modulus = 1.0;
        double snap = tol.root_cluster * (1.0 + std::fabs(t));
        if (std::fabs(std::fabs(t) - 2.0) <= snap) {
            c.angle = t >= 0 ? 0.0 : M_PI;
        } else {
            c.angle = std::acos(std::clamp(t / 2.0, -1.0, 1.0));
        }
        c.multiplicity = mult;
        c.unit_modulus = true;
        c.real_angle = std::fabs(std::sin(c.angle)) <= tol.angle_real;
        out.push_back(c);
    };
    for (const auto& r : res.roots) {
        if (std::fabs(r.value.imag()) > 0) {
            if (r.value.imag() < 0) continue; // partner of the conjugate root
            std::complex<double> t = r.value;
            std::complex<double> s = std::sqrt(t * t - 4.0);
            std::complex<double> lam = (t + s) / 2.0;
            if (std::abs(lam) < 1.0) lam = (t - s) / 2.0;
            for (std::complex<double> v : {lam, 1.0 / lam}) {
                EigenClassInfo c;
                c.modulus = std::abs(v);
                c.angle = std::fabs(std::arg(v));
                c.multiplicity = r.multiplicity;
                c.unit_modulus = false;
                c.real_angle = std::fabs(std::sin(c.angle)) <= tol.angle_real;
                if (c.real_angle) c.angle = c.angle > M_PI_2 ? M_PI : 0.0;
                out.push_back(c);
            }
            continue;
        }
        double t = r.value.real();
        double snap = tol.root_cluster * (1.0 + std::fabs(t));
        if (std::fabs(t) <= 2.0 + snap) {
            push_unit(t, r.multiplicity);
        } else {
            // real off-circle pair {lambda, 1/lambda}; chi-multiplicity of the
            // pair is even for group members
            double lam = (t + (t >= 0 ? 1.0 : -1.0) * std::sqrt(t * t - 4.0)) / 2.0;
            int m = r.multiplicity / 2;
            if (r.multiplicity % 2 != 0) {
                notes += "odd multiplicity at an off-circle real root; ";
                m = std::max(1, m);
            }
            for (double v : {lam, 1.0 / lam}) {
                EigenClassInfo c;
                c.modulus = std::fabs(v);
                c.angle = v >= 0 ? 0.0 : M_PI;
                c.multiplicity = m;
                c.unit_modulus = false;
                c.real_angle = true;
                out.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const EigenClassInfo& a, const EigenClassInfo& b) { return a.modulus > b.modulus; });
    return out;
}

} // namespace

Classification classify(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol) {
    double scale = 1.0 + max_abs_entry(a) * max_abs_entry(a);
    double res_mem = membership_residual(a, m);
    if (res_mem > tol.membership * scale) throw membership_error(res_mem);

    Classification cl;
    cl.field = field;
    cl.model = m;
    cl.inv.membership_residual = res_mem;
    cl.inv.tol_used = tol;

    CharPoly6 p;
    MinimalPolyStructure mps;
    if (field == Field::H) {
        Mat6c mc = complexify<double>(a);
        p = char_poly(mc, tol);
        mps = minimal_poly_structure(mc, tol);
    } else {
        Mat6d mr = realify(a, tol.rel * (1.0 + max_abs_entry(a)));
        p = char_poly(mr);
        mps = minimal_poly_structure(mr, tol);
    }
    auto abc = extract_abc(p, tol);
    cl.inv.a = abc[0];
    cl.inv.b = abc[1];
    cl.inv.c = abc[2];
    cl.inv.self_dual_residual = p.self_dual_residual;
    GHD g = ghd(abc[0], abc[1], abc[2]);
    cl.inv.G = g.G;
    cl.inv.H = g.H;
    cl.inv.Delta = g.Delta;
    cl.inv.min_degree = mps.min_degree;
    cl.inv.factor_structure = mps.factors;
    cl.borderline = mps.borderline;

    TreeInputs in;
    bool near = false;
    std::string notes;
    in.sign_delta = sign_with_band(g.Delta, tol.rel * delta_sign_scale(g.G, g.H),
                                   tol.borderline_factor, &near);
    if (near) {
        cl.borderline = true;
        notes += "Delta sign decision is near the tolerance band; ";
    }
    int gsign = sign_with_band(g.G, tol.rel * g_sign_scale(abc[0], abc[1], abc[2]),
                               tol.borderline_factor, &near);
    in.g_zero = gsign == 0;
    if (near) {
        cl.borderline = true;
        notes += "G sign decision is near the tolerance band; ";
    }
    double abc_dev = std::max({std::fabs(abc[0] - 6.0), std::fabs(abc[1] - 15.0),
                               std::fabs(abc[2] - 20.0)});
    in.abc_unipotent = abc_dev <= tol.rel * 50.0;
    if (abc_dev > tol.rel * 5.0 && abc_dev < tol.rel * 500.0) {
        cl.borderline = true;
        notes += "(a,b,c) vs (6,15,20) decision is near the tolerance band; ";
    }
    in.min_degree = mps.min_degree;

    ResolventCubic cubic = resolvent(abc[0], abc[1], abc[2], tol);
    if (in.sign_delta == 0 && !in.g_zero) {
        double t0 = resolvent_double_root(abc[0], abc[1], abc[2]);
        double margin = std::fabs(t0) - 2.0;
        double thr = tol.root_cluster * (1.0 + std::fabs(t0));
        in.double_root_off_circle = margin > thr;
        if (std::fabs(margin) > thr / tol.borderline_factor && std::fabs(margin) < thr * tol.borderline_factor) {
            cl.borderline = true;
            notes += "double resolvent root sits near |t| = 2; ";
        }
        double lhs = 16.0 * (abc[0] + abc[2]) * (abc[0] + abc[2]);
        double rhs = (abc[0] * abc[0] + 4.0 * abc[1] + 8.0) * (abc[0] * abc[0] + 4.0 * abc[1] + 8.0);
        double sscale = std::max(1.0, std::max(lhs, rhs));
        in.strict_identity_holds = std::fabs(lhs - rhs) <= tol.rel * sscale * 10.0;
        if (std::fabs(lhs - rhs) > tol.rel * sscale && std::fabs(lhs - rhs) < tol.rel * sscale * 100.0) {
            cl.borderline = true;
            notes += "strict-hyperbolic coefficient identity is near the tolerance band; ";
        }
    }

    DynamicalType dtype = decide(in);
    cl.eigen_classes = classes_from_roots(cubic, tol, notes);

    int mult_sum = 0;
    for (const auto& c : cl.eigen_classes) mult_sum += c.multiplicity;
    if (mult_sum != 3) {
        cl.borderline = true;
        notes += "eigenvalue class multiplicities do not sum to 3; ";
    }

    cl.is_identity = in.abc_unipotent && mps.min_degree == 1;

    // Locate the negative line among elliptic eigenclass spaces (needed to
    // tell a complex elliptic whose repeated class spans the signature-(1,1)
    // plane from one whose repeated class is positive definite).
    bool elliptic_family = dtype == DynamicalType::RegularElliptic ||
                           dtype == DynamicalType::ComplexElliptic ||
                           dtype == DynamicalType::SimpleElliptic;
    if (elliptic_family) {
        if (cl.eigen_classes.size() == 1) {
            cl.eigen_classes[0].hosts_negative = true;
        } else {
            auto spaces = eigenclass_spaces(a, m, field, cl.eigen_classes, tol);
            for (size_t i = 0; i < spaces.size(); ++i)
                cl.eigen_classes[i].hosts_negative = spaces[i].sig_neg > 0;
        }
    }

    // Borderline reporting: list the alternative outcome for each marginal
    // decision.
    if (cl.borderline && !notes.empty()) {
        std::set<std::string> alts;
        for (int flip = 0; flip < 4; ++flip) {
            TreeInputs alt = in;
            switch (flip) {
                case 0: alt.sign_delta = alt.sign_delta == 0 ? 1 : 0; break;
                case 1: alt.g_zero = !alt.g_zero; break;
                case 2: alt.double_root_off_circle = !alt.double_root_off_circle; break;
                case 3: alt.strict_identity_holds = !alt.strict_identity_holds; break;
            }
            DynamicalType t2 = decide(alt);
            if (t2 != dtype) alts.insert(type_name(collapse_for_field(t2, field)));
        }
        if (!alts.empty()) {
            notes += "alternative candidates:";
            for (const auto& s : alts) notes += " " + s + ";";
        }
    }

    cl.dtype = collapse_for_field(dtype, field);
    if (field == Field::C && dtype != cl.dtype)
        notes += std::string("field C collapse applied (") + type_name(dtype) + " -> " +
                 type_name(cl.dtype) + "); ";
    if (field == Field::C && cl.dtype == DynamicalType::SimpleElliptic && !cl.is_identity)
        notes += "central element of U(2,1); acts as the identity on the complex hyperbolic plane; ";
    cl.diagnostics = notes;
    return cl;
}

LiteralVerdict classify_literal_theorem(const InvariantRecord& inv) {
    LiteralVerdict v;
    const Tolerances& tol = inv.tol_used;
    int sd = sign_with_band(inv.Delta, tol.rel * delta_sign_scale(inv.G, inv.H),
                            tol.borderline_factor, nullptr);
    int sg = sign_with_band(inv.G, tol.rel * g_sign_scale(inv.a, inv.b, inv.c),
                            tol.borderline_factor, nullptr);
    double a = inv.a, b = inv.b, c = inv.c;
    v.item2_bounds_hold = sd == 0 && sg != 0 && a > 6.0 && b > 15.0 && c > 20.0;
    v.item3_bounds_hold = sd <= 0 && std::fabs(a) < 6.0 && std::fabs(b) < 15.0 && std::fabs(c) < 20.0;
    bool abc_unipotent = std::max({std::fabs(a - 6.0), std::fabs(b - 15.0), std::fabs(c - 20.0)}) <=
                         tol.rel * 50.0;

    bool strict = false;
    {
        double lhs = 16.0 * (a + c) * (a + c);
        double rhs = (a * a + 4.0 * b + 8.0) * (a * a + 4.0 * b + 8.0);
        strict = std::fabs(lhs - rhs) <= tol.rel * std::max(1.0, std::max(lhs, rhs)) * 10.0;
    }

    if (sd > 0) {
        v.dtype = DynamicalType::RegularHyperbolic;
        v.covered = true;
        return v;
    }
    if (v.item2_bounds_hold) {
        v.dtype = strict ? DynamicalType::StrictlyHyperbolic : DynamicalType::ScrewHyperbolic;
        v.covered = true;
        return v;
    }
    if (abc_unipotent) {
        v.covered = true;
        if (inv.min_degree <= 1)
            v.dtype = DynamicalType::SimpleElliptic;
        else
            v.dtype = inv.min_degree == 2 ? DynamicalType::VerticalHeisenbergTranslation
                                          : DynamicalType::NonVerticalHeisenbergTranslation;
        return v;
    }
    if (v.item3_bounds_hold) {
        v.covered = true;
        if (sd < 0) {
            v.dtype = DynamicalType::RegularElliptic;
        } else if (sg != 0) {
            v.dtype = inv.min_degree >= 3 ? DynamicalType::ScrewParabolic
                                          : DynamicalType::ComplexElliptic;
        } else {
            if (inv.min_degree <= 1)
                v.dtype = DynamicalType::SimpleElliptic;
            else
                v.dtype = inv.min_degree == 2 ? DynamicalType::ElliptoTranslation
                                              : DynamicalType::ElliptoParabolic;
        }
        return v;
    }
    v.covered = false;
    v.note = "no clause of the published decision text applies to these invariants";
    return v;
}

} // namespace qhiso
