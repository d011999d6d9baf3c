#include "qhiso/normal_forms.hpp"

#include <algorithm>
#include <cmath>

#include "qhiso/eigenstructure.hpp"
#include "qhiso/embed.hpp"

namespace qhiso {

namespace {

Quaternion qpolar(double angle) { return from_complex(std::polar(1.0, angle)); }

Mat3q diag3(const Quaternion& a, const Quaternion& b, const Quaternion& c) {
    Mat3q m;
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
}

void check_angle(double angle, Field field, const char* name) {
    if (field == Field::H) {
        if (angle < -1e-12 || angle > M_PI + 1e-12)
            throw parameter_error(std::string(name) + " must lie in [0, pi] over H");
    } else {
        if (angle < -M_PI - 1e-12 || angle > M_PI + 1e-12)
            throw parameter_error(std::string(name) + " must lie in [-pi, pi] over C");
    }
}

Vec3q scale_vec(const Vec3q& v, const Quaternion& q) { return v * q; }

Vec3q normalize_euclid(const Vec3q& v) {
    double n = std::sqrt(euclidean_norm_sq(v));
    return v * Quaternion::scalar(1.0 / n);
}

Mat3q columns(const Vec3q& c0, const Vec3q& c1, const Vec3q& c2) {
    Mat3q m;
    for (int r = 0; r < 3; ++r) {
        m.at(r, 0) = c0[r];
        m.at(r, 1) = c1[r];
        m.at(r, 2) = c2[r];
    }
    return m;
}

} // namespace

NormalForm make_hyperbolic(double r, double beta, double theta, Field field) {
    if (!(r > 0.0) || r == 1.0) throw parameter_error("hyperbolic form requires r > 0, r != 1");
    check_angle(beta, field, "beta");
    check_angle(theta, field, "theta");
    NormalForm n;
    n.kind = NormalForm::Kind::Hyperbolic;
    n.model = ModelKind::Siegel;
    n.field = field;
    n.r = r;
    n.beta = beta;
    n.theta = theta;
    n.matrix = diag3(from_complex(std::polar(r, beta)), from_complex(std::polar(1.0 / r, beta)),
                     qpolar(theta));
    return n;
}

NormalForm make_elliptic(double theta, double phi, double psi, Field field) {
    check_angle(theta, field, "theta");
    check_angle(phi, field, "phi");
    check_angle(psi, field, "psi");
    NormalForm n;
    n.kind = NormalForm::Kind::Elliptic;
    n.model = ModelKind::Ball;
    n.field = field;
    n.theta = theta;
    n.phi = phi;
    n.psi = psi;
    n.matrix = diag3(qpolar(theta), qpolar(phi), qpolar(psi));
    return n;
}

bool triangular_fixed_point_test(const Quaternion& d, const Quaternion& f, const Quaternion& g,
                                 double theta, double phi, const Tolerances& tol) {
    Quaternion de = qpolar(phi) - qpolar(theta);
    std::vector<Quaternion> m2 = {f, d, de, g};
    std::vector<Quaternion> m1 = {f, de};
    int r2 = quaternion_rank(m2, 2, 2, tol.rank_rel);
    int r1 = quaternion_rank(m1, 2, 1, tol.rank_rel);
    return r2 == r1; // solvable fixed-point system: elliptic
}

NormalForm make_parabolic(double theta, double phi, std::complex<double> d,
                          std::complex<double> g, Field field, const Tolerances& tol) {
    check_angle(theta, field, "theta");
    check_angle(phi, field, "phi");
    NormalForm n;
    n.kind = NormalForm::Kind::Parabolic;
    n.model = ModelKind::Siegel;
    n.field = field;
    n.theta = theta;
    n.phi = phi;

    // membership constraint Re(e^{-i theta} d) = |g|^2 / 2, adjusting only
    // that component of d
    std::complex<double> et = std::polar(1.0, theta);
    std::complex<double> local = d / et; // d = e^{i theta} (u + iv)
    double target = 0.5 * std::norm(g);
    n.d_projected = std::fabs(local.real() - target) > tol.rel * (1.0 + std::abs(d));
    local = {target, local.imag()};
    d = et * local;
    if (std::abs(d) == 0.0) throw parameter_error("parabolic form requires d != 0");

    std::complex<double> f = std::polar(1.0, theta + phi) * std::conj(g);
    n.d = d;
    n.f = f;
    n.g = g;

    if (triangular_fixed_point_test(from_complex(d), from_complex(f), from_complex(g), theta, phi,
                                    tol))
        throw not_parabolic_error(
            "parameters admit a fixed point in the domain (element is elliptic, not parabolic)");

    Mat3q m;
    m.at(0, 0) = qpolar(theta);
    m.at(1, 0) = from_complex(d);
    m.at(1, 1) = qpolar(theta);
    m.at(1, 2) = from_complex(f);
    m.at(2, 0) = from_complex(g);
    m.at(2, 2) = qpolar(phi);
    n.matrix = m;
    return n;
}

namespace {

Quaternion random_quaternion(Field field, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    if (field == Field::H) return Quaternion(nd(rng), nd(rng), nd(rng), nd(rng));
    return Quaternion(nd(rng), nd(rng), 0.0, 0.0);
}

Vec3q random_vector(Field field, std::mt19937_64& rng) {
    Vec3q v;
    for (int i = 0; i < 3; ++i) v[i] = random_quaternion(field, rng);
    return v;
}

// subtract the form-projections onto already accepted columns (norms +-1)
Vec3q project_out(const Vec3q& v, const std::vector<std::pair<Vec3q, double>>& basis,
                  ModelKind m) {
    Vec3q r = v;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& [w, sign] : basis) {
            Quaternion coef = inner<double>(w, r, m) * sign;
            r = r - scale_vec(w, coef);
        }
    return r;
}

} // namespace

Mat3q random_isometry(Field field, ModelKind m, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        // negative column first
        Vec3q v0 = random_vector(field, rng);
        double ip0 = inner<double>(v0, v0, ModelKind::Ball).re();
        if (ip0 > -0.05 * euclidean_norm_sq(v0)) continue;
        v0 = scale_vec(v0, Quaternion::scalar(1.0 / std::sqrt(-ip0)));
        std::vector<std::pair<Vec3q, double>> basis{{v0, -1.0}};

        bool ok = true;
        for (int k = 1; k < 3 && ok; ++k) {
            Vec3q v = project_out(random_vector(field, rng), basis, ModelKind::Ball);
            double ip = inner<double>(v, v, ModelKind::Ball).re();
            if (ip < 1e-6 * euclidean_norm_sq(v) || euclidean_norm_sq(v) < 1e-6) {
                ok = false;
                break;
            }
            basis.emplace_back(scale_vec(v, Quaternion::scalar(1.0 / std::sqrt(ip))), 1.0);
        }
        if (!ok) continue;
        Mat3q s = columns(basis[0].first, basis[1].first, basis[2].first);
        if (membership_residual(s, ModelKind::Ball) > 1e-10) continue;
        if (m == ModelKind::Siegel) {
            s = cayley_conjugate(s, CayleyDirection::BallToSiegel);
            if (membership_residual(s, ModelKind::Siegel) > 1e-10) continue;
        }
        return s;
    }
    throw numerical_failure(1.0); // not reachable for sane RNG streams
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

int coin(std::mt19937_64& rng, double p) {
    std::uniform_real_distribution<double> d(0.0, 1.0);
    return d(rng) < p ? 1 : 0;
}

double signed_angle(std::mt19937_64& rng, double lo, double hi, Field field) {
    double a = uniform(rng, lo, hi);
    if (field == Field::C && coin(rng, 0.5)) a = -a;
    return a;
}

// three angles with pairwise separated cosines (distinct eigenvalue classes)
void separated_angles(std::mt19937_64& rng, Field field, int count, double* out) {
    for (int tries = 0; tries < 1000; ++tries) {
        for (int i = 0; i < count; ++i) out[i] = signed_angle(rng, 0.15, M_PI - 0.15, field);
        bool ok = true;
        for (int i = 0; i < count && ok; ++i)
            for (int j = i + 1; j < count; ++j)
                if (std::fabs(std::cos(out[i]) - std::cos(out[j])) < 0.12) {
                    ok = false;
                    break;
                }
        if (ok) return;
    }
    throw numerical_failure(0.0);
}

} // namespace

Sample sample(DynamicalType t, Field field, std::mt19937_64& rng) {
    Sample s;
    s.field = field;
    NormalForm n;
    switch (t) {
        case DynamicalType::RegularHyperbolic: {
            double r = uniform(rng, 1.3, 2.5);
            double beta = signed_angle(rng, 0.25, M_PI - 0.25, field);
            double theta = signed_angle(rng, 0.1, M_PI - 0.1, field);
            n = make_hyperbolic(r, beta, theta, field);
            break;
        }
        case DynamicalType::Loxodromic: {
            if (field == Field::H) throw parameter_error("loxodromic is the field-C taxonomy");
            double r = uniform(rng, 1.3, 2.5);
            double beta = signed_angle(rng, 0.25, M_PI - 0.25, field);
            double theta = signed_angle(rng, 0.1, M_PI - 0.1, field);
            n = make_hyperbolic(r, beta, theta, field);
            break;
        }
        case DynamicalType::StrictlyHyperbolic: {
            double r = uniform(rng, 1.3, 2.5);
            double beta = coin(rng, 0.5) ? 0.0 : M_PI;
            double theta = coin(rng, 0.5) ? 0.0 : M_PI;
            n = make_hyperbolic(r, beta, theta, field);
            break;
        }
        case DynamicalType::ScrewHyperbolic: {
            double r = uniform(rng, 1.3, 2.5);
            double beta = coin(rng, 0.5) ? 0.0 : M_PI;
            double theta = signed_angle(rng, 0.25, M_PI - 0.25, field);
            n = make_hyperbolic(r, beta, theta, field);
            break;
        }
        case DynamicalType::RegularElliptic: {
            double a[3];
            separated_angles(rng, field, 3, a);
            n = make_elliptic(a[0], a[1], a[2], field);
            break;
        }
        case DynamicalType::ComplexElliptic: {
            double a[2];
            separated_angles(rng, field, 2, a);
            double rep = a[0], other = a[1];
            if (field == Field::C && coin(rng, 0.5)) {
                // same class, opposite signed angle
                n = coin(rng, 0.5) ? make_elliptic(other, rep, -rep, field)
                                   : make_elliptic(rep, -rep, other, field);
                break;
            }
            n = coin(rng, 0.5) ? make_elliptic(other, rep, rep, field)   // repeated class positive
                               : make_elliptic(rep, rep, other, field);  // repeated class mixed
            break;
        }
        case DynamicalType::SimpleElliptic: {
            double a = signed_angle(rng, 0.15, M_PI - 0.15, field);
            n = make_elliptic(a, a, a, field);
            break;
        }
        case DynamicalType::VerticalHeisenbergTranslation: {
            double sgn = coin(rng, 0.5) ? 1.0 : -1.0;
            std::complex<double> d(0.0, sgn * uniform(rng, 0.5, 2.0));
            n = make_parabolic(0.0, 0.0, d, 0.0, field);
            break;
        }
        case DynamicalType::NonVerticalHeisenbergTranslation: {
            std::complex<double> g = std::polar(uniform(rng, 0.5, 1.5), uniform(rng, 0.0, 2 * M_PI));
            double sgn = coin(rng, 0.5) ? 1.0 : -1.0;
            std::complex<double> d(0.5 * std::norm(g), sgn * uniform(rng, 0.5, 2.0));
            n = make_parabolic(0.0, 0.0, d, g, field);
            break;
        }
        case DynamicalType::ElliptoTranslation: {
            if (field == Field::C) throw parameter_error("ellipto-translation occurs only over H");
            double theta = coin(rng, 0.25) ? M_PI : uniform(rng, 0.25, M_PI - 0.25);
            double sgn = coin(rng, 0.5) ? 1.0 : -1.0;
            std::complex<double> d =
                std::polar(1.0, theta) * std::complex<double>(0.0, sgn * uniform(rng, 0.5, 2.0));
            n = make_parabolic(theta, theta, d, 0.0, field);
            break;
        }
        case DynamicalType::ElliptoParabolic: {
            if (field == Field::C) throw parameter_error("ellipto-parabolic occurs only over H");
            double theta = coin(rng, 0.25) ? M_PI : uniform(rng, 0.25, M_PI - 0.25);
            std::complex<double> g = std::polar(uniform(rng, 0.5, 1.5), uniform(rng, 0.0, 2 * M_PI));
            double sgn = coin(rng, 0.5) ? 1.0 : -1.0;
            std::complex<double> d =
                std::polar(1.0, theta) *
                std::complex<double>(0.5 * std::norm(g), sgn * uniform(rng, 0.5, 2.0));
            n = make_parabolic(theta, theta, d, g, field);
            break;
        }
        case DynamicalType::ScrewParabolic: {
            for (int tries = 0;; ++tries) {
                double theta = coin(rng, 0.3) ? (coin(rng, 0.5) ? 0.0 : M_PI)
                                              : signed_angle(rng, 0.15, M_PI - 0.15, field);
                double phi = coin(rng, 0.3) ? (coin(rng, 0.5) ? 0.0 : M_PI)
                                            : signed_angle(rng, 0.15, M_PI - 0.15, field);
                if (std::fabs(std::cos(theta) - std::cos(phi)) < 0.12) continue;
                double sgn = coin(rng, 0.5) ? 1.0 : -1.0;
                std::complex<double> d =
                    std::polar(1.0, theta) * std::complex<double>(0.0, sgn * uniform(rng, 0.5, 2.0));
                std::complex<double> g =
                    coin(rng, 0.3) ? std::polar(uniform(rng, 0.3, 1.0), uniform(rng, 0.0, 2 * M_PI))
                                   : std::complex<double>(0.0);
                if (std::norm(g) > 0)
                    d = std::polar(1.0, theta) *
                        std::complex<double>(0.5 * std::norm(g), sgn * uniform(rng, 0.5, 2.0));
                try {
                    n = make_parabolic(theta, phi, d, g, field);
                    break;
                } catch (const not_parabolic_error&) {
                    if (tries > 50) throw;
                }
            }
            break;
        }
    }
    s.form = n;
    s.model = n.model;
    s.ground_truth = collapse_for_field(t, field);
    s.conjugator = random_isometry(field, n.model, rng);
    Mat3q sinv = inverse_pattern<double>(s.conjugator, n.model);
    s.matrix = s.conjugator * n.matrix * sinv;
    return s;
}

// ---------------------------------------------------------------------------
// fixed points

FixedPointReport fixed_point_analysis(const Mat3q& a, ModelKind m, const Tolerances& tol) {
    Classification cls = classify(a, m, Field::H, tol);
    auto spaces = eigenclass_spaces(a, m, Field::H, cls.eigen_classes, tol);

    FixedPointReport rep;
    bool all_unit = true;
    for (const auto& sp : spaces) {
        if (!sp.cls.unit_modulus) all_unit = false;
        if (sp.basis.empty()) continue;
        // boundary representative: radical of the restricted form (isotropic,
        // orthogonal to the whole class space)
        if (sp.radical) {
            rep.points.push_back(locate(*sp.radical, m, tol));
        }
        // signed representatives from the diagonalized restricted form
        if (sp.sig_neg > 0 || sp.sig_pos > 0) {
            // search basis and small combinations for definite vectors
            std::vector<Vec3q> cands = sp.basis;
            for (size_t i = 0; i < sp.basis.size(); ++i)
                for (size_t j = i + 1; j < sp.basis.size(); ++j)
                    for (const Quaternion& xi :
                         {Quaternion::one(), -Quaternion::one(), Quaternion::i(), Quaternion::j()})
                        cands.push_back(normalize_euclid(sp.basis[i] + scale_vec(sp.basis[j], xi)));
            bool want_neg = sp.sig_neg > 0, want_pos = sp.sig_pos > 0;
            for (const auto& v : cands) {
                if (!want_neg && !want_pos) break;
                double ip = inner<double>(v, v, m).re();
                double nn = euclidean_norm_sq(v);
                if (want_neg && ip < -1e-6 * nn) {
                    rep.points.push_back(ProjectivePoint{v, Location::Interior});
                    want_neg = false;
                } else if (want_pos && ip > 1e-6 * nn) {
                    rep.points.push_back(ProjectivePoint{v, Location::Exterior});
                    want_pos = false;
                }
            }
        }
    }
    for (const auto& p : rep.points) {
        switch (p.location) {
            case Location::Interior: ++rep.interior_count; break;
            case Location::Boundary: ++rep.boundary_count; break;
            case Location::Exterior: ++rep.exterior_count; break;
        }
    }
    if (rep.interior_count > 0) {
        rep.kind = FixedPointReport::Kind::Elliptic;
    } else if (rep.boundary_count >= 2) {
        rep.kind = FixedPointReport::Kind::HyperbolicPair;
    } else if (rep.boundary_count == 1) {
        rep.kind = FixedPointReport::Kind::Parabolic;
    } else if (all_unit && m == ModelKind::Siegel &&
               stabilizer_shape(a, tol) == StabilizerShape::GInfinity) {
        // Tie-breaker: fixed-point solvability of the triangular form
        Quaternion aa = a.at(0, 0), l = a.at(2, 2);
        Quaternion u = conjugator_to_upper_complex(aa);
        Quaternion v = conjugator_to_upper_complex(l);
        Quaternion d = u * a.at(1, 0) * u.conj();
        Quaternion f = u * a.at(1, 2) * v.conj();
        Quaternion g = v * a.at(2, 0) * u.conj();
        double theta = similarity_representative(aa).angle;
        double phi = similarity_representative(l).angle;
        bool ell = triangular_fixed_point_test(d, f, g, theta, phi, tol);
        rep.kind = ell ? FixedPointReport::Kind::Elliptic : FixedPointReport::Kind::Parabolic;
        rep.note = "kind resolved by the triangular fixed-point rank test";
    } else {
        rep.kind = FixedPointReport::Kind::Parabolic;
        rep.note = "no definite fixed points located; defaulted to parabolic";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// normalization

namespace {

struct Slot {
    Vec3q v;
    double sign;  // form norm sign (+1/-1)
    double angle; // signed for field C
};

// Form-orthonormalize the candidates.  When complex_coeffs is set, all
// right coefficients used on the candidates stay complex: recombining
// same-representative eigenvectors with complex coefficients keeps them
// eigenvectors for that representative, quaternionic coefficients do not.
std::vector<std::pair<Vec3q, double>> orthonormalize_in_form(std::vector<Vec3q> cands, int want,
                                                             ModelKind m, bool complex_coeffs) {
    size_t base = cands.size();
    for (size_t i = 0; i < base; ++i)
        for (size_t j = i + 1; j < base; ++j) {
            // pair combinations cover bases whose vectors are individually
            // near-isotropic inside a signature-(1,1) class space
            Quaternion cross = inner<double>(cands[i], cands[j], m);
            Quaternion xi = abs(cross) > 1e-12 ? cross.conj() * (1.0 / abs(cross))
                                               : Quaternion::one();
            if (complex_coeffs) {
                std::complex<double> z = complex_part(xi);
                double az = std::abs(z);
                xi = from_complex(az > 1e-12 ? z / az : 1.0);
            }
            cands.push_back(normalize_euclid(cands[i] + scale_vec(cands[j], xi)));
            cands.push_back(normalize_euclid(cands[i] - scale_vec(cands[j], xi)));
        }
    std::stable_sort(cands.begin(), cands.end(), [&](const Vec3q& x, const Vec3q& y) {
        return inner<double>(x, x, m).re() < inner<double>(y, y, m).re();
    });

    std::vector<std::pair<Vec3q, double>> accepted;
    for (const auto& cand : cands) {
        if (static_cast<int>(accepted.size()) >= want) break;
        Vec3q v = cand;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& [w, sign] : accepted) {
                Quaternion coef = inner<double>(w, v, m) * sign;
                if (complex_coeffs) coef = from_complex(complex_part(coef));
                v = v - scale_vec(w, coef);
            }
        double ip = inner<double>(v, v, m).re();
        if (std::fabs(ip) < 1e-5 * std::max(euclidean_norm_sq(v), 1e-30)) continue;
        double s = ip > 0 ? 1.0 : -1.0;
        v = scale_vec(v, Quaternion::scalar(1.0 / std::sqrt(std::fabs(ip))));
        accepted.emplace_back(v, s);
    }
    return accepted;
}

double signed_class_angle(const EigenClassInfo& cls, const Quaternion& witness, Field field) {
    double angle = cls.angle;
    if (field == Field::C) {
        double arg = std::arg(complex_part(witness));
        if (arg < 0) angle = -angle;
    }
    return angle;
}

struct Pipeline {
    Mat3q s; // accumulated conjugator
    ModelKind model;
    Mat3q apply_to(const Mat3q& a0) const {
        return s * a0 * inverse_pattern<double>(s, model);
    }
    void push(const Mat3q& t) { s = t * s; }
};

NormalizeResult finish(const Mat3q& a, const NormalForm& n, const Mat3q& s,
                       std::optional<Mat3q> intermediate, double scale) {
    NormalizeResult r;
    r.form = n;
    r.conjugator = s;
    r.triangular_intermediate = std::move(intermediate);
    Mat3q sinv = inverse_pattern<double>(s, n.model);
    r.residual = max_abs_entry(s * a * sinv - n.matrix);
    if (r.residual > 1e-6 * scale) throw numerical_failure(r.residual);
    return r;
}

NormalizeResult normalize_elliptic(const Mat3q& a, const Classification& cls, Field field,
                                   const Tolerances& tol) {
    std::vector<Slot> slots;
    for (const auto& c : cls.eigen_classes) {
        if (c.real_angle) {
            // real representative commutes with everything: quaternionic
            // recombination of the kernel stays inside the eigenvectors
            double root = c.angle > M_PI_2 ? -1.0 : 1.0;
            auto basis = polynomial_kernel(a, field, true, root, 0, 0, tol);
            for (const auto& [v, sign] :
                 orthonormalize_in_form(basis, c.multiplicity, ModelKind::Ball, field == Field::C))
                slots.push_back(Slot{v, sign, c.angle > M_PI_2 ? M_PI : 0.0});
            continue;
        }
        if (field == Field::H) {
            auto basis = eigenvector_basis(a, field, std::polar(1.0, c.angle), tol);
            for (const auto& [v, sign] :
                 orthonormalize_in_form(basis, c.multiplicity, ModelKind::Ball, true))
                slots.push_back(Slot{v, sign, c.angle});
        } else {
            // over C the unsigned class splits into the two signed
            // eigenvalues; each eigenspace is handled on its own
            for (double sgn : {1.0, -1.0}) {
                auto basis = eigenvector_basis(a, field, std::polar(1.0, sgn * c.angle), tol);
                if (basis.empty()) continue;
                int want = static_cast<int>(basis.size());
                for (const auto& [v, sign] :
                     orthonormalize_in_form(basis, want, ModelKind::Ball, true))
                    slots.push_back(Slot{v, sign, sgn * c.angle});
            }
        }
    }
    if (slots.size() != 3) throw numerical_failure(1.0);
    auto negit =
        std::find_if(slots.begin(), slots.end(), [](const Slot& s) { return s.sign < 0; });
    if (negit == slots.end()) throw numerical_failure(1.0);
    std::iter_swap(slots.begin(), negit);

    Mat3q b = columns(slots[0].v, slots[1].v, slots[2].v);
    Mat3q binv = inverse_pattern<double>(b, ModelKind::Ball);
    Mat3q d = binv * a * b;

    double ang[3];
    Quaternion units[3];
    for (int i = 0; i < 3; ++i) {
        Quaternion di = d.at(i, i);
        units[i] = field == Field::H ? conjugator_to_upper_complex(di) : Quaternion::one();
        ang[i] = slots[static_cast<size_t>(i)].angle;
    }
    Mat3q u = diag3(units[0], units[1], units[2]);
    NormalForm n = make_elliptic(ang[0], ang[1], ang[2], field);
    Mat3q s = u * binv;
    return finish(a, n, s, std::nullopt, 1.0 + max_abs_entry(a) * max_abs_entry(a));
}

NormalizeResult normalize_hyperbolic(const Mat3q& a, const Classification& cls, Field field,
                                     const Tolerances& tol) {
    const EigenClassInfo* big = nullptr;
    const EigenClassInfo* small = nullptr;
    const EigenClassInfo* unit = nullptr;
    for (const auto& c : cls.eigen_classes) {
        if (c.unit_modulus)
            unit = &c;
        else if (c.modulus > 1.0)
            big = &c;
        else
            small = &c;
    }
    if (!big || !small || !unit) throw numerical_failure(1.0);
    auto spaces = eigenclass_spaces(a, ModelKind::Siegel, field,
                                    std::vector<EigenClassInfo>{*big, *small, *unit}, tol);
    if (spaces[0].basis.empty() || spaces[1].basis.empty() || spaces[2].basis.empty())
        throw numerical_failure(1.0);
    Vec3q vplus = spaces[0].basis[0];
    Vec3q vminus = spaces[1].basis[0];
    Vec3q p = spaces[2].basis[0];

    Quaternion cross = inner<double>(vplus, vminus, ModelKind::Siegel);
    if (abs(cross) < 1e-10) throw numerical_failure(1.0);
    vminus = scale_vec(vminus, -cross.inverse());
    double pp = inner<double>(p, p, ModelKind::Siegel).re();
    if (pp <= 0) throw numerical_failure(1.0);
    p = scale_vec(p, Quaternion::scalar(1.0 / std::sqrt(pp)));

    Mat3q b = columns(vplus, vminus, p);
    Mat3q binv = inverse_pattern<double>(b, ModelKind::Siegel);
    Mat3q d = binv * a * b;

    Quaternion u = field == Field::H ? conjugator_to_upper_complex(d.at(0, 0)) : Quaternion::one();
    Quaternion v = field == Field::H ? conjugator_to_upper_complex(d.at(2, 2)) : Quaternion::one();
    double beta = signed_class_angle(*big, d.at(0, 0), field);
    double theta = signed_class_angle(*unit, d.at(2, 2), field);
    NormalForm n = make_hyperbolic(big->modulus, beta, theta, field);
    Mat3q s = diag3(u, u, v) * binv;
    return finish(a, n, s, std::nullopt, 1.0 + max_abs_entry(a) * max_abs_entry(a));
}

NormalizeResult normalize_parabolic(const Mat3q& a, const Classification& cls, Field field,
                                    const Tolerances& tol) {
    // theta class: the repeated one (or the single class); phi class: the other
    const EigenClassInfo* theta_cls = nullptr;
    const EigenClassInfo* phi_cls = nullptr;
    if (cls.eigen_classes.size() == 1) {
        theta_cls = phi_cls = &cls.eigen_classes[0];
    } else {
        for (const auto& c : cls.eigen_classes)
            (c.multiplicity >= 2 ? theta_cls : phi_cls) = &c;
    }
    if (!theta_cls || !phi_cls) throw numerical_failure(1.0);

    auto spaces = eigenclass_spaces(a, ModelKind::Siegel, field,
                                    std::vector<EigenClassInfo>{*theta_cls}, tol);
    const ClassSpace& sp = spaces[0];
    Vec3q v;
    if (sp.basis.size() == 1)
        v = sp.basis[0];
    else if (sp.radical)
        v = *sp.radical;
    else
        throw numerical_failure(1.0);

    // isotropic partner w with <v,w> = -1 and positive unit p orthogonal to both
    Vec3q w{};
    {
        Vec3q best{};
        double best_ip = 0.0;
        for (int i = 0; i < 3; ++i) {
            Vec3q e{};
            e[i] = Quaternion::one();
            double ip = abs(inner<double>(v, e, ModelKind::Siegel));
            if (ip > best_ip) {
                best_ip = ip;
                best = e;
            }
        }
        if (best_ip < 1e-8) throw numerical_failure(1.0);
        Quaternion q = -inner<double>(v, best, ModelKind::Siegel).inverse();
        Vec3q y = scale_vec(best, q); // <v,y> = -1
        // w = y - v*mu with <w,w> = <y,y> + 2 Re(mu); mu = -<y,y>/2 kills it
        double yy = inner<double>(y, y, ModelKind::Siegel).re();
        w = y + scale_vec(v, Quaternion::scalar(0.5 * yy));
    }
    Vec3q p{};
    {
        double best_norm = -1.0;
        for (int i = 0; i < 3; ++i) {
            Vec3q x{};
            x[i] = Quaternion::one();
            Quaternion beta = -inner<double>(v, x, ModelKind::Siegel);
            Quaternion alpha = -inner<double>(w, x, ModelKind::Siegel);
            Vec3q cand = x - scale_vec(v, alpha) - scale_vec(w, beta);
            double ip = inner<double>(cand, cand, ModelKind::Siegel).re();
            if (ip > best_norm) {
                best_norm = ip;
                p = cand;
            }
        }
        if (best_norm <= 1e-10) throw numerical_failure(1.0);
        p = scale_vec(p, Quaternion::scalar(1.0 / std::sqrt(best_norm)));
    }

    Mat3q b1 = columns(w, v, p);
    Mat3q s = inverse_pattern<double>(b1, ModelKind::Siegel);
    Mat3q a1 = s * a * b1;

    // diagonal to class representatives
    Quaternion u = field == Field::H ? conjugator_to_upper_complex(a1.at(0, 0)) : Quaternion::one();
    Quaternion v3 = field == Field::H ? conjugator_to_upper_complex(a1.at(2, 2)) : Quaternion::one();
    Mat3q udiag = diag3(u, u, v3);
    s = udiag * s;
    Mat3q a2 = udiag * a1 * inverse_pattern<double>(udiag, ModelKind::Siegel);

    bool two_classes = theta_cls != phi_cls;
    std::optional<Mat3q> intermediate;
    double theta = signed_class_angle(*theta_cls, a2.at(0, 0), field);
    double phi = two_classes ? signed_class_angle(*phi_cls, a2.at(2, 2), field) : theta;

    if (two_classes) {
        double fg = max_component(a2.at(1, 2)) + max_component(a2.at(2, 0));
        if (fg > tol.rel * 100.0 * (1.0 + max_abs_entry(a2))) intermediate = a2;
        // kill f and g: conjugate by [[1,0,0],[t,1,conj(c)],[c,0,1]] with
        // c lambda1 - lambda2 c = -g
        Quaternion lam1 = a2.at(0, 0), lam2 = a2.at(2, 2), g = a2.at(2, 0);
        std::vector<double> mat(16), rhs = {-g.w, -g.x, -g.y, -g.z};
        const Quaternion basis[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                     Quaternion::k()};
        for (int col = 0; col < 4; ++col) {
            Quaternion img = basis[col] * lam1 - lam2 * basis[col];
            mat[0 * 4 + static_cast<size_t>(col)] = img.w;
            mat[1 * 4 + static_cast<size_t>(col)] = img.x;
            mat[2 * 4 + static_cast<size_t>(col)] = img.y;
            mat[3 * 4 + static_cast<size_t>(col)] = img.z;
        }
        if (!solve_real(mat, rhs, 4)) throw numerical_failure(1.0);
        Quaternion c(rhs[0], rhs[1], rhs[2], rhs[3]);
        Mat3q t = Mat3q::identity();
        t.at(1, 0) = Quaternion::scalar(0.5 * c.norm_sq());
        t.at(1, 2) = c.conj();
        t.at(2, 0) = c;
        s = t * s;
        a2 = t * a2 * inverse_pattern<double>(t, ModelKind::Siegel);
    } else if (field == Field::H) {
        intermediate = a2;
        if (!theta_cls->real_angle) {
            // first make f and g complex: conjugate by B1 with c = j z,
            // z = -g_j / (2 i sin theta)
            std::complex<double> gj = jpart(a2.at(2, 0));
            double s_theta = std::sin(theta_cls->angle);
            if (std::abs(gj) > 1e-14 && std::fabs(s_theta) > 1e-9) {
                std::complex<double> z = -gj / (std::complex<double>(0.0, 2.0 * s_theta));
                Quaternion c = from_parts(0.0, z);
                Mat3q t = Mat3q::identity();
                t.at(1, 0) = Quaternion::scalar(0.5 * c.norm_sq());
                t.at(1, 2) = c.conj();
                t.at(2, 0) = c;
                s = t * s;
                a2 = t * a2 * inverse_pattern<double>(t, ModelKind::Siegel);
            }
        }
    }

    // make d complex (and for real classes, also f and g)
    if (field == Field::H) {
        Quaternion d = a2.at(1, 0);
        if (theta_cls->real_angle) {
            Quaternion ud = conjugator_to_upper_complex(d);
            Quaternion f = ud * a2.at(1, 2);
            Quaternion vf = Quaternion::one();
            if (abs(f) > 1e-12) vf = f * (1.0 / abs(f));
            Mat3q t = diag3(ud, ud, vf);
            s = t * s;
            a2 = t * a2 * inverse_pattern<double>(t, ModelKind::Siegel);
        } else {
            std::complex<double> dj = jpart(d);
            double s_theta = std::sin(theta_cls->angle);
            if (std::abs(dj) > 1e-14 && std::fabs(s_theta) > 1e-9) {
                std::complex<double> z = -dj / (std::complex<double>(0.0, 2.0 * s_theta));
                Mat3q t = Mat3q::identity();
                t.at(1, 0) = from_parts(0.0, z);
                s = t * s;
                a2 = t * a2 * inverse_pattern<double>(t, ModelKind::Siegel);
            }
        }
    }

    std::complex<double> dfin = complex_part(a2.at(1, 0));
    std::complex<double> gfin = complex_part(a2.at(2, 0));
    if (std::abs(gfin) < 1e-9) gfin = 0.0;
    NormalForm n = make_parabolic(theta, phi, dfin, gfin, field, tol);
    return finish(a, n, s, intermediate, 1.0 + max_abs_entry(a) * max_abs_entry(a));
}

} // namespace

NormalizeResult normalize(const Mat3q& a0, ModelKind m, Field field, const Tolerances& tol) {
    Classification cls = classify(a0, m, field, tol);
    bool elliptic_family = cls.dtype == DynamicalType::RegularElliptic ||
                           cls.dtype == DynamicalType::ComplexElliptic ||
                           cls.dtype == DynamicalType::SimpleElliptic;
    bool hyperbolic_family = cls.dtype == DynamicalType::RegularHyperbolic ||
                             cls.dtype == DynamicalType::StrictlyHyperbolic ||
                             cls.dtype == DynamicalType::ScrewHyperbolic ||
                             cls.dtype == DynamicalType::Loxodromic;

    ModelKind want = elliptic_family ? ModelKind::Ball : ModelKind::Siegel;
    Mat3q a = a0;
    Mat3q pre = Mat3q::identity();
    if (m != want) {
        CayleyDirection dir = want == ModelKind::Siegel ? CayleyDirection::BallToSiegel
                                                        : CayleyDirection::SiegelToBall;
        a = cayley_conjugate(a0, dir);
        const double sh = std::sqrt(2.0) / 2.0;
        Mat3q c = cayley_matrix<double>(sh);
        pre = dir == CayleyDirection::BallToSiegel ? c : c.adjoint();
        cls = classify(a, want, field, tol);
    }

    NormalizeResult r;
    if (elliptic_family)
        r = normalize_elliptic(a, cls, field, tol);
    else if (hyperbolic_family)
        r = normalize_hyperbolic(a, cls, field, tol);
    else
        r = normalize_parabolic(a, cls, field, tol);

    if (m != want) {
        // S now includes the Cayley factor: S A0 S^-1 = (S_form C) A0 (S_form C)^-1
        // = S_form a S_form^-1, so the residual computed above is unchanged.
        r.conjugator = r.conjugator * pre;
    }
    return r;
}

} // namespace qhiso
