#include "qhiso/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "qhiso/embed.hpp"
#include "qhiso/normal_forms.hpp"

namespace qhiso {

namespace {

struct Cluster {
    double modulus;
    double angle;
    int count = 0; // complex eigenvalue count mapped to this representative
};

Eigen::MatrixXcd to_eigen(const Mat6c& m) {
    Eigen::MatrixXcd e(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) e(i, j) = m.at(i, j);
    return e;
}

int eigen_rank_abs(const Eigen::MatrixXcd& m, double threshold) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > threshold) ++rank;
    return rank;
}

} // namespace

EigenReport eigen_report(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol) {
    double scale = 1.0 + max_abs_entry(a) * max_abs_entry(a);
    double res = membership_residual(a, m);
    if (res > tol.membership * scale) throw membership_error(res);

    Mat6c ac = complexify<double>(a);
    Eigen::MatrixXcd em = to_eigen(ac);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> eigs(6);
    for (int i = 0; i < 6; ++i) eigs[static_cast<size_t>(i)] = solver.eigenvalues()(i);

    // fold into upper-half-plane representatives and cluster
    std::vector<Cluster> clusters;
    for (const auto& lam : eigs) {
        double mod = std::abs(lam);
        double ang = std::fabs(std::arg(lam));
        bool merged = false;
        for (auto& c : clusters) {
            if (std::fabs(c.modulus - mod) <= tol.oracle_cluster * std::max(1.0, c.modulus) &&
                std::fabs(std::cos(c.angle) - std::cos(ang)) <= tol.oracle_cluster) {
                // running mean keeps the representative centered
                c.modulus = (c.modulus * c.count + mod) / (c.count + 1);
                c.angle = (c.angle * c.count + ang) / (c.count + 1);
                ++c.count;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({mod, ang, 1});
    }

    EigenReport rep;
    for (auto& c : clusters) {
        EigenClassInfo info;
        info.multiplicity = c.count / 2; // each quaternionic class carries a conjugate pair
        if (c.count % 2 != 0) info.multiplicity = std::max(1, info.multiplicity);
        info.unit_modulus = std::fabs(c.modulus - 1.0) <= tol.circle * std::max(1.0, c.modulus);
        info.modulus = info.unit_modulus ? 1.0 : c.modulus;
        info.real_angle = std::fabs(std::sin(c.angle)) <= std::sqrt(tol.oracle_cluster);
        info.angle = info.real_angle ? (c.angle > M_PI_2 ? M_PI : 0.0) : c.angle;
        if (!info.unit_modulus) ++rep.off_circle;
        rep.classes.push_back(info);
    }
    std::sort(rep.classes.begin(), rep.classes.end(),
              [](const EigenClassInfo& x, const EigenClassInfo& y) { return x.modulus > y.modulus; });

    // diagonalizability: for each class representative lambda, the kernel of
    // (A_C - lambda I) must reach the algebraic multiplicity (class mult for
    // non-real lambda, twice that for real lambda)
    int largest_block = 1;
    for (const auto& c : rep.classes) {
        std::complex<double> lam = std::polar(c.modulus, c.angle);
        Eigen::MatrixXcd shifted = em - lam * Eigen::MatrixXcd::Identity(6, 6);
        int expected_kernel = c.real_angle ? 2 * c.multiplicity : c.multiplicity;
        // The eigensolver locates a defective eigenvalue only to ~sqrt(eps)
        // (cube root for a 3-block), so the rank gate is much looser here
        // than in the invariant pipeline; the class separation enforced by
        // oracle_cluster keeps it unambiguous.
        double s1 = std::max(shifted.jacobiSvd().singularValues()(0), 1e-300);
        double gate = std::sqrt(tol.oracle_cluster) * 0.1;
        int rank1 = eigen_rank_abs(shifted, gate * s1);
        int kernel = 6 - rank1;
        if (kernel < expected_kernel) {
            rep.jordan_defect = true;
            // largest Jordan block from the rank sequence
            Eigen::MatrixXcd p = shifted;
            int prev = rank1, block = 1;
            double scale_k = s1;
            for (int k = 2; k <= 4; ++k) {
                p = p * shifted;
                scale_k *= s1;
                int rk = eigen_rank_abs(p, gate * scale_k);
                if (rk == prev) break;
                prev = rk;
                block = k;
            }
            largest_block = std::max(largest_block, block);
        }
    }

    // apply the fixed-point taxonomy
    DynamicalType t;
    if (rep.off_circle > 0) {
        bool all_real = true;
        for (const auto& c : rep.classes) all_real = all_real && c.real_angle;
        bool pair_real = true;
        for (const auto& c : rep.classes)
            if (!c.unit_modulus) pair_real = pair_real && c.real_angle;
        if (all_real)
            t = DynamicalType::StrictlyHyperbolic;
        else if (pair_real)
            t = DynamicalType::ScrewHyperbolic;
        else
            t = DynamicalType::RegularHyperbolic;
    } else if (!rep.jordan_defect) {
        switch (rep.classes.size()) {
            case 3: t = DynamicalType::RegularElliptic; break;
            case 2: t = DynamicalType::ComplexElliptic; break;
            default: t = DynamicalType::SimpleElliptic; break;
        }
    } else {
        if (rep.classes.size() == 2) {
            t = DynamicalType::ScrewParabolic;
        } else {
            bool unipotent = rep.classes.size() == 1 && rep.classes[0].real_angle &&
                             rep.classes[0].angle < M_PI_2;
            if (unipotent)
                t = largest_block >= 3 ? DynamicalType::NonVerticalHeisenbergTranslation
                                       : DynamicalType::VerticalHeisenbergTranslation;
            else
                t = largest_block >= 3 ? DynamicalType::ElliptoParabolic
                                       : DynamicalType::ElliptoTranslation;
        }
    }
    rep.dtype = collapse_for_field(t, field);
    return rep;
}

DynamicalType eigen_classify(const Mat3q& a, ModelKind m, Field field, const Tolerances& tol) {
    return eigen_report(a, m, field, tol).dtype;
}

} // namespace qhiso
