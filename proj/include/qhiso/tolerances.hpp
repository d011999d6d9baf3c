#pragma once

namespace qhiso {

/// Tolerance set threaded through the floating-point pipeline.  Every sign
/// or threshold decision is scaled by a quantity-appropriate factor before
/// comparison; the raw values here are relative.
struct Tolerances {
    double rel = 1e-9;            // generic relative tolerance (class equality, self-duality gate)
    double membership = 1e-9;     // gate on ||A*JA - J|| relative to (1 + max|A|^2)
    double root_cluster = 1e-7;   // two cubic roots equal if |ti - tj| <= this * (1 + max|t|)
    double rank_rel = 1e-8;       // singular values below rank_rel * sigma_max count as zero
    double angle_real = 1e-7;     // |sin theta| <= this  =>  angle is 0 or pi
    double boundary = 1e-9;       // |<z,z>| <= this * ||z||^2  =>  boundary point
    double oracle_cluster = 1e-4; // eigenvalue clustering radius in the eigenvalue oracle
    double circle = 1e-7;         // | |lambda| - 1 | above this => off the unit circle

    /// Multiplier defining the "borderline" band: a decision made at scale s
    /// is flagged when the decisive quantity lies within borderline_factor
    /// of flipping.
    double borderline_factor = 10.0;

    static Tolerances defaults() { return Tolerances{}; }
};

} // namespace qhiso
