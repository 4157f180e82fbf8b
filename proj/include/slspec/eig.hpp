#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slspec/discretize.hpp"

namespace slspec {

struct SolveOptions {
    double imag_tol = 1e-8;   // |Im l| <= imag_tol * (1 + |Re l|) to retain
    double inf_tol = 1e-10;   // |beta| <= inf_tol * ||B||inf discards as infinite
    int count = 40;           // eigenpairs returned (clamped to pencil size)
    bool force_qz = false;    // QZ even for B = I (for cross-route checks)
    bool want_vectors = true;
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;    // strictly ascending (ties within round-off)
    Eigen::VectorXd residual_imag;  // |Im lambda| before it was dropped
    Eigen::MatrixXd vectors;        // full-grid columns, unit max-norm, first
                                    // significant component positive
    Eigen::MatrixXd coeff_decay;    // column j: coefficient magnitudes of vector j
    Eigen::VectorXd residual_norms; // ||A v - lambda B v||inf per retained pair
    Eigen::VectorXd nodes;          // full node set of the originating grid
    Method method = Method::Chebyshev;
    int discarded_infinite = 0;
    int discarded_complex = 0;
};

struct DriftReport {
    std::string alpha_name;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::vector<double> drifts;
    std::vector<bool> absolute_flag;  // true where the division guard fired
    double threshold = 0.0;
    std::vector<int> good_indices;
};

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson).
struct PchipInterpolant {
    Eigen::VectorXd x, y, slope;
    double operator()(double t) const;
};

PchipInterpolant pchip_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct SweepResult {
    Eigen::VectorXd parameter_grid;
    Eigen::MatrixXd tracks;  // tracks(i, j) = lambda_i at parameter_grid[j]; NaN on failure
    std::vector<PchipInterpolant> interpolants;
    double min_gap = 0.0;    // min over the grid of (lambda_1 - lambda_0)/|lambda_0|
    int min_gap_index = -1;
    double min_gap_parameter = 0.0;
    std::vector<int> failed_indices;
};

struct DecaySummary {
    double max_coeff = 0.0;
    double plateau = 0.0;   // median of the trailing 5% of coefficients
    bool resolved = false;  // plateau <= 1e-10 * max
};

struct SpectrumPartition {
    struct Match {
        int spectrum_index;
        double computed;
        double reference;
        int reference_index;
    };
    std::vector<Match> matched;
    std::vector<double> tail;          // unmatched eigenvalues, ascending
    std::vector<double> tail_spacing;  // consecutive differences of the tail
};

/// Generalized dense solve of (A, B) with infinite/spurious filtering.
Spectrum solve_pencil(const Pencil& pencil, const SolveOptions& opts = {});

DriftReport relative_drift(const Spectrum& s1, const Spectrum& s2,
                           const std::string& alpha_name, double alpha1, double alpha2,
                           double threshold);

SweepResult sweep(const std::function<SLProblem(double)>& family,
                  const Eigen::VectorXd& parameter_grid, const DiscretizationPlan& plan,
                  int track_count, const SolveOptions& opts = {});

std::vector<DecaySummary> coeff_decay_report(const Spectrum& spectrum);

/// Splits a spectrum into the part matched by a reference (within 5%
/// relative) and the unmatched tail.
SpectrumPartition spectrum_partition(const Spectrum& spectrum, const ReferenceSpectrum& ref);

} // namespace slspec
