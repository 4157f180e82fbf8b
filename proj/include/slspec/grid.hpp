#pragma once

#include <Eigen/Dense>

#include "slspec/errors.hpp"

namespace slspec {

/// Affine bijection between [a,b] and the reference interval [-1,1].
struct AffineMap {
    double a;
    double b;

    AffineMap(double a_, double b_) : a(a_), b(b_) {
        if (!(b > a)) throw InvalidArgument("AffineMap: requires b > a");
    }

    /// dt/dx where t is the reference coordinate.
    double scale() const { return 2.0 / (b - a); }

    double to_reference(double x) const { return (2.0 * x - (a + b)) / (b - a); }
    double from_reference(double t) const { return 0.5 * (a + b) + 0.5 * (b - a) * t; }
};

/// Chebyshev-Gauss-Lobatto grid with differentiation matrices.
/// Nodes are descending: nodes[0] is the right end of the interval.
struct ChebGrid {
    int n_points = 0;
    Eigen::VectorXd nodes;
    Eigen::MatrixXd d1;
    Eigen::MatrixXd d2;  // empty when built with max_order = 1
};

/// Uniform sinc grid with the second-derivative collocation matrix.
/// Centered grids hold 2M+1 nodes center + k*h, k = -M..M.  Offset grids
/// (Weideman-Reddy sincdif convention) hold 2M nodes at half-integer
/// multiples of h, avoiding a node at the center.
struct SincGrid {
    int half_width = 0;  // M
    double step_h = 0.0;
    double center = 0.0;
    bool offset_grid = false;
    Eigen::VectorXd nodes;
    Eigen::MatrixXd d2;

    int n_points() const { return static_cast<int>(nodes.size()); }
};

/// Descending CGL nodes cos(j*pi/(n-1)), j = 0..n-1, endpoints exactly +-1.
Eigen::VectorXd cgl_nodes(int n);

/// Weideman-Reddy differentiation matrices on the CGL grid.
/// d2 is built by the order recursion, not by squaring d1.
ChebGrid cheb_diff(int n, int max_order = 2);

/// Grid mapped to [a,b]: nodes affinely mapped, d1 scaled by 2/(b-a),
/// d2 by (2/(b-a))^2.
ChebGrid map_matrices(const ChebGrid& grid, const AffineMap& map);

SincGrid sinc_d2(int half_width, double h, double center = 0.0);

/// Even sinc grid of 2*half_width nodes at center + (k - (N+1)/2)*h,
/// k = 1..N (no node at the center).
SincGrid sinc_d2_offset(int half_width, double h, double center = 0.0);

/// Chebyshev coefficients of the polynomial interpolating `values` at the
/// CGL nodes (descending order).  Inverse of cheb_values.
Eigen::VectorXd cheb_coeffs(const Eigen::VectorXd& values);

/// Nodal values of a Chebyshev series at the CGL nodes (descending order).
Eigen::VectorXd cheb_values(const Eigen::VectorXd& coeffs);

} // namespace slspec
