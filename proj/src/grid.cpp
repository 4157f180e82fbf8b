#include "slspec/grid.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace slspec {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Eigen::VectorXd cgl_nodes(int n) {
    if (n < 2) throw InvalidArgument("cgl_nodes: n must be >= 2");
    Eigen::VectorXd x(n);
    // sin form keeps the set exactly symmetric about 0
    for (int j = 0; j < n; ++j)
        x[j] = std::sin(kPi * (n - 1 - 2 * j) / (2.0 * (n - 1)));
    x[0] = 1.0;
    x[n - 1] = -1.0;
    return x;
}

ChebGrid cheb_diff(int n, int max_order) {
    if (n < 2) throw InvalidArgument("cheb_diff: n must be >= 2");
    if (max_order < 1 || max_order > 2)
        throw InvalidArgument("cheb_diff: max_order must be 1 or 2");

    ChebGrid grid;
    grid.n_points = n;
    grid.nodes = cgl_nodes(n);

    Eigen::VectorXd th(n);
    for (int k = 0; k < n; ++k) th[k] = k * kPi / (n - 1);

    // DX(k,j) = x_k - x_j via the trig identity, with the flipping trick
    // so the matrix is exactly antisymmetric.
    Eigen::MatrixXd DX(n, n);
    const int n2 = (n + 1) / 2;
    for (int k = 0; k < n2; ++k)
        for (int j = 0; j < n; ++j)
            DX(k, j) = 2.0 * std::sin((th[j] + th[k]) / 2.0) * std::sin((th[j] - th[k]) / 2.0);
    for (int k = n2; k < n; ++k)
        for (int j = 0; j < n; ++j)
            DX(k, j) = -DX(n - 1 - k, n - 1 - j);
    DX.diagonal().setOnes();

    // C(k,j) = c_k / c_j with c = (-1)^k, doubled at the endpoints
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) c[k] = (k % 2 == 0) ? 1.0 : -1.0;
    c[0] *= 2.0;
    c[n - 1] *= 2.0;
    Eigen::MatrixXd C(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) C(k, j) = c[k] / c[j];

    Eigen::MatrixXd Z = DX.cwiseInverse();
    Z.diagonal().setZero();

    Eigen::MatrixXd D = Eigen::MatrixXd::Identity(n, n);
    for (int order = 1; order <= max_order; ++order) {
        Eigen::VectorXd diagD = D.diagonal();
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                D(k, j) = order * Z(k, j) * (C(k, j) * diagD[k] - D(k, j));
        // negative-sum trick: diagonal entries suppress row-sum cancellation
        D.diagonal().setZero();
        const Eigen::VectorXd rowsums = D.rowwise().sum();
        D.diagonal() = -rowsums;
        if (order == 1) grid.d1 = D;
        if (order == 2) grid.d2 = D;
    }
    return grid;
}

ChebGrid map_matrices(const ChebGrid& grid, const AffineMap& map) {
    const double s = map.scale();
    ChebGrid out;
    out.n_points = grid.n_points;
    out.nodes = grid.nodes.unaryExpr(
        [&](double t) { return map.from_reference(t); });
    out.d1 = grid.d1 * s;
    if (grid.d2.size() > 0) out.d2 = grid.d2 * (s * s);
    return out;
}

namespace {

SincGrid sinc_build(int half_width, double h, double center, bool offset) {
    if (half_width < 1) throw InvalidArgument("sinc grid: half_width must be >= 1");
    if (!(h > 0.0)) throw InvalidArgument("sinc grid: step h must be positive");

    SincGrid g;
    g.half_width = half_width;
    g.step_h = h;
    g.center = center;
    g.offset_grid = offset;

    const int n = offset ? 2 * half_width : 2 * half_width + 1;
    g.nodes.resize(n);
    for (int k = 0; k < n; ++k)
        g.nodes[k] = center + (k - 0.5 * (n - 1)) * h;

    g.d2.resize(n, n);
    const double diag = -kPi * kPi / (3.0 * h * h);
    for (int j = 0; j < n; ++j) {
        g.d2(j, j) = diag;
        for (int k = j + 1; k < n; ++k) {
            const int m = k - j;
            const double v = -2.0 * ((m % 2 == 0) ? 1.0 : -1.0) / (h * h * m * m);
            g.d2(j, k) = v;
            g.d2(k, j) = v;
        }
    }
    return g;
}

} // namespace

SincGrid sinc_d2(int half_width, double h, double center) {
    return sinc_build(half_width, h, center, false);
}

SincGrid sinc_d2_offset(int half_width, double h, double center) {
    return sinc_build(half_width, h, center, true);
}

// Values at CGL nodes and Chebyshev coefficients are related by a DCT-I
// (the even extension of the sample vector); REDFT00 computes
//   Y_k = v_0 + (-1)^k v_{n-1} + 2 sum_{j=1}^{n-2} v_j cos(pi j k/(n-1)).
Eigen::VectorXd cheb_coeffs(const Eigen::VectorXd& values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw InvalidArgument("cheb_coeffs: need at least 2 values");
    Eigen::VectorXd in = values;
    Eigen::VectorXd out(n);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(n, in.data(), out.data(),
                                          FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    out /= static_cast<double>(n - 1);
    out[0] *= 0.5;
    out[n - 1] *= 0.5;
    return out;
}

Eigen::VectorXd cheb_values(const Eigen::VectorXd& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n < 2) throw InvalidArgument("cheb_values: need at least 2 coefficients");
    Eigen::VectorXd in = coeffs;
    in.segment(1, n - 2) *= 0.5;
    Eigen::VectorXd out(n);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(n, in.data(), out.data(),
                                          FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace slspec
