#include "slspec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <lapacke.h>

namespace slspec {

namespace {

struct RawEigen {
    std::vector<std::complex<double>> alpha;
    std::vector<double> beta;       // 1 for the standard solve
    Eigen::MatrixXd vectors;        // LAPACK packed real/imag columns
    int n = 0;
};

RawEigen run_dgeev(Eigen::MatrixXd a, bool want_vectors) {
    const int n = static_cast<int>(a.rows());
    RawEigen out;
    out.n = n;
    std::vector<double> wr(n), wi(n);
    out.vectors.resize(n, want_vectors ? n : 1);
    const lapack_int info = LAPACKE_dgeev(
        LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n, wr.data(), wi.data(),
        nullptr, 1, out.vectors.data(), n);
    if (info != 0)
        throw NumericalFailure("dgeev failed to converge (info = " + std::to_string(info) +
                                   ") on a matrix of size " + std::to_string(n),
                               n);
    out.alpha.resize(n);
    out.beta.assign(n, 1.0);
    for (int j = 0; j < n; ++j) out.alpha[j] = {wr[j], wi[j]};
    return out;
}

RawEigen run_dggev(Eigen::MatrixXd a, Eigen::MatrixXd b, bool want_vectors) {
    const int n = static_cast<int>(a.rows());
    RawEigen out;
    out.n = n;
    std::vector<double> ar(n), ai(n), be(n);
    out.vectors.resize(n, want_vectors ? n : 1);
    const lapack_int info = LAPACKE_dggev(
        LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n, b.data(), n, ar.data(),
        ai.data(), be.data(), nullptr, 1, out.vectors.data(), n);
    if (info != 0)
        throw NumericalFailure("dggev failed to converge (info = " + std::to_string(info) +
                                   ") on a pencil of size " + std::to_string(n),
                               n);
    out.alpha.resize(n);
    out.beta.resize(n);
    for (int j = 0; j < n; ++j) {
        out.alpha[j] = {ar[j], ai[j]};
        out.beta[j] = be[j];
    }
    return out;
}

} // namespace

Spectrum solve_pencil(const Pencil& pencil, const SolveOptions& opts) {
    const int n = pencil.size();
    if (n == 0) throw InvalidArgument("solve_pencil: empty pencil");
    if (pencil.a_matrix.rows() != pencil.a_matrix.cols() ||
        pencil.b_matrix.rows() != pencil.b_matrix.cols() ||
        pencil.a_matrix.rows() != pencil.b_matrix.rows())
        throw InvalidArgument("solve_pencil: A and B must be square and of equal size");

    const bool use_standard = pencil.b_is_identity && !opts.force_qz;
    RawEigen raw = use_standard
                       ? run_dgeev(pencil.a_matrix, opts.want_vectors)
                       : run_dggev(pencil.a_matrix, pencil.b_matrix, opts.want_vectors);

    const double bnorm = pencil.b_matrix.cwiseAbs().rowwise().sum().maxCoeff();

    struct Kept {
        double value;
        double imag;
        int column;  // real part column in the packed vector storage
    };
    std::vector<Kept> kept;
    Spectrum spec;
    spec.method = pencil.method;
    spec.nodes = pencil.full_nodes;

    for (int j = 0; j < n; ++j) {
        if (!use_standard && std::abs(raw.beta[j]) <= opts.inf_tol * bnorm) {
            ++spec.discarded_infinite;
            continue;
        }
        const std::complex<double> lam = raw.alpha[j] / raw.beta[j];
        if (std::abs(lam.imag()) > opts.imag_tol * (1.0 + std::abs(lam.real()))) {
            ++spec.discarded_complex;
            continue;
        }
        // LAPACK stores a conjugate pair's real part in the first of its two
        // columns; the first member carries the positive imaginary part
        const int col = (raw.alpha[j].imag() < 0.0 && j > 0) ? j - 1 : j;
        kept.push_back({lam.real(), std::abs(lam.imag()), col});
    }

    std::stable_sort(kept.begin(), kept.end(),
                     [](const Kept& a, const Kept& b) { return a.value < b.value; });
    const int count = std::min<int>(opts.count, static_cast<int>(kept.size()));

    spec.eigenvalues.resize(count);
    spec.residual_imag.resize(count);
    spec.residual_norms.resize(count);
    const int full = static_cast<int>(pencil.full_nodes.size());
    if (opts.want_vectors) spec.vectors.resize(full, count);

    for (int k = 0; k < count; ++k) {
        spec.eigenvalues[k] = kept[k].value;
        spec.residual_imag[k] = kept[k].imag;
        if (!opts.want_vectors) {
            spec.residual_norms[k] = 0.0;
            continue;
        }
        Eigen::VectorXd v = raw.vectors.col(kept[k].column);
        const Eigen::VectorXd resid =
            pencil.a_matrix * v - kept[k].value * (pencil.b_matrix * v);
        const double vnorm = v.cwiseAbs().maxCoeff();
        spec.residual_norms[k] = resid.cwiseAbs().maxCoeff() / std::max(vnorm, 1e-300);

        Eigen::VectorXd fullv = reinstate_boundary(v, pencil);
        const double mx = fullv.cwiseAbs().maxCoeff();
        if (mx > 0.0) fullv /= mx;
        for (int i = 0; i < fullv.size(); ++i) {
            if (std::abs(fullv[i]) > 1e-10) {
                if (fullv[i] < 0.0) fullv = -fullv;
                break;
            }
        }
        spec.vectors.col(k) = fullv;
    }

    if (opts.want_vectors && count > 0) {
        spec.coeff_decay.resize(full, count);
        for (int k = 0; k < count; ++k) {
            if (pencil.method == Method::Chebyshev)
                spec.coeff_decay.col(k) = cheb_coeffs(spec.vectors.col(k)).cwiseAbs();
            else
                spec.coeff_decay.col(k) = spec.vectors.col(k).cwiseAbs();
        }
    }
    return spec;
}

DriftReport relative_drift(const Spectrum& s1, const Spectrum& s2,
                           const std::string& alpha_name, double alpha1, double alpha2,
                           double threshold) {
    if (s1.eigenvalues.size() == 0 || s2.eigenvalues.size() == 0)
        throw InvalidArgument("relative_drift: spectra must be nonempty");
    DriftReport report;
    report.alpha_name = alpha_name;
    report.alpha1 = alpha1;
    report.alpha2 = alpha2;
    report.threshold = threshold;
    const int count = static_cast<int>(std::min(s1.eigenvalues.size(), s2.eigenvalues.size()));
    for (int j = 0; j < count; ++j) {
        const double l1 = s1.eigenvalues[j];
        const double diff = std::abs(l1 - s2.eigenvalues[j]);
        if (l1 == 0.0) {
            report.drifts.push_back(diff);  // division guard: absolute difference
            report.absolute_flag.push_back(true);
        } else {
            report.drifts.push_back(diff / std::abs(l1));
            report.absolute_flag.push_back(false);
        }
        if (report.drifts.back() <= threshold) report.good_indices.push_back(j);
    }
    return report;
}

double PchipInterpolant::operator()(double t) const {
    const int n = static_cast<int>(x.size());
    int i = static_cast<int>(std::upper_bound(x.data(), x.data() + n, t) - x.data()) - 1;
    i = std::clamp(i, 0, n - 2);
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y[i] + h * h10 * slope[i] + h01 * y[i + 1] + h * h11 * slope[i + 1];
}

PchipInterpolant pchip_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(x.size());
    if (n < 2 || y.size() != n) throw InvalidArgument("pchip_fit: need matching arrays, n >= 2");
    PchipInterpolant interp;
    interp.x = x;
    interp.y = y;
    interp.slope.resize(n);
    Eigen::VectorXd h(n - 1), delta(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        if (!(h[i] > 0.0)) throw InvalidArgument("pchip_fit: abscissae must increase");
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        interp.slope[0] = interp.slope[1] = delta[0];
        return interp;
    }
    for (int i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            interp.slope[i] = 0.0;
        } else {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            interp.slope[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto one_sided = [](double h0, double h1, double d0, double d1) {
        double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0)
            d = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0))
            d = 3.0 * d0;
        return d;
    };
    interp.slope[0] = one_sided(h[0], h[1], delta[0], delta[1]);
    interp.slope[n - 1] = one_sided(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return interp;
}

SweepResult sweep(const std::function<SLProblem(double)>& family,
                  const Eigen::VectorXd& parameter_grid, const DiscretizationPlan& plan,
                  int track_count, const SolveOptions& opts) {
    const int npts = static_cast<int>(parameter_grid.size());
    if (npts < 2) throw InvalidArgument("sweep: need at least two parameter values");
    if (track_count < 2) throw InvalidArgument("sweep: need at least two tracks");

    SweepResult result;
    result.parameter_grid = parameter_grid;
    result.tracks =
        Eigen::MatrixXd::Constant(track_count, npts, std::numeric_limits<double>::quiet_NaN());

    SolveOptions local = opts;
    local.count = track_count;
    local.want_vectors = true;

    result.min_gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < npts; ++j) {
        try {
            const SLProblem problem = family(parameter_grid[j]);
            const Pencil pencil = assemble(problem, plan);
            const Spectrum spec = solve_pencil(pencil, local);
            const int got = static_cast<int>(spec.eigenvalues.size());
            for (int i = 0; i < std::min(track_count, got); ++i)
                result.tracks(i, j) = spec.eigenvalues[i];
            if (got >= 2 && spec.eigenvalues[0] != 0.0) {
                const double gap =
                    (spec.eigenvalues[1] - spec.eigenvalues[0]) / std::abs(spec.eigenvalues[0]);
                if (gap < result.min_gap) {
                    result.min_gap = gap;
                    result.min_gap_index = j;
                    result.min_gap_parameter = parameter_grid[j];
                }
            }
        } catch (const Error&) {
            result.failed_indices.push_back(j);  // partial result with failure markers
        }
    }

    for (int i = 0; i < track_count; ++i) {
        const Eigen::VectorXd row = result.tracks.row(i).transpose();
        if (row.hasNaN()) continue;
        result.interpolants.push_back(pchip_fit(parameter_grid, row));
    }
    return result;
}

std::vector<DecaySummary> coeff_decay_report(const Spectrum& spectrum) {
    std::vector<DecaySummary> out;
    const int count = static_cast<int>(spectrum.coeff_decay.cols());
    for (int k = 0; k < count; ++k) {
        const Eigen::VectorXd c = spectrum.coeff_decay.col(k);
        DecaySummary s;
        s.max_coeff = c.maxCoeff();
        const int n = static_cast<int>(c.size());
        const int tail = std::max(1, n / 20);  // trailing 5%
        std::vector<double> t(c.data() + n - tail, c.data() + n);
        std::sort(t.begin(), t.end());
        s.plateau = t[t.size() / 2];
        s.resolved = s.plateau <= 1e-10 * s.max_coeff;
        out.push_back(s);
    }
    return out;
}

SpectrumPartition spectrum_partition(const Spectrum& spectrum, const ReferenceSpectrum& ref) {
    SpectrumPartition part;
    // candidate reference list: listed values plus the closed form where defined
    std::vector<std::pair<int, double>> candidates;
    for (const auto& rv : ref.values) candidates.emplace_back(rv.index, rv.value);
    if (ref.closed_form) {
        const int horizon = static_cast<int>(spectrum.eigenvalues.size()) + 5;
        for (int k = 0; k <= horizon; ++k) {
            const double v = ref.closed_form(k);
            if (std::isfinite(v)) candidates.emplace_back(k, v);
        }
    }
    for (int j = 0; j < spectrum.eigenvalues.size(); ++j) {
        const double lam = spectrum.eigenvalues[j];
        const std::pair<int, double>* best = nullptr;
        double best_gap = std::numeric_limits<double>::infinity();
        for (const auto& cand : candidates) {
            const double gap = std::abs(lam - cand.second);
            if (gap < best_gap) {
                best_gap = gap;
                best = &cand;
            }
        }
        if (best && best_gap <= 0.05 * std::abs(best->second)) {
            part.matched.push_back({j, lam, best->second, best->first});
        } else {
            part.tail.push_back(lam);
        }
    }
    for (size_t i = 1; i < part.tail.size(); ++i)
        part.tail_spacing.push_back(part.tail[i] - part.tail[i - 1]);
    return part;
}

} // namespace slspec
