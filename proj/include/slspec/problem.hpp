#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slspec/errors.hpp"
#include "slspec/grid.hpp"

namespace slspec {

using CoefficientFn = std::function<double(double)>;

struct Interval {
    double a;
    double b;
    double length() const { return b - a; }
};

enum class Side { Left, Right };

// ---- boundary conditions --------------------------------------------------

struct DirichletBc {};

/// alpha*u + beta*u' = 0 at the endpoint; requires |alpha| + |beta| > 0.
struct RobinBc {
    double alpha;
    double beta;
};

/// lim [ f(x) u + g(x) u' ] = 0 approaching the endpoint.
struct LimitFormBc {
    CoefficientFn f;
    CoefficientFn g;
    std::string description;
};

/// Dirichlet at a truncated endpoint strictly inside the original interval.
struct TruncatedDirichletBc {
    double epsilon;
};

/// The endpoint row collocates the degenerate equation (p(e) = 0).
struct EndpointCollocationBc {};

using BoundaryCondition = std::variant<DirichletBc, RobinBc, LimitFormBc,
                                       TruncatedDirichletBc, EndpointCollocationBc>;

// ---- reference spectra ----------------------------------------------------

struct ReferenceValue {
    int index;
    double value;
    std::string provenance;
};

struct ReferenceSpectrum {
    std::vector<ReferenceValue> values;  // indices strictly increasing
    std::function<double(int)> closed_form;  // may be empty; NaN = undefined index
};

// ---- problems ---------------------------------------------------------------

/// Pointwise weight multiplying both sides of the equation, used to clear an
/// interior singularity (the generalized-pencil route).  The products m*q and
/// m*r are carried as fused evaluators so that 0 * inf never occurs.
struct InteriorWeight {
    CoefficientFn m;
    CoefficientFn mq;
    CoefficientFn mr;
};

struct SLProblem;

/// An equivalent reformulation that the solver should use in place of the
/// original (same eigenvalues; eigenvectors recovered by pointwise weight).
struct SolverForm {
    std::shared_ptr<const SLProblem> problem;
    CoefficientFn back_weight;  // u(x) = back_weight(x) * w(x)
    std::string note;
};

struct SLProblem {
    std::string name;
    CoefficientFn p, q, r;
    double a = -1.0;  // extended reals; +-inf allowed
    double b = 1.0;
    BoundaryCondition bc_left = DirichletBc{};
    BoundaryCondition bc_right = DirichletBc{};
    Interval default_domain{-1.0, 1.0};
    std::optional<ReferenceSpectrum> reference;
    std::optional<InteriorWeight> weight;
    std::shared_ptr<const SolverForm> solver_form;
    std::string description;

    /// Working length used for endpoint probes: the interval itself when
    /// finite, the default (truncated) domain otherwise.
    double probe_length() const {
        if (std::isfinite(a) && std::isfinite(b)) return b - a;
        return default_domain.length();
    }

    /// Checks p > 0 on a 1000-point interior probe of the default domain.
    void check_p_positive() const;
};

struct HardnessVerdict {
    Side endpoint;
    double lambda;
    std::vector<double> tau_samples;
    bool hard;
};

// ---- operations -------------------------------------------------------------

/// tau(x) = (lambda r(x) - q(x)) / p(x), the hardness quotient.
double tau(const SLProblem& problem, double lambda, double x);

/// Evaluates tau on a geometric probe sequence approaching the endpoint
/// (distances 1e-1..1e-8 of the working length); hard iff the final sample
/// exceeds 1e6 and the last four samples increase monotonically.
HardnessVerdict classify_hard(const SLProblem& problem, double lambda, Side endpoint);

/// x -> x / (x^2 + eps^2), the distributional regularization of 1/x.
CoefficientFn boyd_regularized_q(double epsilon);

/// Interpolatory (Clenshaw-Curtis type) quadrature of (1 - x^2) |u'(x)|^2
/// over [-1 + delta, 1 - delta], from samples on a CGL grid.
double symmetric_restriction(const Eigen::VectorXd& u_values,
                             const Eigen::VectorXd& u_deriv_values,
                             const ChebGrid& grid, double delta);

/// The nine benchmark problems, fully configured.
const std::vector<SLProblem>& builtin_problems();

/// Registry lookup by name; throws NotFoundError.
const SLProblem& find_problem(const std::string& name);

// Problem factories with adjustable parameters (the registry holds the
// defaults these produce).
SLProblem make_boyd(double epsilon);
SLProblem make_bessel(double nu);
SLProblem make_generalized_bessel(double nu, double tau);
SLProblem make_fokker_planck(double half_length);
SLProblem make_dunford_schwartz(double eps, double X);
SLProblem make_nasty(Interval domain);

} // namespace slspec
