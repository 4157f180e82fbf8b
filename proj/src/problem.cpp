#include "slspec/problem.hpp"

#include <algorithm>
#include <cmath>

namespace slspec {

namespace {

double eval_coeff(const CoefficientFn& f, double x, const char* what) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw SingularNodeError(std::string(what) + ": coefficient evaluation failed at x = " +
                                    std::to_string(x),
                                x);
    return v;
}

} // namespace

void SLProblem::check_p_positive() const {
    const int probes = 1000;
    const double lo = default_domain.a, hi = default_domain.b;
    for (int i = 0; i < probes; ++i) {
        const double x = lo + (i + 0.5) * (hi - lo) / probes;
        if (!(p(x) > 0.0))
            throw InvalidArgument(name + ": p must be positive on the interior (p(" +
                                  std::to_string(x) + ") <= 0)");
    }
}

double tau(const SLProblem& problem, double lambda, double x) {
    const double px = problem.p(x);
    if (px == 0.0 || !std::isfinite(px))
        throw SingularNodeError(problem.name + ": tau evaluated at a singular point", x);
    return (lambda * eval_coeff(problem.r, x, "tau") - eval_coeff(problem.q, x, "tau")) / px;
}

HardnessVerdict classify_hard(const SLProblem& problem, double lambda, Side endpoint) {
    const double e = (endpoint == Side::Left) ? problem.a : problem.b;
    if (!std::isfinite(e))
        throw NotApplicableError(problem.name +
                                 ": hardness is defined only at finite endpoints");
    const double length = problem.probe_length();
    HardnessVerdict verdict;
    verdict.endpoint = endpoint;
    verdict.lambda = lambda;
    double dist = 0.1 * length;
    for (int k = 0; k < 8; ++k, dist *= 0.1) {
        const double x = (endpoint == Side::Left) ? e + dist : e - dist;
        verdict.tau_samples.push_back(tau(problem, lambda, x));
    }
    const auto& s = verdict.tau_samples;
    bool increasing = true;
    for (size_t k = 5; k < s.size(); ++k)
        if (!(s[k] > s[k - 1])) increasing = false;
    verdict.hard = increasing && s.back() > 1e6;
    return verdict;
}

CoefficientFn boyd_regularized_q(double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("boyd_regularized_q: epsilon must be positive");
    return [epsilon](double x) { return x / (x * x + epsilon * epsilon); };
}

namespace {

// Antiderivative of T_k evaluated at x in [-1,1].
double cheb_antiderivative(int k, double x) {
    if (k == 0) return x;
    if (k == 1) return 0.5 * x * x;
    const double th = std::acos(std::clamp(x, -1.0, 1.0));
    const double tkp = std::cos((k + 1) * th);
    const double tkm = std::cos((k - 1) * th);
    return tkp / (2.0 * (k + 1)) - tkm / (2.0 * (k - 1));
}

} // namespace

double symmetric_restriction(const Eigen::VectorXd& u_values,
                             const Eigen::VectorXd& u_deriv_values,
                             const ChebGrid& grid, double delta) {
    if (u_values.size() != grid.n_points || u_deriv_values.size() != grid.n_points)
        throw InvalidArgument("symmetric_restriction: value vectors must match the grid");
    if (!(delta > 0.0) || delta >= 1.0)
        throw InvalidArgument("symmetric_restriction: delta must lie in (0,1)");
    Eigen::VectorXd integrand(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.nodes[j];
        const double du = u_deriv_values[j];
        integrand[j] = (1.0 - x * x) * du * du;
    }
    const Eigen::VectorXd c = cheb_coeffs(integrand);
    const double lo = -1.0 + delta, hi = 1.0 - delta;
    double integral = 0.0;
    for (int k = 0; k < c.size(); ++k)
        integral += c[k] * (cheb_antiderivative(k, hi) - cheb_antiderivative(k, lo));
    return integral;
}

// ---- builtin problems -------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First, second and ninth positive zeros of J0 (frozen; the acceptance
// suite recomputes them from an independent series/bisection oracle).
constexpr double kJ0Zero1 = 2.404825557695773;
constexpr double kJ0Zero2 = 5.520078110286311;
constexpr double kJ0Zero9 = 27.49347913204025;

// Fused 1/(4x) + x q(x) for the Dunford-Schwartz potential; analytic at 0.
// Direct evaluation cancels catastrophically below ~1e-3, where a series in
// x^2 takes over.
double ds_sqrt_potential(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        const double num = (1.0 / 3.0 - 121.0) + (2.0 / 45.0 - 121.0 / 12.0) * x2;
        return x * num / (4.0 * (1.0 + x2 / 3.0));
    }
    const double sh = std::sinh(x);
    return 1.0 / (4.0 * x) + x * (-242.0 * std::cosh(x) + 241.0) / (4.0 * sh * sh);
}

double ds_potential(double x) {
    const double sh = std::sinh(x);
    return (-242.0 * std::cosh(x) + 241.0) / (4.0 * sh * sh);
}

ReferenceSpectrum table_reference(std::initializer_list<std::pair<int, double>> rows,
                                  const std::string& provenance) {
    ReferenceSpectrum ref;
    for (const auto& [idx, val] : rows) ref.values.push_back({idx, val, provenance});
    return ref;
}

SLProblem make_legendre() {
    SLProblem pr;
    pr.name = "legendre";
    pr.description = "-((1-x^2)u')' + u/4 = lambda u on (-1,1), Friedrichs conditions";
    pr.p = [](double x) { return 1.0 - x * x; };
    pr.q = [](double) { return 0.25; };
    pr.r = [](double) { return 1.0; };
    pr.a = -1.0;
    pr.b = 1.0;
    auto friedrichs = LimitFormBc{[](double) { return 0.0; },
                                  [](double x) { return 1.0 - x * x; },
                                  "lim (1-x^2) u' = 0"};
    pr.bc_left = friedrichs;
    pr.bc_right = friedrichs;
    pr.default_domain = {-1.0, 1.0};
    ReferenceSpectrum ref;
    ref.closed_form = [](int n) { return n * (n + 1) + 0.25; };
    pr.reference = ref;
    return pr;
}

SLProblem make_latzko_fichera() {
    SLProblem pr;
    pr.name = "latzko_fichera";
    pr.description = "-((1-x^7)u')' = lambda x^7 u on (0,1)";
    pr.p = [](double x) { return 1.0 - std::pow(x, 7); };
    pr.q = [](double) { return 0.0; };
    pr.r = [](double x) { return std::pow(x, 7); };
    pr.a = 0.0;
    pr.b = 1.0;
    pr.bc_left = DirichletBc{};
    pr.bc_right = LimitFormBc{[](double) { return 0.0; },
                              [](double x) { return 1.0 - std::pow(x, 7); },
                              "lim (1-x^7) u' = 0"};
    pr.default_domain = {0.0, 1.0};
    pr.reference = table_reference({{0, 8.727470352650549e+00},
                                    {1, 1.524230708786303e+02},
                                    {2, 4.350633321758573e+02},
                                    {3, 8.556857252681226e+02},
                                    {4, 1.414142820954995e+03},
                                    {5, 2.110387972308661e+03}},
                                   "Latzko-Fichera reference table");
    return pr;
}

SLProblem make_rod() {
    SLProblem pr;
    pr.name = "rod";
    pr.description = "buckling of a tapered rod: -(A(x)u')' = lambda u, A = log(1+sin 3x)";
    pr.p = [](double x) { return std::log(1.0 + std::sin(3.0 * x)); };
    pr.q = [](double) { return 0.0; };
    pr.r = [](double) { return 1.0; };
    pr.a = 0.0;
    pr.b = 1.0;
    pr.bc_left = LimitFormBc{[](double) { return 0.0; },
                             [](double x) { return std::log(1.0 + std::sin(3.0 * x)); },
                             "lim A(x) u' = 0"};
    pr.bc_right = DirichletBc{};
    pr.default_domain = {0.0, 1.0};
    pr.reference = table_reference({{0, 1.063402823775151e+00},
                                    {1, 9.757849576315739e+00},
                                    {2, 2.575153869531348e+01},
                                    {3, 4.890432732322349e+01},
                                    {4, 7.920090041934151e+01},
                                    {5, 1.166360305002941e+02}},
                                   "tapered-rod reference table");
    return pr;
}

SLProblem make_fokker_planck_impl(double l) {
    SLProblem pr;
    pr.name = "fokker_planck";
    pr.description = "-u'' + (x^6/4 - 3x^2/2) u = lambda u on R, truncated to [-l,l]";
    pr.p = [](double) { return 1.0; };
    pr.q = [](double x) { return std::pow(x, 6) / 4.0 - 1.5 * x * x; };
    pr.r = [](double) { return 1.0; };
    pr.a = -kInf;
    pr.b = kInf;
    pr.bc_left = TruncatedDirichletBc{-l};
    pr.bc_right = TruncatedDirichletBc{l};
    pr.default_domain = {-l, l};
    pr.reference = table_reference({{0, 0.0},
                                    {1, 1.368592520979542e+00},
                                    {2, 4.453709163213802e+00},
                                    {4, 1.275806953296428e+01},
                                    {6, 2.349440842267923e+01},
                                    {10, 5.061402223182223e+01},
                                    {20, 1.432321465884990e+02},
                                    {30, 2.631594491758098e+02}},
                                   "Fokker-Planck reference table");
    return pr;
}

SLProblem make_dunford_schwartz_impl(double eps, double X) {
    SLProblem pr;
    pr.name = "dunford_schwartz";
    pr.description =
        "-u'' + (-242 cosh x + 241)/(4 sinh^2 x) u = lambda u on (0,inf); "
        "discrete spectrum -(5-n)^2 plus continuous spectrum on (0,inf)";
    pr.p = [](double) { return 1.0; };
    pr.q = ds_potential;
    pr.r = [](double) { return 1.0; };
    pr.a = 0.0;
    pr.b = kInf;
    pr.bc_left = LimitFormBc{[](double) { return 1.0; }, [](double x) { return x; },
                             "lim (u + x u') = 0"};
    pr.bc_right = TruncatedDirichletBc{X};
    pr.default_domain = {eps, X};
    ReferenceSpectrum ref;
    ref.closed_form = [](int n) {
        return n <= 4 ? -double((5 - n) * (5 - n)) : std::numeric_limits<double>::quiet_NaN();
    };
    ref.values = table_reference({{0, -25.0}, {1, -16.0}, {2, -9.0}, {3, -4.0}, {4, -1.0}},
                                 "exact discrete eigenvalues -(5-n)^2")
                     .values;
    pr.reference = ref;

    // Solve as the sqrt-transformed twin: u = sqrt(x) w turns the critical
    // -1/(4x^2) singularity into -(x w')' + qt(x) w = lambda x w with qt
    // analytic at 0; the Friedrichs condition becomes lim x w' = 0.
    auto twin = std::make_shared<SLProblem>();
    twin->name = "dunford_schwartz[sqrt]";
    twin->description = "sqrt-transformed Dunford-Schwartz: -(x w')' + qt w = lambda x w";
    twin->p = [](double x) { return x; };
    twin->q = ds_sqrt_potential;
    twin->r = [](double x) { return x; };
    twin->a = 0.0;
    twin->b = kInf;
    twin->bc_left = LimitFormBc{[](double) { return 0.0; }, [](double x) { return x; },
                                "lim x w' = 0"};
    twin->bc_right = TruncatedDirichletBc{X};
    twin->default_domain = {eps, X};
    twin->reference = pr.reference;

    auto form = std::make_shared<SolverForm>();
    form->problem = twin;
    form->back_weight = [](double x) { return std::sqrt(std::max(x, 0.0)); };
    form->note = "sqrt_weight_transform";
    pr.solver_form = form;
    return pr;
}

SLProblem make_nasty_impl(Interval domain) {
    SLProblem pr;
    pr.name = "nasty";
    pr.description = "-u'' + ln(x) u = lambda u on [0,4], Dirichlet";
    pr.p = [](double) { return 1.0; };
    pr.q = [](double x) { return std::log(x); };
    pr.r = [](double) { return 1.0; };
    pr.a = 0.0;
    pr.b = 4.0;
    pr.bc_left = DirichletBc{};
    pr.bc_right = DirichletBc{};
    pr.default_domain = domain;
    pr.reference = table_reference({{0, 1.124816809695236e+00}, {23, 3.557030079371902e+02}},
                                   "nasty reference table, ChC column");
    return pr;
}

SLProblem make_bessel_impl(double nu) {
    const double c = nu * nu - 0.25;
    SLProblem pr;
    pr.name = "bessel";
    pr.description = "-u'' + (nu^2 - 1/4)/x^2 u = lambda u on (0,1], nonoscillatory BC";
    pr.p = [](double) { return 1.0; };
    pr.q = [c](double x) { return c / (x * x); };
    pr.r = [](double) { return 1.0; };
    pr.a = 0.0;
    pr.b = 1.0;
    pr.bc_left = LimitFormBc{[nu](double) { return nu + 0.5; }, [](double x) { return x; },
                             "lim ((nu+1/2) u + x u') = 0"};
    pr.bc_right = DirichletBc{};
    pr.default_domain = {0.0, 1.0};
    if (nu == 0.0) {
        pr.reference = table_reference({{0, kJ0Zero1 * kJ0Zero1},
                                        {1, kJ0Zero2 * kJ0Zero2},
                                        {8, kJ0Zero9 * kJ0Zero9}},
                                       "squares of the 1st, 2nd, 9th positive J0 zeros");

        // Same transform as Dunford-Schwartz; for nu = 0 the fused
        // potential vanishes identically and w = J0(sqrt(lambda) x).
        auto twin = std::make_shared<SLProblem>();
        twin->name = "bessel[sqrt]";
        twin->description = "sqrt-transformed Bessel (nu = 0): -(x w')' = lambda x w";
        twin->p = [](double x) { return x; };
        twin->q = [](double) { return 0.0; };
        twin->r = [](double x) { return x; };
        twin->a = 0.0;
        twin->b = 1.0;
        twin->bc_left = LimitFormBc{[](double) { return 0.0; }, [](double x) { return x; },
                                    "lim x w' = 0"};
        twin->bc_right = DirichletBc{};
        twin->default_domain = {0.0, 1.0};
        twin->reference = pr.reference;

        auto form = std::make_shared<SolverForm>();
        form->problem = twin;
        form->back_weight = [](double x) { return std::sqrt(std::max(x, 0.0)); };
        form->note = "sqrt_weight_transform";
        pr.solver_form = form;
    }
    return pr;
}

SLProblem make_generalized_bessel_impl(double nu, double tau_shift) {
    const double c = nu * nu - 0.25;
    SLProblem pr;
    pr.name = "bessel_generalized";
    pr.description =
        "-u'' + (nu^2 - 1/4)/(x - tau)^2 u = lambda u on (-1,1), Dirichlet; "
        "assembled as the pencil multiplied through by (x - tau)^2";
    pr.p = [](double) { return 1.0; };
    pr.q = [c, tau_shift](double x) {
        const double d = x - tau_shift;
        return c / (d * d);
    };
    pr.r = [](double) { return 1.0; };
    pr.a = -1.0;
    pr.b = 1.0;
    pr.bc_left = DirichletBc{};
    pr.bc_right = DirichletBc{};
    pr.default_domain = {-1.0, 1.0};
    InteriorWeight w;
    w.m = [tau_shift](double x) {
        const double d = x - tau_shift;
        return d * d;
    };
    w.mq = [c](double) { return c; };
    w.mr = w.m;
    pr.weight = w;
    return pr;
}

SLProblem make_boyd_impl(double epsilon) {
    SLProblem pr;
    pr.name = "boyd";
    pr.description = "-u'' + q u = lambda u, q = x/(x^2 + eps^2) (regularized 1/x), "
                     "Dirichlet on [-10,10]";
    pr.p = [](double) { return 1.0; };
    pr.q = boyd_regularized_q(epsilon);
    pr.r = [](double) { return 1.0; };
    pr.a = -10.0;
    pr.b = 10.0;
    pr.bc_left = DirichletBc{};
    pr.bc_right = DirichletBc{};
    pr.default_domain = {-10.0, 10.0};
    pr.reference = table_reference({{0, -9.794200447802075e-01},
                                    {1, -7.751928355451891e-02},
                                    {2, 2.732439098153830e-01},
                                    {3, 3.092576560488862e-01},
                                    {4, 6.754139419849143e-01},
                                    {5, 8.403112262426201e-01}},
                                   "Boyd problem reference table, Chebfun column");
    return pr;
}

} // namespace

SLProblem make_boyd(double epsilon) { return make_boyd_impl(epsilon); }
SLProblem make_bessel(double nu) { return make_bessel_impl(nu); }
SLProblem make_generalized_bessel(double nu, double tau) {
    return make_generalized_bessel_impl(nu, tau);
}
SLProblem make_fokker_planck(double half_length) { return make_fokker_planck_impl(half_length); }
SLProblem make_dunford_schwartz(double eps, double X) {
    return make_dunford_schwartz_impl(eps, X);
}
SLProblem make_nasty(Interval domain) { return make_nasty_impl(domain); }

const std::vector<SLProblem>& builtin_problems() {
    static const std::vector<SLProblem> problems = [] {
        std::vector<SLProblem> v;
        v.push_back(make_legendre());
        v.push_back(make_latzko_fichera());
        v.push_back(make_rod());
        v.push_back(make_boyd_impl(1e-6));
        v.push_back(make_fokker_planck_impl(4.0));
        v.push_back(make_dunford_schwartz_impl(1e-8, 15.0));
        v.push_back(make_nasty_impl({0.0, 4.0}));
        v.push_back(make_bessel_impl(0.0));
        v.push_back(make_generalized_bessel_impl(1.0 / 3.0, 0.0));
        return v;
    }();
    return problems;
}

const SLProblem& find_problem(const std::string& name) {
    for (const auto& pr : builtin_problems())
        if (pr.name == name) return pr;
    throw NotFoundError("unknown problem: " + name);
}

} // namespace slspec
