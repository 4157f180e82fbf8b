#include "slspec/discretize.hpp"

#include <algorithm>
#include <cmath>

namespace slspec {

namespace {

double eval_at_node(const CoefficientFn& f, double x, const std::string& name) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw SingularNodeError(name + " evaluation failed at node x = " + std::to_string(x), x);
    return v;
}

// (f, g) row data for a boundary condition realized at x_e.
std::pair<double, double> bc_row_coefficients(const BoundaryCondition& bc, double xe) {
    if (std::holds_alternative<DirichletBc>(bc)) return {1.0, 0.0};
    if (std::holds_alternative<TruncatedDirichletBc>(bc)) return {1.0, 0.0};
    if (const auto* robin = std::get_if<RobinBc>(&bc)) {
        if (robin->alpha == 0.0 && robin->beta == 0.0)
            throw DegenerateBcError("Robin condition with alpha = beta = 0");
        return {robin->alpha, robin->beta};
    }
    if (const auto* lim = std::get_if<LimitFormBc>(&bc)) return {lim->f(xe), lim->g(xe)};
    throw InvalidArgument("ReplaceRow requires a condition with a row form");
}

struct Coefficients {
    Eigen::VectorXd mp;   // m*p at all nodes
    Eigen::VectorXd mpp;  // m*p' (p' spectral) at all nodes
    bool has_weight;
};

} // namespace

EndpointRow endpoint_expand(const SLProblem& problem, Side side, const ChebGrid& grid) {
    const int n = grid.n_points;
    const int idx = (side == Side::Right) ? 0 : n - 1;  // nodes are descending
    const double xe = grid.nodes[idx];
    const double pe = problem.p(xe);
    if (!(std::abs(pe) <= 1e-12))
        throw NotDegenerateError(problem.name + ": p(" + std::to_string(xe) +
                                 ") = " + std::to_string(pe) +
                                 " does not vanish; endpoint is not degenerate");
    Eigen::VectorXd p_samples(n);
    for (int j = 0; j < n; ++j) p_samples[j] = eval_at_node(problem.p, grid.nodes[j], "p");
    const double dpe = grid.d1.row(idx).dot(p_samples);
    if (!std::isfinite(dpe))
        throw NotDegenerateError(problem.name + ": p' is not finite at the endpoint");
    EndpointRow row;
    row.node_index = idx;
    row.d1_coeff = -dpe;
    row.unit_coeff = eval_at_node(problem.q, xe, "q");
    row.b_coeff = eval_at_node(problem.r, xe, "r");
    return row;
}

namespace {

Pencil assemble_cheb(const SLProblem& problem, const DiscretizationPlan& plan) {
    const Interval domain = plan.domain.value_or(problem.default_domain);
    if (!(domain.b > domain.a))
        throw InvalidArgument("assemble: empty discretization domain");
    if (domain.a < problem.a - 1e-14 || domain.b > problem.b + 1e-14)
        throw InvalidArgument("assemble: plan domain lies outside the problem interval");

    const int n = plan.n;
    const ChebGrid grid = map_matrices(cheb_diff(n, 2), AffineMap(domain.a, domain.b));
    const Eigen::VectorXd& x = grid.nodes;

    const bool weighted = problem.weight.has_value();
    Eigen::VectorXd m(n);
    if (weighted)
        for (int j = 0; j < n; ++j) m[j] = eval_at_node(problem.weight->m, x[j], "weight");
    else
        m.setOnes();

    // p is sampled everywhere: the spectral derivative needs the full grid.
    Eigen::VectorXd p_samples(n);
    for (int j = 0; j < n; ++j) p_samples[j] = eval_at_node(problem.p, x[j], "p");
    const Eigen::VectorXd pp = grid.d1 * p_samples;

    // right endpoint is node 0, left endpoint is node n-1
    struct EndTreatment {
        int idx;
        BcStrategy strategy;
        const BoundaryCondition* bc;
        Side side;
    };
    const EndTreatment ends[2] = {
        {n - 1, plan.bc_left, &problem.bc_left, Side::Left},
        {0, plan.bc_right, &problem.bc_right, Side::Right},
    };

    std::vector<int> removed;
    std::vector<int> special(n, 0);  // 1 = removed, 2 = replaced, 3 = collocated
    for (const auto& e : ends) {
        switch (e.strategy) {
        case BcStrategy::Remove: special[e.idx] = 1; removed.push_back(e.idx); break;
        case BcStrategy::ReplaceRow: special[e.idx] = 2; break;
        case BcStrategy::CollocateEndpoint: special[e.idx] = 3; break;
        }
    }
    std::sort(removed.begin(), removed.end());

    Eigen::MatrixXd A(n, n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    Pencil pencil;
    pencil.method = Method::Chebyshev;
    pencil.full_nodes = x;

    for (int i = 0; i < n; ++i) {
        if (special[i] == 1 || special[i] == 2) {
            A.row(i).setZero();  // filled below or deleted
            continue;
        }
        if (special[i] == 3) {
            const auto& e = *std::find_if(std::begin(ends), std::end(ends),
                                          [&](const EndTreatment& t) { return t.idx == i; });
            const EndpointRow row = endpoint_expand(problem, e.side, grid);
            A.row(i) = m[i] * row.d1_coeff * grid.d1.row(i);
            A(i, i) += weighted ? eval_at_node(problem.weight->mq, x[i], "m*q") : row.unit_coeff;
            B(i, i) = weighted ? eval_at_node(problem.weight->mr, x[i], "m*r") : row.b_coeff;
            continue;
        }
        const double mq = weighted ? eval_at_node(problem.weight->mq, x[i], "m*q")
                                   : eval_at_node(problem.q, x[i], "q");
        const double mr = weighted ? eval_at_node(problem.weight->mr, x[i], "m*r")
                                   : eval_at_node(problem.r, x[i], "r");
        A.row(i) = -m[i] * p_samples[i] * grid.d2.row(i) - m[i] * pp[i] * grid.d1.row(i);
        A(i, i) += mq;
        B(i, i) = mr;
    }

    for (const auto& e : ends) {
        if (e.strategy != BcStrategy::ReplaceRow) continue;
        const double xe = x[e.idx];
        auto [f, g] = bc_row_coefficients(*e.bc, xe);
        Eigen::RowVectorXd row = g * grid.d1.row(e.idx);
        row[e.idx] += f;
        const double scale = row.cwiseAbs().maxCoeff();
        if (scale == 0.0)
            throw DegenerateBcError(problem.name + ": boundary row vanishes at x = " +
                                    std::to_string(xe));
        // B row is zero, so the constraint is scale-invariant; normalize to
        // keep it visible to the QZ backward error.
        A.row(e.idx) = row / scale;
        B.row(e.idx).setZero();
        std::string desc = "f u + g u' = 0 with f = " + std::to_string(f) +
                           ", g = " + std::to_string(g) + " at x = " + std::to_string(xe);
        pencil.replaced_rows.push_back({e.idx, desc});
    }

    // delete removed rows and columns
    const int mkeep = n - static_cast<int>(removed.size());
    Eigen::VectorXi keep(mkeep);
    {
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (special[i] != 1) keep[k++] = i;
    }
    pencil.a_matrix = A(keep, keep);
    pencil.b_matrix = B(keep, keep);
    pencil.interior_nodes = x(keep);
    pencil.removed_indices = removed;
    pencil.b_is_identity =
        pencil.b_matrix.isIdentity(0.0);
    return pencil;
}

Pencil assemble_sinc(const SLProblem& problem, const DiscretizationPlan& plan) {
    if (plan.bc_left != BcStrategy::Remove || plan.bc_right != BcStrategy::Remove)
        throw InvalidArgument(
            "assemble: sinc plans forbid ReplaceRow/CollocateEndpoint (the basis decays; "
            "Dirichlet at the truncation is implicit)");
    if (!(plan.h > 0.0)) throw InvalidArgument("assemble: sinc step h must be positive");

    const SincGrid grid = plan.sinc_even_grid ? sinc_d2_offset(plan.n, plan.h, plan.sinc_center)
                                              : sinc_d2(plan.n, plan.h, plan.sinc_center);
    const int n = grid.n_points();
    const Eigen::VectorXd& x = grid.nodes;
    const bool weighted = problem.weight.has_value();

    Pencil pencil;
    pencil.method = Method::Sinc;
    pencil.full_nodes = x;
    pencil.interior_nodes = x;
    pencil.a_matrix.resize(n, n);
    pencil.b_matrix = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double mi = weighted ? eval_at_node(problem.weight->m, x[i], "weight") : 1.0;
        const double pi = eval_at_node(problem.p, x[i], "p");
        const double mq = weighted ? eval_at_node(problem.weight->mq, x[i], "m*q")
                                   : eval_at_node(problem.q, x[i], "q");
        const double mr = weighted ? eval_at_node(problem.weight->mr, x[i], "m*r")
                                   : eval_at_node(problem.r, x[i], "r");
        // sinc assembly carries no first-derivative term; the built-in sinc
        // problems have constant p
        pencil.a_matrix.row(i) = -mi * pi * grid.d2.row(i);
        pencil.a_matrix(i, i) += mq;
        pencil.b_matrix(i, i) = mr;
    }
    pencil.b_is_identity = pencil.b_matrix.isIdentity(0.0);
    return pencil;
}

} // namespace

Pencil assemble(const SLProblem& problem, const DiscretizationPlan& plan) {
    if (plan.n < 2) throw InvalidArgument("assemble: resolution must be at least 2");
    if (plan.method == Method::Sinc) return assemble_sinc(problem, plan);
    return assemble_cheb(problem, plan);
}

Eigen::VectorXd reinstate_boundary(const Eigen::VectorXd& vec, const Pencil& pencil) {
    if (vec.size() != pencil.size())
        throw InvalidArgument("reinstate_boundary: vector length does not match the pencil");
    const int full = static_cast<int>(pencil.full_nodes.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(full);
    int k = 0;
    auto removed_it = pencil.removed_indices.begin();
    for (int i = 0; i < full; ++i) {
        if (removed_it != pencil.removed_indices.end() && *removed_it == i) {
            ++removed_it;  // removed slave node: give back a zero
            continue;
        }
        out[i] = vec[k++];
    }
    return out;
}

} // namespace slspec
