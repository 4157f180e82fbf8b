#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slspec/problem.hpp"

namespace slspec {

enum class Method { Chebyshev, Sinc };

enum class BcStrategy { Remove, ReplaceRow, CollocateEndpoint };

struct DiscretizationPlan {
    Method method = Method::Chebyshev;
    int n = 128;        // Chebyshev point count, or sinc half-width M
    double h = 0.1;     // sinc step
    std::optional<Interval> domain;  // defaults to the problem's working domain
    BcStrategy bc_left = BcStrategy::Remove;
    BcStrategy bc_right = BcStrategy::Remove;
    bool sinc_even_grid = false;  // 2M offset nodes (sincdif convention), no center node
    double sinc_center = 0.0;
};

struct ReplacedRow {
    int row;
    std::string description;
};

struct Pencil {
    Method method = Method::Chebyshev;
    Eigen::MatrixXd a_matrix;
    Eigen::MatrixXd b_matrix;
    Eigen::VectorXd interior_nodes;   // nodes retained in the pencil
    Eigen::VectorXd full_nodes;       // all grid nodes, removed ones included
    std::vector<int> removed_indices; // original indices deleted (sorted)
    std::vector<ReplacedRow> replaced_rows;
    bool b_is_identity = false;

    int size() const { return static_cast<int>(a_matrix.rows()); }
};

/// Row description for collocating the expanded equation at a degenerate
/// endpoint (p(e) = 0): A row = d1_coeff * D1(e,:) + unit_coeff * e_e,
/// B row = b_coeff * e_e.
struct EndpointRow {
    int node_index;
    double d1_coeff;   // -p'(e), p' computed spectrally on the supplied grid
    double unit_coeff; // q(e)
    double b_coeff;    // r(e)
};

/// Assembles the generalized pencil (A, B) for the problem under the plan.
Pencil assemble(const SLProblem& problem, const DiscretizationPlan& plan);

/// Expands a pencil-sized vector to the full grid: zeros at removed nodes.
Eigen::VectorXd reinstate_boundary(const Eigen::VectorXd& vec, const Pencil& pencil);

EndpointRow endpoint_expand(const SLProblem& problem, Side side, const ChebGrid& mapped_grid);

} // namespace slspec
