#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slspec/eig.hpp"

namespace slspec {

/// End-to-end solve of a problem: routes to the attached solver form when one
/// exists, back-maps eigenvectors, and reports the plan actually used.
struct SolveOutcome {
    std::string problem_name;
    DiscretizationPlan plan;
    std::string solved_via;  // "direct" or the solver-form note
    Spectrum spectrum;
};

SolveOutcome solve_problem(const SLProblem& problem, const DiscretizationPlan& plan,
                           const SolveOptions& opts = {});

struct CaseReference {
    int index;
    double value;
    double rel_tol;
    std::string provenance;
};

struct BenchmarkCase {
    std::string name;  // registry problem name
    DiscretizationPlan plan;
    int count = 10;
    std::vector<CaseReference> references;
    std::vector<std::string> tags;
};

struct ScoreRow {
    int index;
    double computed;
    double reference;
    double rel_error;
    bool pass;
    std::string provenance;
};

struct ScoreCard {
    std::string case_name;
    std::vector<ScoreRow> rows;
    std::vector<std::pair<std::string, bool>> checks;  // named extra checks
    std::vector<std::string> notes;
    bool aggregate_pass = false;
    double wall_seconds = 0.0;
};

struct PlanOverrides {
    std::optional<Method> method;
    std::optional<int> n;
    std::optional<double> h;
    std::optional<Interval> domain;
    std::optional<int> count;
};

const std::vector<BenchmarkCase>& benchmark_registry();

const BenchmarkCase& find_case(const std::string& name);

/// Default discretization plan for a registry problem.
DiscretizationPlan default_plan(const std::string& name);

ScoreCard run_case(const std::string& name, const PlanOverrides& overrides = {});

std::vector<ScoreCard> run_all(const std::optional<std::string>& tag = std::nullopt);

} // namespace slspec
