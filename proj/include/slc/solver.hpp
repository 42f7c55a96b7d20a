#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slc/geometry.hpp"
#include "slc/grid.hpp"
#include "slc/kappa.hpp"

namespace slc {

/// Dirichlet problem for sum_i arctan(kappa_i(graph u)) = Theta on a
/// rectangular patch. Boundary values live on the outermost ring of
/// `domain`; interior values of `domain` are the initial guess.
struct DirichletProblem {
    GraphPatch domain;
    double theta = 0;
    int continuation_steps = 8;  // uniform Theta schedule from 0, cold start
    std::vector<double> stages;  // explicit intermediate phases; overrides the
                                 // uniform schedule when nonempty
    bool warm_start = false;     // skip continuation, Newton at theta directly
    double newton_tol = 1e-9;
    int max_newton = 50;
    double min_theta_step = 1e-4;

    explicit DirichletProblem(GraphPatch d) : domain(std::move(d)) {}
};

struct SolveReport {
    GraphPatch solution;
    bool converged = false;
    std::string failure;
    double final_residual = 0;
    int newton_total = 0;

    struct HistRow {
        double theta;
        int iter;
        double max_residual;
        double step; // line-search step actually taken
    };
    std::vector<HistRow> history;

    /// Gamma_{n-1} membership per grid point (1-ring interior; 0 elsewhere).
    std::vector<char> admissible;

    explicit SolveReport(GraphPatch s) : solution(std::move(s)) {}
};

/// Residual sum arctan kappa_i - Theta per grid point (NaN on the boundary
/// ring), via the curvature field.
std::vector<double> residual_grid(const GraphPatch& patch, const Phase& phase);

/// Damped Newton with continuation in Theta. The Jacobian is assembled by
/// central finite differencing of the residual with respect to nodal values
/// over the 3^n stencil.
SolveReport solve(const DirichletProblem& problem);

/// u(x) = -sqrt(R^2 - |x - c|^2) sampled on the given grid geometry; its
/// principal curvatures are 1/R, so it solves the equation with
/// Theta = n arctan(1/R). Domain error if a node reaches the rim.
GraphPatch sphere_cap_reference(double R, const GraphPatch& geometry,
                                const std::vector<double>& cap_center);

inline GraphPatch sphere_cap_reference(double R, const GraphPatch& geometry) {
    return sphere_cap_reference(R, geometry, std::vector<double>(geometry.n(), 0.0));
}

struct CurvatureProbe {
    double sup_kappa_inner = 0; // sup over |x - center| <= inner_radius of |kappa|_inf
    double osc_u = 0;           // oscillation over the full patch
    double ratio = 0;           // sup / osc
};

CurvatureProbe probe_interior_curvature(const SolveReport& report, double inner_radius);

struct GradientProbe {
    double grad0 = 0; // |Du| at the node closest to the origin
    double osc_u = 0;
    double ratio = 0;
};

GradientProbe probe_gradient_estimate(const SolveReport& report);

} // namespace slc
