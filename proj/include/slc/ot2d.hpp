#pragma once

#include <Eigen/Dense>

#include <vector>

#include "slc/grid.hpp"
#include "slc/kappa.hpp"

namespace slc {

/// det[D^2 u + W cot(Theta) g] - W^4 / sin^2(Theta) per interior grid point
/// (NaN on the ring). n = 2 only; sin(Theta) = 0 is a domain error.
std::vector<double> det_form_residual(const GraphPatch& patch, const Phase& phase);

/// Transport cost c(x,y) = -sqrt(tan^2 Theta - |x-y|^2); +infinity marks an
/// infeasible pair (|x-y| >= tan Theta).
double transport_cost(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double theta);

/// Map T_u(x) = tan(Theta) Du/W + x on the 2-ring interior (Du, W from
/// fourth-order central differences) and det DT_u by central differences of
/// the map values on the 3-ring interior.
struct TransportMap {
    std::vector<Eigen::Vector2d> T; // full grid; valid on 2-ring interior
    std::vector<double> detDT;      // full grid; NaN outside the 3-ring interior
    std::vector<char> t_valid;
};

TransportMap ot_map(const GraphPatch& patch, double theta);

/// c-convexity D^2 u + cot(Theta) W g >= 0 per interior point: smallest
/// eigenvalue >= -1e-8. Entries outside the interior are 0.
std::vector<char> c_convexity_check(const GraphPatch& patch, double theta);

/// Discrete, balanced transport instance with equal-mass atoms.
struct OTInstance {
    double theta = 0;
    std::vector<Eigen::Vector2d> source;
    std::vector<Eigen::Vector2d> target;
    double density_f = 1; // 1 / cos^2 Theta
    double density_g = 1;
};

/// The dilation instance: m x m source grid on [-0.2, 0.2]^2, targets at 2x.
/// On the sphere cap of radius sqrt(tan^2 Theta + ... ) -- concretely for
/// Theta = pi/3, R = sqrt(3) -- the optimal map is exactly x -> 2x.
OTInstance cap_instance(double theta, int m_per_axis);

struct Assignment {
    std::vector<int> target_of; // source i -> target index
    double total_cost = 0;
};

/// Exact optimal assignment by the Hungarian method (O(n^3) potentials +
/// augmenting paths). Error if the optimum is forced onto an infeasible
/// pair, naming the pair.
Assignment discrete_ot_oracle(const OTInstance& instance);

/// Ma-Trudinger-Wang form A(x,y)(xi,nu) = -cot(Theta) (xi' g xi)(nu' g^-1 nu)/W
/// for xi perpendicular to nu; strictly negative for 0 < Theta < pi/2.
/// Non-orthogonal xi, nu is a domain error.
double mtw_tensor(const Eigen::Vector2d& Du, const Eigen::Vector2d& xi,
                  const Eigen::Vector2d& nu, double theta);

/// Cost Hessian A_ij(x, p) = -cot(Theta) W(p) (delta_ij + p_i p_j); exposed so
/// tests can differentiate it numerically against mtw_tensor.
Eigen::Matrix2d mtw_cost_hessian(const Eigen::Vector2d& p, double theta);

} // namespace slc
