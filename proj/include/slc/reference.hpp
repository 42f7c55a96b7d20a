#pragma once

#include <Eigen/Dense>

namespace slc {

// Reference evaluations of the Newton transformation tensors, independent of
// the trace recursion. Used by the verification suites and tests only.

/// [T_k]_i^j as the derivative of sigma_{k+1} with respect to h, evaluated
/// as a sum of cofactors of (k+1) x (k+1) principal minors. Works for any n.
Eigen::MatrixXd newton_tensor_minor(const Eigen::MatrixXd& h, int k);

/// Direct generalized-Kronecker-delta sum
/// [T_k]_i^j = (1/k!) delta^{i i1..ik}_{j j1..jk} h^{i1}_{j1} ... h^{ik}_{jk},
/// enumerating ordered distinct index tuples. Practical for n <= 4.
Eigen::MatrixXd newton_tensor_delta(const Eigen::MatrixXd& h, int k);

} // namespace slc
