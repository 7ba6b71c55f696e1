#ifndef ORBDEM_OPTIM_HPP
#define ORBDEM_OPTIM_HPP

#include <Eigen/Dense>

#include <functional>

namespace orbdem::optim {

// Objective callback: returns the value at x and, when grad is non-null,
// fills the gradient. May return -inf to signal an inadmissible point; the
// line search backtracks away from such points.
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct Options {
    int max_iter = 500;
    double grad_tol = 1e-6;      // infinity norm of the gradient
    double step_tol = 1e-14;     // minimum line-search step before giving up
};

struct Result {
    Eigen::VectorXd x;
    double value = 0.0;
    Eigen::VectorXd gradient;
    int iterations = 0;
    bool converged = false;
};

// Maximizes a smooth concave objective with dense BFGS and Armijo
// backtracking. Suited to the moderate dimensions of the demand models.
Result maximize(const ObjectiveFn& objective, const Eigen::VectorXd& x0, const Options& options = {});

}  // namespace orbdem::optim

#endif  // ORBDEM_OPTIM_HPP
