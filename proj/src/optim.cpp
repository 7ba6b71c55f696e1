#include "orbdem/optim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbdem::optim {

namespace {

bool finite_vector(const Eigen::VectorXd& v) {
    return v.allFinite();
}

}  // namespace

Result maximize(const ObjectiveFn& objective, const Eigen::VectorXd& x0, const Options& options) {
    const int n = static_cast<int>(x0.size());
    if (n == 0) throw std::invalid_argument("optim::maximize: empty parameter vector");

    Eigen::VectorXd x = x0;
    Eigen::VectorXd grad(n);
    double value = objective(x, &grad);
    if (!std::isfinite(value) || !finite_vector(grad))
        throw std::runtime_error("optim::maximize: objective not finite at the starting point");

    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);

    Result result;
    result.converged = false;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.iterations = iter;
        if (grad.lpNorm<Eigen::Infinity>() < options.grad_tol) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd direction = h_inv * grad;
        double directional = direction.dot(grad);
        if (!(directional > 0.0) || !finite_vector(direction)) {
            // Curvature information went bad; fall back to steepest ascent.
            h_inv.setIdentity();
            direction = grad;
            directional = grad.squaredNorm();
        }

        // Armijo backtracking.
        const double c1 = 1e-4;
        double step = 1.0;
        double new_value = -std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new(n);
        Eigen::VectorXd grad_new(n);
        bool accepted = false;
        while (step > options.step_tol) {
            x_new = x + step * direction;
            new_value = objective(x_new, &grad_new);
            if (std::isfinite(new_value) && finite_vector(grad_new) &&
                new_value >= value + c1 * step * directional) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no progress possible along this direction

        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = grad_new - grad;  // gradient change (ascent)
        const double sy = s.dot(-y);                // curvature of the negated objective
        if (sy > 1e-12 * s.norm() * y.norm()) {
            // Standard BFGS update on the inverse Hessian of -f.
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd outer_sy = s * (-y).transpose();
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            h_inv = (eye - rho * outer_sy) * h_inv * (eye - rho * outer_sy.transpose()) +
                    rho * s * s.transpose();
        }

        x = std::move(x_new);
        grad = std::move(grad_new);
        value = new_value;
    }

    if (!result.converged && grad.lpNorm<Eigen::Infinity>() < options.grad_tol) {
        result.converged = true;
    }
    result.x = std::move(x);
    result.value = value;
    result.gradient = std::move(grad);
    return result;
}

}  // namespace orbdem::optim
