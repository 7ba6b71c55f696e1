#include "orbdem/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace orbdem::choice {

const std::array<std::string, kNumAttributes> kAttributeNames = {
    "civil_payloads", "commercial_payloads", "defense_payloads", "other_payloads",
    "collision_rate"};

void ShellCharacteristics::validate() const {
    if (attributes.cols() != kNumAttributes)
        throw InputError("ShellCharacteristics: expected 5 attribute columns");
    if (access_cost.size() != attributes.rows())
        throw InputError("ShellCharacteristics: access cost length mismatch");
    if (!attributes.allFinite() || !access_cost.allFinite())
        throw InputError("ShellCharacteristics: non-finite entry");
    if (attributes.minCoeff() < 0.0)
        throw InputError("ShellCharacteristics: counts and collision rates must be non-negative");
    if (access_cost.minCoeff() <= 0.0)
        throw InputError("ShellCharacteristics: access costs must be positive");
}

void ChoiceOccasion::validate() const {
    chars.validate();
    if (chosen_shell < 0 || chosen_shell >= chars.n_shells())
        throw InputError("ChoiceOccasion: chosen shell outside the choice set");
}

ChoiceModelParams ChoiceModelParams::zero(int n_shells) {
    ChoiceModelParams p;
    p.asc = Eigen::VectorXd::Zero(n_shells);
    p.beta = Eigen::VectorXd::Zero(kNumAttributes);
    return p;
}

void ChoiceModelParams::validate() const {
    if (reference_shell < 0 || reference_shell >= asc.size())
        throw InputError("ChoiceModelParams: reference shell out of range");
    if (asc[reference_shell] != 0.0)
        throw InputError("ChoiceModelParams: reference-shell constant must be zero");
    if (!asc.allFinite() || !beta.allFinite() || !std::isfinite(gamma))
        throw InputError("ChoiceModelParams: non-finite parameter");
    if (asc_penalty < 0.0) throw InputError("ChoiceModelParams: asc_penalty must be >= 0");
}

double orbit_energy_gj_per_tonne(const ShellGrid& grid, int shell) {
    const double r = grid.earth_radius + shell_midpoint_altitude(grid, shell);
    // v_c^2/2 + mu (1/R_E - 1/r); km^2/s^2 equals GJ per tonne.
    return kMuEarth / (2.0 * r) + kMuEarth * (1.0 / grid.earth_radius - 1.0 / r);
}

double access_cost(double price_million_usd, int shell, const ShellGrid& grid,
                   const std::optional<Eigen::VectorXd>& energy_table) {
    if (!(price_million_usd > 0.0)) throw InputError("access_cost: price must be positive");
    if (shell < 0 || shell >= grid.n_shells) throw InputError("access_cost: shell index out of range");
    double energy;
    if (energy_table) {
        if (energy_table->size() != grid.n_shells)
            throw InputError("access_cost: energy table length mismatch");
        energy = (*energy_table)[shell];
    } else {
        energy = orbit_energy_gj_per_tonne(grid, shell);
    }
    return price_million_usd * energy;
}

Eigen::VectorXd utility(const ChoiceModelParams& params, const ShellCharacteristics& chars) {
    if (params.asc.size() != chars.n_shells())
        throw InputError("utility: parameter/characteristic shell count mismatch");
    if (params.beta.size() != kNumAttributes)
        throw InputError("utility: beta must have one weight per attribute");
    return params.asc + chars.attributes * params.beta + params.gamma * chars.access_cost;
}

namespace {

// Softmax with max-subtraction. Returns false when any centered utility is
// non-finite or falls below -700 (which would underflow to an exact zero).
bool softmax(const Eigen::VectorXd& v, Eigen::VectorXd& probs) {
    if (!v.allFinite()) return false;
    const double v_max = v.maxCoeff();
    probs = (v.array() - v_max).exp();
    if ((v.array() - v_max < -700.0).any()) return false;
    probs /= probs.sum();
    return true;
}

}  // namespace

Eigen::VectorXd choice_probabilities(const ChoiceModelParams& params,
                                     const ShellCharacteristics& chars) {
    const Eigen::VectorXd v = utility(params, chars);
    Eigen::VectorXd probs;
    if (!softmax(v, probs))
        throw std::domain_error("choice_probabilities: utilities out of representable range");
    return probs;
}

Eigen::VectorXd pack_params(const ChoiceModelParams& params) {
    const int n_shells = static_cast<int>(params.asc.size());
    Eigen::VectorXd theta(n_shells - 1 + kNumAttributes + 1);
    int idx = 0;
    for (int j = 0; j < n_shells; ++j) {
        if (j == params.reference_shell) continue;
        theta[idx++] = params.asc[j];
    }
    theta.segment(idx, kNumAttributes) = params.beta;
    theta[idx + kNumAttributes] = params.gamma;
    return theta;
}

ChoiceModelParams unpack_params(const Eigen::VectorXd& theta, int n_shells, int reference_shell,
                                double asc_penalty) {
    ChoiceModelParams params = ChoiceModelParams::zero(n_shells);
    params.reference_shell = reference_shell;
    params.asc_penalty = asc_penalty;
    int idx = 0;
    for (int j = 0; j < n_shells; ++j) {
        if (j == reference_shell) continue;
        params.asc[j] = theta[idx++];
    }
    params.beta = theta.segment(idx, kNumAttributes);
    params.gamma = theta[idx + kNumAttributes];
    return params;
}

double log_likelihood(const ChoiceModelParams& params, const std::vector<ChoiceOccasion>& occasions,
                      Eigen::VectorXd* grad) {
    if (occasions.empty()) throw InputError("log_likelihood: no occasions");
    const int n_shells = static_cast<int>(params.asc.size());

    Eigen::VectorXd grad_asc = Eigen::VectorXd::Zero(n_shells);
    Eigen::VectorXd grad_beta = Eigen::VectorXd::Zero(kNumAttributes);
    double grad_gamma = 0.0;
    double ll = 0.0;

    for (const ChoiceOccasion& occ : occasions) {
        if (occ.chars.n_shells() != n_shells)
            throw InputError("log_likelihood: occasion with inconsistent shell set");
        if (occ.chars.n_shells() == 0) throw InputError("log_likelihood: occasion with empty choice set");
        const Eigen::VectorXd v = utility(params, occ.chars);
        const double v_max = v.maxCoeff();
        const Eigen::ArrayXd shifted = (v.array() - v_max).exp();
        const double denom = shifted.sum();
        ll += v[occ.chosen_shell] - v_max - std::log(denom);

        if (grad) {
            const Eigen::VectorXd probs = (shifted / denom).matrix();
            grad_asc += -probs;
            grad_asc[occ.chosen_shell] += 1.0;
            grad_beta += occ.chars.attributes.row(occ.chosen_shell).transpose() -
                         occ.chars.attributes.transpose() * probs;
            grad_gamma += occ.chars.access_cost[occ.chosen_shell] - occ.chars.access_cost.dot(probs);
        }
    }

    if (params.asc_penalty > 0.0) {
        ll -= params.asc_penalty * params.asc.squaredNorm();
        if (grad) grad_asc -= 2.0 * params.asc_penalty * params.asc;
    }

    if (grad) {
        grad->resize(n_shells - 1 + kNumAttributes + 1);
        int idx = 0;
        for (int j = 0; j < n_shells; ++j) {
            if (j == params.reference_shell) continue;
            (*grad)[idx++] = grad_asc[j];
        }
        grad->segment(idx, kNumAttributes) = grad_beta;
        (*grad)[idx + kNumAttributes] = grad_gamma;
    }
    return ll;
}

ChoiceFit fit_choice_model(const std::vector<ChoiceOccasion>& occasions, const FitSettings& settings) {
    if (occasions.empty()) throw InputError("fit_choice_model: no occasions");
    for (const ChoiceOccasion& occ : occasions) occ.validate();
    const int n_shells = occasions.front().chars.n_shells();

    std::map<int, int> chosen_counts;
    for (const ChoiceOccasion& occ : occasions) chosen_counts[occ.chosen_shell] += 1;
    int reference_shell = 0;
    int best_count = -1;
    for (const auto& [shell, count] : chosen_counts) {
        if (count > best_count) {
            reference_shell = shell;
            best_count = count;
        }
    }

    const auto objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd* grad) -> double {
        const ChoiceModelParams params =
            unpack_params(theta, n_shells, reference_shell, settings.asc_penalty);
        if (params.asc.lpNorm<Eigen::Infinity>() > 2.0 * settings.separation_bound)
            return -std::numeric_limits<double>::infinity();
        return log_likelihood(params, occasions, grad);
    };

    optim::Options opt;
    opt.max_iter = settings.max_iter;
    opt.grad_tol = settings.grad_tol;
    const Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(n_shells - 1 + kNumAttributes + 1);
    const optim::Result res = optim::maximize(objective, theta0, opt);

    ChoiceModelParams fitted =
        unpack_params(res.x, n_shells, reference_shell, settings.asc_penalty);
    if (settings.asc_penalty == 0.0 &&
        fitted.asc.lpNorm<Eigen::Infinity>() > settings.separation_bound) {
        throw FitError(
            "fit_choice_model: constants diverged, likely perfect separation; "
            "set a positive asc_penalty to keep estimates finite",
            std::move(fitted));
    }
    if (!res.converged) {
        std::ostringstream msg;
        msg << "fit_choice_model: no convergence after " << settings.max_iter
            << " iterations (gradient norm " << res.gradient.lpNorm<Eigen::Infinity>() << ")";
        throw FitError(msg.str(), std::move(fitted));
    }

    ChoiceFit fit;
    fit.params = std::move(fitted);
    fit.log_likelihood = res.value;
    fit.n_obs = static_cast<int>(occasions.size());
    fit.iterations = res.iterations;
    return fit;
}

double price_index(const ChoiceModelParams& params, const ShellCharacteristics& chars) {
    const Eigen::VectorXd v = utility(params, chars);
    const Eigen::VectorXd probs = choice_probabilities(params, chars);
    return probs.dot(v);
}

}  // namespace orbdem::choice
