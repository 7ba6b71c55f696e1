#ifndef ORBDEM_CHOICE_HPP
#define ORBDEM_CHOICE_HPP

#include "orbdem/core.hpp"
#include "orbdem/optim.hpp"

#include <optional>
#include <vector>

// Second-stage random-utility model: per-shell utilities, multinomial logit
// choice probabilities, and maximum-likelihood fitting of operator-specific
// parameters.
namespace orbdem::choice {

// Observable attributes entering the utility function. The five columns of
// `attributes` are civil, commercial, defense and other active payload
// counts followed by the total unadjusted collision rate; access cost is
// kept separate because it carries its own coefficient.
struct ShellCharacteristics {
    Eigen::MatrixXd attributes;   // n_shells x kNumAttributes
    Eigen::VectorXd access_cost;  // n_shells, million $-GJ

    int n_shells() const { return static_cast<int>(attributes.rows()); }
    void validate() const;
};

constexpr int kNumAttributes = 5;
extern const std::array<std::string, kNumAttributes> kAttributeNames;

// One satellite placement: the operator chose `chosen_shell` out of the
// full choice set while observing `chars`.
struct ChoiceOccasion {
    OperatorGroup group = OperatorGroup::Commercial;
    int year = 0;
    int chosen_shell = 0;
    ShellCharacteristics chars;

    void validate() const;
};

struct ChoiceModelParams {
    Eigen::VectorXd asc;     // n_shells, alternative-specific constants; asc[reference_shell] == 0
    Eigen::VectorXd beta;    // kNumAttributes
    double gamma = 0.0;      // marginal utility of access cost
    int reference_shell = 0;
    double asc_penalty = 0.0;

    static ChoiceModelParams zero(int n_shells);
    void validate() const;
};

// Specific orbital energy needed to reach the shell midpoint from surface
// rest, in GJ per tonne (numerically km^2/s^2).
double orbit_energy_gj_per_tonne(const ShellGrid& grid, int shell);

// Launch price (million USD) times the injection-energy proxy, in million
// $-GJ. An explicit per-shell energy table overrides the proxy.
double access_cost(double price_million_usd, int shell, const ShellGrid& grid,
                   const std::optional<Eigen::VectorXd>& energy_table = std::nullopt);

// Deterministic utility V_j = asc_j + X_j . beta + ac_j * gamma.
Eigen::VectorXd utility(const ChoiceModelParams& params, const ShellCharacteristics& chars);

// Softmax of the utilities, computed with max-subtraction. Utilities more
// than 700 below the maximum are rejected so every probability stays
// strictly inside (0, 1).
Eigen::VectorXd choice_probabilities(const ChoiceModelParams& params,
                                     const ShellCharacteristics& chars);

// Sum of log probabilities of the chosen shells, minus
// asc_penalty * ||asc||^2. When `grad` is non-null it receives the
// gradient in packed order (see pack_params).
double log_likelihood(const ChoiceModelParams& params, const std::vector<ChoiceOccasion>& occasions,
                      Eigen::VectorXd* grad = nullptr);

// Parameter packing for the optimizer: the n_shells-1 free constants (the
// reference shell is pinned to zero), then beta, then gamma.
Eigen::VectorXd pack_params(const ChoiceModelParams& params);
ChoiceModelParams unpack_params(const Eigen::VectorXd& theta, int n_shells, int reference_shell,
                                double asc_penalty);

struct FitSettings {
    int max_iter = 500;
    double grad_tol = 1e-6;
    double asc_penalty = 1e-4;
    // Infinity-norm bound on the constants beyond which an unpenalized fit
    // is treated as divergent (perfect separation).
    double separation_bound = 30.0;
};

struct ChoiceFit {
    ChoiceModelParams params;
    double log_likelihood = 0.0;
    int n_obs = 0;
    int iterations = 0;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, ChoiceModelParams best)
        : std::runtime_error(what), best_params(std::move(best)) {}
    ChoiceModelParams best_params;
};

// Maximum-likelihood fit for one operator group. The reference shell is the
// most frequently chosen one. Throws FitError carrying the best iterate on
// non-convergence, and flags likely perfect separation when an unpenalized
// fit drives the constants past the separation bound.
ChoiceFit fit_choice_model(const std::vector<ChoiceOccasion>& occasions,
                           const FitSettings& settings = {});

// Choice-probability-weighted mean deterministic utility; the price index
// that feeds the first-stage model.
double price_index(const ChoiceModelParams& params, const ShellCharacteristics& chars);

}  // namespace orbdem::choice

#endif  // ORBDEM_CHOICE_HPP
