#ifndef ORBDEM_PIB_HPP
#define ORBDEM_PIB_HPP

#include "orbdem/core.hpp"

// Multi-shell, multi-species particle-in-a-box propagator. Each shell is a
// well-mixed box; collision rates follow kinetic gas theory and fragment
// yields follow the NASA standard breakup power law. Propagation advances
// one year at a time with explicit sub-stepping.
namespace orbdem::pib {

// Collision rates for one state snapshot. `unadjusted_total` is the raw
// kinetic-gas collision count per shell over all species pairs, before any
// avoidance or adjustment (the "total PIB collision rate" covariate of the
// demand models). `effective_by_species` holds the post-adjustment removal
// rates: each colliding pair removes one object of each participant, two of
// the same species for self-pairs.
struct CollisionRates {
    Eigen::VectorXd unadjusted_total;        // n_shells
    Eigen::MatrixXd effective_by_species;    // kNumSpecies x n_shells
    // Post-adjustment rate of each unordered species pair (m <= n), indexed
    // by pair_index(m, n). Feeds fragment production.
    Eigen::MatrixXd effective_pairs;         // n_pairs x n_shells
};

constexpr int kNumPairs = kNumSpecies * (kNumSpecies + 1) / 2;

// Index of the unordered pair (m, n) with m <= n in a flat array.
int pair_index(int m, int n);

struct StepDiagnostics {
    Eigen::VectorXd fragments_created;   // n_shells, COF objects added by collisions
    Eigen::MatrixXd decay_flux;          // kNumSpecies x n_shells, objects moved down one shell
    Eigen::VectorXd bottom_outflow;      // kNumDebris, objects lost below the lowest shell
    Eigen::MatrixXd eol_counts;          // kNumOperators x n_shells, satellites reaching end of life
    Eigen::MatrixXd pmd_relocations;     // kNumOperators x n_shells, EOL satellites moved to the target shell

    static StepDiagnostics zero(int n_shells);
};

// Kinetic-gas collision rate between species m and n in shell j, per year.
// Self-pairs use the N(N-1)/2 unordered-pair count.
double collision_rate_pair(const OrbitalState& state, const PhysicalParams& params,
                           const ShellGrid& grid, int j, int m, int n);

// Sum over every unordered species pair, self-pairs included, with no
// avoidance and no debris-debris adjustment.
double total_unadjusted_collision_rate(const OrbitalState& state, const PhysicalParams& params,
                                       const ShellGrid& grid, int j);

Eigen::VectorXd unadjusted_collision_rates(const OrbitalState& state, const PhysicalParams& params,
                                           const ShellGrid& grid);

// Applies satellite avoidance (pairs touching an operator species drop to
// zero) and the debris-debris adjustment factor, then apportions removals
// to the participating species.
CollisionRates effective_collision_rates(const OrbitalState& state, const PhysicalParams& params,
                                         const ShellGrid& grid);

// Fragment count from one collision between species m and n, per the
// standard breakup power law. Catastrophic when the specific impact energy
// (J/g of the larger body) reaches the threshold; sub-catastrophic
// collisions substitute the mass-equivalent kinetic term.
double fragments_per_collision(const PhysicalParams& params, int m, int n);

bool collision_is_catastrophic(const PhysicalParams& params, int m, int n);

// Routes end-of-life satellites into the intact-payload population. Above
// the disposal target shell, the compliant fraction moves to the target and
// the remainder becomes debris in place; at or below the target everything
// is naturally compliant and stays in place. Returns the IP additions per
// shell; `relocated` (optional) receives the per-operator-per-shell counts
// moved to the target shell.
Eigen::VectorXd apply_pmd(const OrbitalState& state, const PhysicalParams& params,
                          const Eigen::MatrixXd& eol_counts,
                          Eigen::MatrixXd* relocated = nullptr);

struct StepOptions {
    int n_substeps = 12;
};

// Advances the state by one year. Launches spread uniformly over substeps;
// satellites lose end-of-life and collision removals; debris species gain
// their source terms, lose collision removals, and decay one shell down.
// Removals scale down when they would exceed the available stock within a
// substep, so populations never go negative.
std::pair<OrbitalState, StepDiagnostics> step_year(const OrbitalState& state,
                                                   const LaunchAllocation& launches,
                                                   const PhysicalParams& params,
                                                   const ShellGrid& grid,
                                                   const StepOptions& options = {});

}  // namespace orbdem::pib

#endif  // ORBDEM_PIB_HPP
