#include "orbdem/pib.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orbdem::pib {

namespace {

double population(const OrbitalState& state, int species, int shell) {
    return species < kNumOperators ? state.S(species, shell)
                                   : state.D(species - kNumOperators, shell);
}

// Unordered pair count for a well-mixed box; clamped at zero because
// populations are continuous and N(N-1)/2 turns negative for N < 1.
double pair_count(double n_m, double n_n, bool same_species) {
    if (same_species) return std::max(0.0, 0.5 * n_m * (n_m - 1.0));
    return n_m * n_n;
}

double cross_section_km2(const PhysicalParams& params, int m, int n) {
    const double r_sum_km = (params.radius_m[m] + params.radius_m[n]) / 1000.0;
    return std::numbers::pi * r_sum_km * r_sum_km;
}

}  // namespace

int pair_index(int m, int n) {
    if (m > n) std::swap(m, n);
    // Row-major upper triangle: pairs (m, m..kNumSpecies-1).
    return m * kNumSpecies - m * (m - 1) / 2 + (n - m);
}

StepDiagnostics StepDiagnostics::zero(int n_shells) {
    StepDiagnostics d;
    d.fragments_created = Eigen::VectorXd::Zero(n_shells);
    d.decay_flux = Eigen::MatrixXd::Zero(kNumSpecies, n_shells);
    d.bottom_outflow = Eigen::VectorXd::Zero(kNumDebris);
    d.eol_counts = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    d.pmd_relocations = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    return d;
}

double collision_rate_pair(const OrbitalState& state, const PhysicalParams& params,
                           const ShellGrid& grid, int j, int m, int n) {
    if (j < 0 || j >= grid.n_shells) throw InputError("collision_rate_pair: shell index out of range");
    if (m < 0 || m >= kNumSpecies || n < 0 || n >= kNumSpecies)
        throw InputError("collision_rate_pair: species index out of range");
    const double volume = shell_volume(grid, j);
    if (!(volume > 0.0)) throw InputError("collision_rate_pair: shell volume must be positive");
    const double n_m = population(state, m, j);
    const double n_n = population(state, n, j);
    if (n_m < 0.0 || n_n < 0.0) throw InputError("collision_rate_pair: negative population");
    const double v_km_yr = params.v_rel_km_s * kSecondsPerYear;
    return cross_section_km2(params, m, n) * v_km_yr * pair_count(n_m, n_n, m == n) / volume;
}

double total_unadjusted_collision_rate(const OrbitalState& state, const PhysicalParams& params,
                                       const ShellGrid& grid, int j) {
    double total = 0.0;
    for (int m = 0; m < kNumSpecies; ++m) {
        for (int n = m; n < kNumSpecies; ++n) {
            total += collision_rate_pair(state, params, grid, j, m, n);
        }
    }
    return total;
}

Eigen::VectorXd unadjusted_collision_rates(const OrbitalState& state, const PhysicalParams& params,
                                           const ShellGrid& grid) {
    Eigen::VectorXd rates(grid.n_shells);
    for (int j = 0; j < grid.n_shells; ++j) {
        rates[j] = total_unadjusted_collision_rate(state, params, grid, j);
    }
    return rates;
}

CollisionRates effective_collision_rates(const OrbitalState& state, const PhysicalParams& params,
                                         const ShellGrid& grid) {
    const int n_shells = grid.n_shells;
    CollisionRates rates;
    rates.unadjusted_total = Eigen::VectorXd::Zero(n_shells);
    rates.effective_by_species = Eigen::MatrixXd::Zero(kNumSpecies, n_shells);
    rates.effective_pairs = Eigen::MatrixXd::Zero(kNumPairs, n_shells);

    for (int j = 0; j < n_shells; ++j) {
        for (int m = 0; m < kNumSpecies; ++m) {
            for (int n = m; n < kNumSpecies; ++n) {
                const double raw = collision_rate_pair(state, params, grid, j, m, n);
                rates.unadjusted_total[j] += raw;

                double effective = raw;
                if (species_is_operator(m) || species_is_operator(n)) {
                    if (params.sat_avoidance) effective = 0.0;
                } else {
                    effective *= params.debris_debris_adjust;
                }
                rates.effective_pairs(pair_index(m, n), j) = effective;
                // One object of each participant is removed per collision.
                rates.effective_by_species(m, j) += effective;
                rates.effective_by_species(n, j) += effective;
            }
        }
    }
    return rates;
}

bool collision_is_catastrophic(const PhysicalParams& params, int m, int n) {
    const double m_small = std::min(params.mass_kg[m], params.mass_kg[n]);
    const double m_large = std::max(params.mass_kg[m], params.mass_kg[n]);
    if (!(m_small > 0.0) || !(m_large > 0.0))
        throw InputError("collision_is_catastrophic: masses must be positive");
    const double v_m_s = params.v_rel_km_s * 1000.0;
    const double energy_j = 0.5 * m_small * v_m_s * v_m_s;
    const double specific_j_g = energy_j / (m_large * 1000.0);
    return specific_j_g >= params.catastrophic_threshold_j_g;
}

double fragments_per_collision(const PhysicalParams& params, int m, int n) {
    const double m_small = std::min(params.mass_kg[m], params.mass_kg[n]);
    if (!(m_small > 0.0)) throw InputError("fragments_per_collision: masses must be positive");
    const double lc = params.frag_min_size_m;
    double reference_mass;
    if (collision_is_catastrophic(params, m, n)) {
        reference_mass = params.mass_kg[m] + params.mass_kg[n];
    } else {
        reference_mass = m_small * params.v_rel_km_s * params.v_rel_km_s;
    }
    return 0.1 * std::pow(reference_mass, 0.75) * std::pow(lc, -1.71);
}

Eigen::VectorXd apply_pmd(const OrbitalState& state, const PhysicalParams& params,
                          const Eigen::MatrixXd& eol_counts,
                          Eigen::MatrixXd* relocated) {
    const int n_shells = state.n_shells();
    if (eol_counts.rows() != kNumOperators || eol_counts.cols() != n_shells)
        throw InputError("apply_pmd: eol_counts has wrong dimensions");
    if (eol_counts.minCoeff() < 0.0) throw InputError("apply_pmd: eol_counts must be non-negative");

    const int target = params.pmd_target_shell;
    Eigen::VectorXd ip_added = Eigen::VectorXd::Zero(n_shells);
    if (relocated) *relocated = Eigen::MatrixXd::Zero(kNumOperators, n_shells);

    for (int i = 0; i < kNumOperators; ++i) {
        for (int j = 0; j < n_shells; ++j) {
            const double eol = eol_counts(i, j);
            if (eol == 0.0) continue;
            if (j > target) {
                const double moved = params.pmd_rate[i] * eol;
                ip_added[target] += moved;
                ip_added[j] += eol - moved;
                if (relocated) (*relocated)(i, j) += moved;
            } else {
                // Already decays within the guideline horizon.
                ip_added[j] += eol;
            }
        }
    }
    return ip_added;
}

std::pair<OrbitalState, StepDiagnostics> step_year(const OrbitalState& state,
                                                   const LaunchAllocation& launches,
                                                   const PhysicalParams& params,
                                                   const ShellGrid& grid,
                                                   const StepOptions& options) {
    state.validate(grid);
    launches.validate(grid);
    params.validate(grid);
    if (options.n_substeps < 1) throw InputError("step_year: n_substeps must be >= 1");

    const int n_shells = grid.n_shells;
    const double dt = 1.0 / options.n_substeps;
    const int ip = static_cast<int>(DebrisType::IP);
    const int cof = static_cast<int>(DebrisType::COF);
    const int rb = static_cast<int>(DebrisType::RB);
    const int mro = static_cast<int>(DebrisType::MRO);

    // Fragment yields are state-independent; compute once per step.
    Eigen::VectorXd pair_yield(kNumPairs);
    for (int m = 0; m < kNumSpecies; ++m) {
        for (int n = m; n < kNumSpecies; ++n) {
            pair_yield[pair_index(m, n)] = fragments_per_collision(params, m, n);
        }
    }

    OrbitalState current = state;
    StepDiagnostics diag = StepDiagnostics::zero(n_shells);

    for (int step = 0; step < options.n_substeps; ++step) {
        const CollisionRates rates = effective_collision_rates(current, params, grid);

        Eigen::MatrixXd s_next = current.S;
        Eigen::MatrixXd d_next = current.D;
        Eigen::MatrixXd eol_substep = Eigen::MatrixXd::Zero(kNumOperators, n_shells);

        // Satellites: launches in, end-of-life and collision removals out.
        for (int i = 0; i < kNumOperators; ++i) {
            for (int j = 0; j < n_shells; ++j) {
                const double stock = current.S(i, j);
                const double eol_amt0 = params.eol_rate[i] * stock * dt;
                const double coll_amt0 = rates.effective_by_species(i, j) * stock * dt;
                double eol_amt = eol_amt0;
                double coll_amt = coll_amt0;
                const double out = eol_amt0 + coll_amt0;
                if (out > stock && out > 0.0) {
                    const double scale = stock / out;
                    eol_amt *= scale;
                    coll_amt *= scale;
                }
                s_next(i, j) = stock - eol_amt - coll_amt + launches.q(i, j) * dt;
                eol_substep(i, j) = eol_amt;
            }
        }

        Eigen::MatrixXd relocated;
        const Eigen::VectorXd ip_added = apply_pmd(current, params, eol_substep, &relocated);
        diag.eol_counts += eol_substep;
        diag.pmd_relocations += relocated;

        // Debris: collision removals and decay out of each shell, scaled
        // jointly so the combined outflow never exceeds the stock.
        Eigen::MatrixXd transfer = Eigen::MatrixXd::Zero(kNumDebris, n_shells);
        for (int k = 0; k < kNumDebris; ++k) {
            const int species = kNumOperators + k;
            for (int j = 0; j < n_shells; ++j) {
                const double stock = current.D(k, j);
                double decay_amt = params.decay_rate(species, j) * stock * dt;
                double coll_amt = rates.effective_by_species(species, j) * dt;
                const double out = decay_amt + coll_amt;
                if (out > stock && out > 0.0) {
                    const double scale = stock / out;
                    decay_amt *= scale;
                    coll_amt *= scale;
                }
                d_next(k, j) = stock - decay_amt - coll_amt;
                transfer(k, j) = decay_amt;
            }
        }
        for (int k = 0; k < kNumDebris; ++k) {
            diag.decay_flux.row(kNumOperators + k) += transfer.row(k);
            for (int j = n_shells - 1; j >= 0; --j) {
                if (j > 0) {
                    d_next(k, j - 1) += transfer(k, j);
                } else {
                    diag.bottom_outflow[k] += transfer(k, 0);
                }
            }
        }

        // Source terms.
        d_next.row(ip) += ip_added.transpose();
        for (int j = 0; j < n_shells; ++j) {
            double fragments = 0.0;
            for (int m = 0; m < kNumSpecies; ++m) {
                for (int n = m; n < kNumSpecies; ++n) {
                    fragments += pair_yield[pair_index(m, n)] * rates.effective_pairs(pair_index(m, n), j);
                }
            }
            const double frag_amt = fragments * dt;
            d_next(cof, j) += frag_amt;
            diag.fragments_created[j] += frag_amt;

            double rb_amt = 0.0;
            double mro_amt = 0.0;
            for (int i = 0; i < kNumOperators; ++i) {
                rb_amt += params.rb_per_launch(i, j) * launches.q(i, j) * dt;
                mro_amt += (params.mro_per_sat(i, j) * current.S(i, j) +
                            params.mro_per_launch(i, j) * launches.q(i, j)) * dt;
            }
            d_next(rb, j) += rb_amt;
            d_next(mro, j) += mro_amt;
        }

        s_next = s_next.cwiseMax(0.0);
        d_next = d_next.cwiseMax(0.0);

        for (int i = 0; i < s_next.rows(); ++i) {
            for (int j = 0; j < n_shells; ++j) {
                if (!std::isfinite(s_next(i, j))) {
                    std::ostringstream msg;
                    msg << "step_year: non-finite population for operator " << species_name(i)
                        << " in shell " << j;
                    throw std::runtime_error(msg.str());
                }
            }
        }
        for (int k = 0; k < d_next.rows(); ++k) {
            for (int j = 0; j < n_shells; ++j) {
                if (!std::isfinite(d_next(k, j))) {
                    std::ostringstream msg;
                    msg << "step_year: non-finite population for debris "
                        << species_name(kNumOperators + k) << " in shell " << j;
                    throw std::runtime_error(msg.str());
                }
            }
        }

        current.S = std::move(s_next);
        current.D = std::move(d_next);
    }

    current.year = state.year + 1;
    return {std::move(current), std::move(diag)};
}

}  // namespace orbdem::pib
