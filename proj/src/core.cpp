#include "orbdem/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orbdem {

namespace {

const std::array<std::string, kNumOperators> kOperatorNames = {
    "commercial", "civil", "defense", "amateur", "constellation"};
const std::array<std::string, kNumDebris> kDebrisNames = {"rb", "mro", "ip", "cof"};
const std::array<std::string, kNumGroups> kGroupNames = {"commercial", "civil", "defense", "other"};

}  // namespace

OperatorGroup group_of(OperatorType op) {
    switch (op) {
        case OperatorType::Commercial: return OperatorGroup::Commercial;
        case OperatorType::CivilGovernment: return OperatorGroup::Civil;
        case OperatorType::Defense: return OperatorGroup::Defense;
        case OperatorType::Amateur:
        case OperatorType::Constellation: return OperatorGroup::Other;
    }
    throw std::logic_error("group_of: bad operator enum");
}

const std::string& operator_name(OperatorType op) {
    return kOperatorNames[static_cast<int>(op)];
}

const std::string& debris_name(DebrisType d) {
    return kDebrisNames[static_cast<int>(d)];
}

const std::string& group_name(OperatorGroup g) {
    return kGroupNames[static_cast<int>(g)];
}

int species_index(OperatorType op) { return static_cast<int>(op); }
int species_index(DebrisType d) { return kNumOperators + static_cast<int>(d); }

const std::string& species_name(int species) {
    if (species < 0 || species >= kNumSpecies) throw std::out_of_range("species_name: bad index");
    if (species < kNumOperators) return kOperatorNames[species];
    return kDebrisNames[species - kNumOperators];
}

bool species_is_operator(int species) {
    if (species < 0 || species >= kNumSpecies) throw std::out_of_range("species index out of range");
    return species < kNumOperators;
}

OperatorType parse_operator(const std::string& token) {
    for (int i = 0; i < kNumOperators; ++i) {
        if (token == kOperatorNames[i]) return static_cast<OperatorType>(i);
    }
    throw InputError("unknown operator label: '" + token + "'");
}

DebrisType parse_debris(const std::string& token) {
    for (int i = 0; i < kNumDebris; ++i) {
        if (token == kDebrisNames[i]) return static_cast<DebrisType>(i);
    }
    throw InputError("unknown debris label: '" + token + "'");
}

int parse_species(const std::string& token) {
    for (int i = 0; i < kNumSpecies; ++i) {
        if (token == species_name(i)) return i;
    }
    throw InputError("unknown species label: '" + token + "'");
}

OperatorGroup parse_group(const std::string& token) {
    for (int i = 0; i < kNumGroups; ++i) {
        if (token == kGroupNames[i]) return static_cast<OperatorGroup>(i);
    }
    throw InputError("unknown operator group label: '" + token + "'");
}

ShellGrid ShellGrid::standard() { return uniform(24, 100.0, 50.0); }

ShellGrid ShellGrid::uniform(int n_shells, double base_alt_km, double width_km) {
    ShellGrid g;
    g.n_shells = n_shells;
    g.alt_lo.resize(n_shells);
    g.alt_hi.resize(n_shells);
    for (int j = 0; j < n_shells; ++j) {
        g.alt_lo[j] = base_alt_km + width_km * j;
        g.alt_hi[j] = base_alt_km + width_km * (j + 1);
    }
    g.validate();
    return g;
}

void ShellGrid::validate() const {
    if (n_shells <= 0) throw InputError("ShellGrid: n_shells must be positive");
    if (static_cast<int>(alt_lo.size()) != n_shells || static_cast<int>(alt_hi.size()) != n_shells)
        throw InputError("ShellGrid: bound arrays do not match n_shells");
    if (earth_radius <= 0.0) throw InputError("ShellGrid: earth_radius must be positive");
    const double width = alt_hi[0] - alt_lo[0];
    if (!(width > 0.0)) throw InputError("ShellGrid: shell width must be positive");
    for (int j = 0; j < n_shells; ++j) {
        if (!(alt_hi[j] > alt_lo[j])) throw InputError("ShellGrid: shells must be ascending");
        if (std::abs((alt_hi[j] - alt_lo[j]) - width) > 1e-9)
            throw InputError("ShellGrid: shells must have equal width");
        if (j > 0 && std::abs(alt_lo[j] - alt_hi[j - 1]) > 1e-9)
            throw InputError("ShellGrid: shells must be contiguous");
    }
}

double shell_midpoint_altitude(const ShellGrid& grid, int j) {
    if (j < 0 || j >= grid.n_shells) throw InputError("shell index out of range");
    return 0.5 * (grid.alt_lo[j] + grid.alt_hi[j]);
}

double spherical_shell_volume(double alt_lo, double alt_hi, double earth_radius) {
    const double r_lo = earth_radius + alt_lo;
    const double r_hi = earth_radius + alt_hi;
    return (4.0 / 3.0) * std::numbers::pi * (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo);
}

double shell_volume(const ShellGrid& grid, int j) {
    if (j < 0 || j >= grid.n_shells) throw InputError("shell index out of range");
    return spherical_shell_volume(grid.alt_lo[j], grid.alt_hi[j], grid.earth_radius);
}

int shell_containing(const ShellGrid& grid, double altitude_km) {
    for (int j = 0; j < grid.n_shells; ++j) {
        if (altitude_km >= grid.alt_lo[j] && altitude_km < grid.alt_hi[j]) return j;
    }
    if (altitude_km == grid.alt_hi[grid.n_shells - 1]) return grid.n_shells - 1;
    std::ostringstream msg;
    msg << "altitude " << altitude_km << " km outside grid ["
        << grid.alt_lo.front() << ", " << grid.alt_hi.back() << "]";
    throw InputError(msg.str());
}

OrbitalState OrbitalState::zero(int year, int n_shells) {
    OrbitalState s;
    s.year = year;
    s.S = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    s.D = Eigen::MatrixXd::Zero(kNumDebris, n_shells);
    return s;
}

double OrbitalState::count(int species, int shell) const {
    if (species < 0 || species >= kNumSpecies) throw std::out_of_range("species index out of range");
    if (species < kNumOperators) return S(species, shell);
    return D(species - kNumOperators, shell);
}

namespace {

void check_matrix(const Eigen::MatrixXd& m, int rows, int cols, const char* label) {
    if (m.rows() != rows || m.cols() != cols) {
        std::ostringstream msg;
        msg << label << ": expected " << rows << "x" << cols << ", got " << m.rows() << "x" << m.cols();
        throw InputError(msg.str());
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream msg;
                msg << label << ": entry (" << i << "," << j << ") = " << v
                    << " must be finite and non-negative";
                throw InputError(msg.str());
            }
        }
    }
}

}  // namespace

void OrbitalState::validate(const ShellGrid& grid) const {
    check_matrix(S, kNumOperators, grid.n_shells, "OrbitalState.S");
    check_matrix(D, kNumDebris, grid.n_shells, "OrbitalState.D");
}

LaunchAllocation LaunchAllocation::zero(int n_shells) {
    LaunchAllocation a;
    a.q = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    return a;
}

void LaunchAllocation::validate(const ShellGrid& grid) const {
    check_matrix(q, kNumOperators, grid.n_shells, "LaunchAllocation.q");
}

PhysicalParams PhysicalParams::zero(int n_shells) {
    PhysicalParams p;
    p.decay_rate = Eigen::MatrixXd::Zero(kNumSpecies, n_shells);
    p.eol_rate = Eigen::VectorXd::Zero(kNumOperators);
    p.pmd_rate = Eigen::VectorXd::Zero(kNumOperators);
    p.rb_per_launch = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    p.mro_per_sat = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    p.mro_per_launch = Eigen::MatrixXd::Zero(kNumOperators, n_shells);
    p.mass_kg = Eigen::VectorXd::Ones(kNumSpecies);
    p.radius_m = Eigen::VectorXd::Ones(kNumSpecies);
    return p;
}

void PhysicalParams::validate(const ShellGrid& grid) const {
    const int n = grid.n_shells;
    check_matrix(decay_rate, kNumSpecies, n, "PhysicalParams.decay_rate");
    check_matrix(rb_per_launch, kNumOperators, n, "PhysicalParams.rb_per_launch");
    check_matrix(mro_per_sat, kNumOperators, n, "PhysicalParams.mro_per_sat");
    check_matrix(mro_per_launch, kNumOperators, n, "PhysicalParams.mro_per_launch");
    if (decay_rate.maxCoeff() > 1.0) throw InputError("PhysicalParams: decay rates must lie in [0,1]");
    if (eol_rate.size() != kNumOperators || pmd_rate.size() != kNumOperators)
        throw InputError("PhysicalParams: operator rate vectors must have one entry per operator");
    for (int i = 0; i < kNumOperators; ++i) {
        if (!std::isfinite(eol_rate[i]) || eol_rate[i] < 0.0 || eol_rate[i] > 1.0)
            throw InputError("PhysicalParams: eol_rate must lie in [0,1]");
        if (!std::isfinite(pmd_rate[i]) || pmd_rate[i] < 0.0 || pmd_rate[i] > 1.0)
            throw InputError("PhysicalParams: pmd_rate must lie in [0,1]");
    }
    if (mass_kg.size() != kNumSpecies || radius_m.size() != kNumSpecies)
        throw InputError("PhysicalParams: mass/radius vectors must have one entry per species");
    if (mass_kg.minCoeff() <= 0.0) throw InputError("PhysicalParams: masses must be positive");
    if (radius_m.minCoeff() <= 0.0) throw InputError("PhysicalParams: radii must be positive");
    if (!(v_rel_km_s > 0.0)) throw InputError("PhysicalParams: v_rel must be positive");
    if (debris_debris_adjust < 0.0 || debris_debris_adjust > 1.0)
        throw InputError("PhysicalParams: debris_debris_adjust must lie in [0,1]");
    if (pmd_target_shell < 0 || pmd_target_shell >= n)
        throw InputError("PhysicalParams: pmd_target_shell out of range");
    if (!(catastrophic_threshold_j_g > 0.0))
        throw InputError("PhysicalParams: catastrophic threshold must be positive");
    if (!(frag_min_size_m > 0.0)) throw InputError("PhysicalParams: frag_min_size must be positive");
}

int PhysicalParams::derive_pmd_target(const Eigen::MatrixXd& decay_rate, double horizon_years) {
    const int ip = species_index(DebrisType::IP);
    int target = 0;
    for (int j = 0; j < decay_rate.cols(); ++j) {
        const double rate = decay_rate(ip, j);
        if (rate > 0.0 && 1.0 / rate < horizon_years) target = j;
    }
    return target;
}

}  // namespace orbdem
