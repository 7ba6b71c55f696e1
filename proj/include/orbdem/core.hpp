#ifndef ORBDEM_CORE_HPP
#define ORBDEM_CORE_HPP

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Shared vocabulary for the orbital-demand model: the altitude shell grid,
// the object species taxonomy, state containers and physical parameter
// tables consumed by the debris propagator, the demand models and the
// scenario engine.
namespace orbdem {

// Input/validation failures (bad files, schema mismatches, precondition
// violations on user-supplied data). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kMuEarth = 398600.4418;  // km^3/s^2
constexpr double kSecondsPerYear = 365.25 * 86400.0;

enum class OperatorType : int {
    Commercial = 0,
    CivilGovernment = 1,
    Defense = 2,
    Amateur = 3,
    Constellation = 4,
};

enum class DebrisType : int {
    RB = 0,   // rocket bodies
    MRO = 1,  // mission-related objects
    IP = 2,   // intact inactive payloads
    COF = 3,  // fragments and other debris
};

// Operator grouping used by the demand models: amateur and constellation
// operators collapse into a single "other" category.
enum class OperatorGroup : int {
    Commercial = 0,
    Civil = 1,
    Defense = 2,
    Other = 3,
};

constexpr int kNumOperators = 5;
constexpr int kNumDebris = 4;
constexpr int kNumSpecies = kNumOperators + kNumDebris;
constexpr int kNumGroups = 4;
constexpr int kNumModeledGroups = 3;  // commercial, civil, defense

OperatorGroup group_of(OperatorType op);

const std::string& operator_name(OperatorType op);
const std::string& debris_name(DebrisType d);
const std::string& group_name(OperatorGroup g);

// Unified species index: operators first (0..4), then debris (5..8).
int species_index(OperatorType op);
int species_index(DebrisType d);
const std::string& species_name(int species);
bool species_is_operator(int species);

// Parses the lowercase tokens used in all CSV schemas; throws InputError on
// unknown labels.
OperatorType parse_operator(const std::string& token);
DebrisType parse_debris(const std::string& token);
int parse_species(const std::string& token);
OperatorGroup parse_group(const std::string& token);

// Contiguous grid of equal-width spherical altitude shells. The default
// covers 100-1300 km with 24 shells of 50 km each; shell j+1 lies directly
// above shell j.
struct ShellGrid {
    int n_shells = 0;
    std::vector<double> alt_lo;  // km
    std::vector<double> alt_hi;  // km
    double earth_radius = kEarthRadiusKm;

    static ShellGrid standard();
    static ShellGrid uniform(int n_shells, double base_alt_km, double width_km);

    void validate() const;
};

double shell_midpoint_altitude(const ShellGrid& grid, int j);

// Volume of the spherical shell between two altitudes, in km^3.
double spherical_shell_volume(double alt_lo, double alt_hi, double earth_radius);
double shell_volume(const ShellGrid& grid, int j);

// Index of the shell containing the given altitude; throws if outside the grid.
int shell_containing(const ShellGrid& grid, double altitude_km);

// Population snapshot: active satellites S (operator x shell) and debris
// D (debris type x shell). Entries are continuous non-negative reals; the
// governing equations are rate equations and projected launch counts are
// conditional means.
struct OrbitalState {
    int year = 0;
    Eigen::MatrixXd S;  // kNumOperators x n_shells
    Eigen::MatrixXd D;  // kNumDebris x n_shells

    static OrbitalState zero(int year, int n_shells);

    int n_shells() const { return static_cast<int>(S.cols()); }
    double count(int species, int shell) const;
    double total_satellites() const { return S.sum(); }
    double total_debris() const { return D.sum(); }
    double total_objects() const { return S.sum() + D.sum(); }

    void validate(const ShellGrid& grid) const;
};

// Satellites launched in one year, per operator and target shell.
struct LaunchAllocation {
    Eigen::MatrixXd q;  // kNumOperators x n_shells

    static LaunchAllocation zero(int n_shells);
    void validate(const ShellGrid& grid) const;
};

// Physical parameter tables for the debris environment model. Decay rates
// are ingested data, not computed from an atmosphere model.
struct PhysicalParams {
    Eigen::MatrixXd decay_rate;       // kNumSpecies x n_shells, fraction/year
    Eigen::VectorXd eol_rate;         // per operator, fraction/year
    Eigen::VectorXd pmd_rate;         // per operator, fraction in [0,1]
    Eigen::MatrixXd rb_per_launch;    // kNumOperators x n_shells, default 0
    Eigen::MatrixXd mro_per_sat;      // kNumOperators x n_shells, default 0
    Eigen::MatrixXd mro_per_launch;   // kNumOperators x n_shells, default 0
    Eigen::VectorXd mass_kg;          // per species
    Eigen::VectorXd radius_m;         // per species
    double v_rel_km_s = 10.0;
    double debris_debris_adjust = 1e-4;
    bool sat_avoidance = true;
    int pmd_target_shell = 8;         // 500-550 km shell on the standard grid
    double catastrophic_threshold_j_g = 40.0;
    double frag_min_size_m = 0.1;

    static PhysicalParams zero(int n_shells);

    double decay(int species, int shell) const { return decay_rate(species, shell); }
    void validate(const ShellGrid& grid) const;

    // Highest shell whose IP decay time is under the given horizon; used to
    // derive the disposal target shell from the ingested decay table.
    static int derive_pmd_target(const Eigen::MatrixXd& decay_rate, double horizon_years = 25.0);
};

}  // namespace orbdem

#endif  // ORBDEM_CORE_HPP
