#pragma once

#include "bdcs/channel_model.hpp"
#include "bdcs/partition.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bdcs {

/// Channel-estimation methods understood by the runners.
enum class Method { ls, somp_polar, bsomp_angular, bsomp_polar, complete_bdcs };

const char* method_name(Method m);
Method parse_method(const std::string& name);

/// Per-user scatterer layout: `count` clusters at uniformly random center angles in
/// [-max_angle, max_angle], centered on the user distance.
struct ClusterLayout {
    int count = 6;
    int subpaths = 1;
    double max_angle = 0.8;
    double angle_spread = 0.01;
    double distance_spread_fraction = 0.1;
    double power_decay_rate = 0.0;
};

struct DistanceGrid {
    double min_rayleigh = 0.05;
    double max_rayleigh = 1.2;
    int points = 10;
    bool log_spacing = true;
    std::vector<double> values_m; // explicit distances in meters override the range when non-empty
};

struct PrecodingParams {
    int rx_antennas = 4;
    int streams = 2;
    int rf_chains = 8;
    double inner_distance_rayleigh = 0.1;
    double outer_distance_rayleigh = 1.0;
};

struct ExperimentConfig {
    int num_antennas = 256;
    double carrier_freq = 30e9;
    double element_spacing = 0.0;

    int subcarriers = 4;
    double subcarrier_spacing = 1e6;
    int users = 4;
    ClusterLayout clusters;

    double pilot_fraction = 0.5;
    std::vector<double> snr_db{10.0};
    DistanceGrid distances;
    double snr_sweep_distance_rayleigh = 0.1;

    std::vector<Method> methods{Method::ls, Method::somp_polar, Method::bsomp_angular, Method::bsomp_polar,
                                Method::complete_bdcs};
    int trials = 100;
    std::uint64_t seed = 1;

    int oversampling = 1;
    double beta = 0.95;
    double r_min = 7.5;
    int angular_block_length = 4;
    int polar_block_length = 2;

    int max_atoms = 48;                         // per-method cap on selected atoms
    std::optional<double> residual_tolerance;   // nullopt: matched to the noise level

    double temporal_gain = 0.0;
    double temporal_width = 1.0;
    std::optional<double> decay_floor;

    Routing routing = Routing::by_residual;
    double energy_fraction = 0.95;
    int partition_trials = 100;

    PrecodingParams precoding;
    std::string output;

    ArrayConfig array() const { return ArrayConfig(num_antennas, carrier_freq, element_spacing); }
    int pilot_count() const;
    std::vector<double> distance_values() const;

    /// Throws ConfigError on any inconsistency; called by every runner before computing.
    void validate() const;
};

/// N = 256, 4 users, 6 single-path clusters per user, 4 subcarriers, 100 trials, 10 log-spaced
/// distances over 0.05-1.2 Rayleigh distances, Q = N/2, SNR 10 dB.
ExperimentConfig multiuser_preset();

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

struct CurvePoint {
    double x = 0.0;
    std::string method;
    double mean = 0.0;
    double std_error = 0.0;
    int trials = 0;
};

std::vector<CurvePoint> run_nmse_vs_distance(const ExperimentConfig& cfg);
std::vector<CurvePoint> run_nmse_vs_snr(const ExperimentConfig& cfg);
std::vector<CurvePoint> run_se_vs_snr(const ExperimentConfig& cfg);

/// Sparsity profile over the configured distance grid and its partition boundary. The upper
/// limit comes from the block metrics of the angular measurement matrix.
PartitionResult run_partition(const ExperimentConfig& cfg);

/// Header `x,method,mean_db,stderr_db,trials`.
void write_curve_csv(const std::vector<CurvePoint>& points, std::ostream& os);

} // namespace bdcs
