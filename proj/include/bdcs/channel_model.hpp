#pragma once

#include "bdcs/common.hpp"

#include <cstdint>
#include <vector>

namespace bdcs {

/// Uniform linear array. Element offsets are centered: delta_n = n - (N-1)/2.
class ArrayConfig {
public:
    /// element_spacing <= 0 selects half a carrier wavelength.
    ArrayConfig(int num_antennas, double carrier_freq, double element_spacing = 0.0);

    int num_antennas() const { return num_antennas_; }
    double carrier_freq() const { return carrier_freq_; }
    double element_spacing() const { return element_spacing_; }
    double wavelength() const { return kSpeedOfLight / carrier_freq_; }
    double aperture() const { return (num_antennas_ - 1) * element_spacing_; }
    double offset(int n) const { return n - 0.5 * (num_antennas_ - 1); }

private:
    int num_antennas_;
    double carrier_freq_;
    double element_spacing_;
};

struct PathParam {
    double spatial_angle = 0.0; // sin of the physical angle
    double distance = 1.0;      // meters
    cdouble gain{1.0, 0.0};     // base gain at the center subcarrier
};

struct ClusterSpec {
    double center_angle = 0.0;
    double center_distance = 10.0;
    double angle_spread = 0.0;
    double distance_spread = 0.0;
    int subpath_count = 1;
    double power_decay_rate = 0.0; // subpath l carries power exp(-rate * l)
};

struct SubcarrierGrid {
    int count = 1;
    double center_freq = 30e9;
    double spacing = 0.0;

    /// Frequency offset of subcarrier k from the center.
    double offset(int k) const { return (k - 0.5 * (count - 1)) * spacing; }
};

struct ChannelRealization {
    std::vector<CVec> per_subcarrier;
    std::vector<PathParam> paths;
    ArrayConfig array;
};

CVec steering_far(const ArrayConfig& array, double angle);
CVec steering_near(const ArrayConfig& array, double distance, double angle);

/// 2 D^2 / lambda.
double rayleigh_distance(const ArrayConfig& array);

/// Clustered spherical-wave channel on K subcarriers. Steering vectors are shared by all
/// subcarriers; subcarrier k rotates each path gain by exp(-j 2 pi f_k r / c), f_k taken
/// relative to the grid center.
ChannelRealization synthesize_channel(const ArrayConfig& array, const std::vector<ClusterSpec>& clusters,
                                      const SubcarrierGrid& grid, std::uint64_t seed);

} // namespace bdcs
