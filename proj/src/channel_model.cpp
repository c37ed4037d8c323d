#include "bdcs/channel_model.hpp"

#include <algorithm>
#include <random>

namespace bdcs {

ArrayConfig::ArrayConfig(int num_antennas, double carrier_freq, double element_spacing)
    : num_antennas_(num_antennas), carrier_freq_(carrier_freq), element_spacing_(element_spacing)
{
    if (num_antennas < 1)
        throw DomainError("ArrayConfig: num_antennas must be >= 1");
    if (!(carrier_freq > 0.0))
        throw DomainError("ArrayConfig: carrier frequency must be positive");
    if (element_spacing_ <= 0.0)
        element_spacing_ = 0.5 * wavelength();
}

namespace {

void check_angle(double angle)
{
    if (!(std::abs(angle) <= 1.0))
        throw DomainError("spatial angle must satisfy |angle| <= 1");
}

} // namespace

CVec steering_far(const ArrayConfig& array, double angle)
{
    check_angle(angle);
    const int n_ant = array.num_antennas();
    const double k = 2.0 * kPi / array.wavelength() * array.element_spacing();
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_ant));
    CVec v(n_ant);
    for (int n = 0; n < n_ant; ++n)
        v[n] = std::polar(amp, -k * array.offset(n) * angle);
    return v;
}

// The cross term enters with a plus sign so that the phase -2pi/lambda (r_n - r) tends to
// the far-field phase -2pi/lambda d delta_n angle as r grows.
CVec steering_near(const ArrayConfig& array, double distance, double angle)
{
    if (!(distance > 0.0))
        throw DomainError("steering_near: distance must be positive");
    check_angle(angle);
    const int n_ant = array.num_antennas();
    const double d = array.element_spacing();
    const double k = 2.0 * kPi / array.wavelength();
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_ant));
    CVec v(n_ant);
    for (int n = 0; n < n_ant; ++n) {
        const double x = array.offset(n) * d;
        const double rn = std::sqrt(distance * distance + x * x + 2.0 * distance * angle * x);
        // rn - r computed without cancellation
        const double diff = (x * x + 2.0 * distance * angle * x) / (rn + distance);
        v[n] = std::polar(amp, -k * diff);
    }
    return v;
}

double rayleigh_distance(const ArrayConfig& array)
{
    const double aperture = array.aperture();
    return 2.0 * aperture * aperture / array.wavelength();
}

ChannelRealization synthesize_channel(const ArrayConfig& array, const std::vector<ClusterSpec>& clusters,
                                      const SubcarrierGrid& grid, std::uint64_t seed)
{
    if (clusters.empty())
        throw DomainError("synthesize_channel: at least one cluster is required");
    if (grid.count < 1)
        throw DomainError("synthesize_channel: subcarrier count must be >= 1");
    if (!(grid.center_freq + grid.offset(0) > 0.0))
        throw DomainError("synthesize_channel: all subcarrier frequencies must be positive");
    for (const auto& c : clusters) {
        if (c.subpath_count < 1)
            throw DomainError("ClusterSpec: subpath_count must be >= 1");
        if (c.angle_spread < 0.0 || c.distance_spread < 0.0 || c.power_decay_rate < 0.0)
            throw DomainError("ClusterSpec: spreads and decay rate must be non-negative");
        if (!(c.center_distance > 0.0))
            throw DomainError("ClusterSpec: center distance must be positive");
        check_angle(c.center_angle);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double min_distance = array.wavelength();

    ChannelRealization out{{}, {}, array};
    for (const auto& c : clusters) {
        for (int l = 0; l < c.subpath_count; ++l) {
            PathParam p;
            p.spatial_angle = std::clamp(c.center_angle + c.angle_spread * unit(rng), -1.0, 1.0);
            p.distance = std::max(c.center_distance + c.distance_spread * unit(rng), min_distance);
            const double re = gauss(rng);
            const double im = gauss(rng);
            p.gain = std::sqrt(std::exp(-c.power_decay_rate * l)) * cdouble(re, im);
            out.paths.push_back(p);
        }
    }

    const int n_ant = array.num_antennas();
    const double scale = std::sqrt(static_cast<double>(n_ant) / static_cast<double>(out.paths.size()));
    std::vector<CVec> atoms;
    atoms.reserve(out.paths.size());
    for (const auto& p : out.paths)
        atoms.push_back(steering_near(array, p.distance, p.spatial_angle));

    out.per_subcarrier.assign(grid.count, CVec::Zero(n_ant));
    for (int k = 0; k < grid.count; ++k) {
        const double f_off = grid.offset(k);
        for (std::size_t l = 0; l < out.paths.size(); ++l) {
            const auto& p = out.paths[l];
            const cdouble rot = std::polar(1.0, -2.0 * kPi * f_off * p.distance / kSpeedOfLight);
            out.per_subcarrier[k] += (scale * p.gain * rot) * atoms[l];
        }
    }
    return out;
}

} // namespace bdcs
