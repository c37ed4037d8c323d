#pragma once

#include "bdcs/channel_model.hpp"
#include "bdcs/dictionary.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace bdcs {

/// Q x N unit-modulus pilot (analog combining) matrix; entries exp(j phi) / sqrt(Q).
struct PilotMatrix {
    CMat entries;

    int pilot_count() const { return static_cast<int>(entries.rows()); }
    int width() const { return static_cast<int>(entries.cols()); }
};

struct Observation {
    std::vector<CVec> per_subcarrier;
    double noise_variance = 0.0;
    double snr_db = std::numeric_limits<double>::infinity();
};

/// Phi = P A, optionally with unit-norm columns. column_scales holds the original column
/// norms (all ones when not renormalized); a coefficient x~ on the normalized column maps to
/// x~ / scale on the dictionary atom.
struct MeasurementMatrix {
    CMat entries;
    Eigen::VectorXd column_scales;
    bool renormalized = false;
    std::shared_ptr<const Dictionary> dictionary;
    std::shared_ptr<const PilotMatrix> pilot;

    const BlockPartition& partition() const { return dictionary->partition; }
};

PilotMatrix make_pilot_matrix(int pilot_count, int num_antennas, std::uint64_t seed);

/// y_k = P h_k + n_k. sigma^2 is the mean received pilot power over all subcarriers and
/// pilots divided by the linear SNR; an infinite snr_db gives a noiseless observation.
Observation observe(const PilotMatrix& pilot, const std::vector<CVec>& channels, double snr_db, std::uint64_t seed);

/// Same model with an explicit noise variance (snr_db left at +inf).
Observation observe_with_noise(const PilotMatrix& pilot, const std::vector<CVec>& channels, double noise_variance,
                               std::uint64_t seed);

inline Observation observe(const PilotMatrix& pilot, const ChannelRealization& channel, double snr_db,
                           std::uint64_t seed)
{
    return observe(pilot, channel.per_subcarrier, snr_db, seed);
}

MeasurementMatrix measurement_matrix(std::shared_ptr<const PilotMatrix> pilot,
                                     std::shared_ptr<const Dictionary> dict, bool renormalize = true);

} // namespace bdcs
