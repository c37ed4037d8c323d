#include "bdcs/sensing.hpp"

#include <random>

namespace bdcs {

PilotMatrix make_pilot_matrix(int pilot_count, int num_antennas, std::uint64_t seed)
{
    if (pilot_count < 1)
        throw DomainError("make_pilot_matrix: pilot count must be >= 1");
    if (num_antennas < 1)
        throw DomainError("make_pilot_matrix: antenna count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const double amp = 1.0 / std::sqrt(static_cast<double>(pilot_count));
    PilotMatrix p;
    p.entries.resize(pilot_count, num_antennas);
    for (int q = 0; q < pilot_count; ++q)
        for (int n = 0; n < num_antennas; ++n)
            p.entries(q, n) = std::polar(amp, phase(rng));
    return p;
}

Observation observe_with_noise(const PilotMatrix& pilot, const std::vector<CVec>& channels, double noise_variance,
                               std::uint64_t seed)
{
    if (!(noise_variance >= 0.0))
        throw DomainError("observe: noise variance must be non-negative");
    Observation obs;
    for (const auto& h : channels) {
        if (h.size() != pilot.width())
            throw DomainError("observe: channel length does not match pilot width");
        obs.per_subcarrier.push_back(pilot.entries * h);
    }
    obs.noise_variance = noise_variance;
    if (noise_variance == 0.0)
        return obs;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance / 2.0));
    for (auto& y : obs.per_subcarrier)
        for (Eigen::Index q = 0; q < y.size(); ++q) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            y[q] += cdouble(re, im);
        }
    return obs;
}

Observation observe(const PilotMatrix& pilot, const std::vector<CVec>& channels, double snr_db, std::uint64_t seed)
{
    double signal_power = 0.0;
    for (const auto& h : channels) {
        if (h.size() != pilot.width())
            throw DomainError("observe: channel length does not match pilot width");
        signal_power += (pilot.entries * h).squaredNorm();
    }
    double sigma2 = 0.0;
    if (!channels.empty() && !(std::isinf(snr_db) && snr_db > 0.0)) {
        signal_power /= static_cast<double>(channels.size()) * pilot.pilot_count();
        sigma2 = signal_power / db_to_linear(snr_db);
    }
    Observation obs = observe_with_noise(pilot, channels, sigma2, seed);
    obs.snr_db = snr_db;
    return obs;
}

MeasurementMatrix measurement_matrix(std::shared_ptr<const PilotMatrix> pilot,
                                     std::shared_ptr<const Dictionary> dict, bool renormalize)
{
    if (!pilot || !dict)
        throw DomainError("measurement_matrix: null pilot or dictionary");
    if (pilot->width() != dict->rows())
        throw DomainError("measurement_matrix: pilot width does not match dictionary atom length");
    MeasurementMatrix mm;
    mm.entries = pilot->entries * dict->atoms;
    mm.column_scales = Eigen::VectorXd::Ones(mm.entries.cols());
    mm.renormalized = renormalize;
    if (renormalize) {
        for (Eigen::Index j = 0; j < mm.entries.cols(); ++j) {
            const double s = mm.entries.col(j).norm();
            if (s > 0.0) {
                mm.entries.col(j) /= s;
                mm.column_scales[j] = s;
            }
        }
    }
    mm.dictionary = std::move(dict);
    mm.pilot = std::move(pilot);
    return mm;
}

} // namespace bdcs
