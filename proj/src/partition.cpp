#include "bdcs/partition.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

namespace bdcs {

SparsityProfile sparsity_profile(const ArrayConfig& array, const Dictionary& angular_dict,
                                 const std::vector<double>& distances, double energy_fraction, int trials,
                                 std::uint64_t seed)
{
    if (distances.empty())
        throw DomainError("sparsity_profile: distance grid is empty");
    if (!(energy_fraction > 0.0 && energy_fraction < 1.0))
        throw DomainError("sparsity_profile: energy fraction must lie in (0, 1)");
    if (trials < 1)
        throw DomainError("sparsity_profile: trials must be >= 1");
    if (angular_dict.rows() != array.num_antennas())
        throw DomainError("sparsity_profile: dictionary does not match the array");
    for (std::size_t i = 0; i < distances.size(); ++i)
        if (!(distances[i] > 0.0) || (i > 0 && !(distances[i] > distances[i - 1])))
            throw DomainError("sparsity_profile: distances must be positive and strictly increasing");

    const BlockPartition& part = angular_dict.partition;
    const int g = angular_dict.cols();
    SparsityProfile out;
    out.distances = distances;
    out.energy_fraction = energy_fraction;
    out.trials = trials;

    std::vector<double> blocks(part.num_blocks());
    for (std::size_t di = 0; di < distances.size(); ++di) {
        std::mt19937_64 rng(derive_seed(seed, di));
        std::uniform_int_distribution<int> pick(0, g - 1);
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double angle = angular_dict.meta[pick(rng)].spatial_angle;
            const CVec h = steering_near(array, distances[di], angle);
            const Eigen::VectorXd energy = (angular_dict.atoms.adjoint() * h).cwiseAbs2();
            for (int b = 0; b < part.num_blocks(); ++b)
                blocks[b] = energy.segment(part[b].start, part[b].length).sum();
            std::sort(blocks.begin(), blocks.end(), std::greater<>());
            const double target = energy_fraction * energy.sum();
            double acc = 0.0;
            int count = 0;
            while (count < part.num_blocks()) {
                acc += blocks[count++];
                if (acc >= target)
                    break;
            }
            sum += count;
        }
        out.block_counts.push_back(sum / trials);
    }
    return out;
}

int sparsity_upper_limit(const DictionaryMetrics& metrics, int block_length, int cap)
{
    if (block_length < 1)
        throw ConfigError("sparsity_upper_limit: block length must be >= 1");
    const double mu_b = metrics.block_coherence;
    if (!(mu_b > 0.0))
        return cap;
    const double len = block_length;
    const double bound = 0.5 * (1.0 / mu_b + len - (len - 1.0) * metrics.sub_coherence / mu_b);
    if (bound <= 0.0)
        return 0;
    // largest integer k with k * len < bound
    int k = static_cast<int>(std::ceil(bound / len)) - 1;
    while (k > 0 && !(k * len < bound))
        --k;
    while ((k + 1) * len < bound)
        ++k;
    return std::clamp(k, 0, cap);
}

PartitionResult partition_boundary(const SparsityProfile& profile, int upper_limit)
{
    PartitionResult out;
    out.upper_limit = upper_limit;
    out.profile = profile;
    const int n = static_cast<int>(profile.block_counts.size());
    int first_ok = n;
    for (int i = n - 1; i >= 0; --i) {
        if (profile.block_counts[i] > upper_limit)
            break;
        first_ok = i;
    }
    if (first_ok == n)
        out.boundary = std::numeric_limits<double>::infinity();
    else if (first_ok == 0)
        out.boundary = 0.0;
    else
        out.boundary = profile.distances[first_ok];
    return out;
}

namespace {

int atom_count(const RecoveryResult& r)
{
    int n = 0;
    for (int l : r.block_lengths)
        n += l;
    return n;
}

// Residual after the last iteration whose cumulative atom count does not exceed `atoms`.
double residual_at_atoms(const RecoveryResult& r, int atoms)
{
    double res = r.residual_history.front();
    int acc = 0;
    for (std::size_t i = 0; i < r.block_lengths.size(); ++i) {
        acc += r.block_lengths[i];
        if (acc > atoms)
            break;
        res = r.residual_history[i + 1];
    }
    return res;
}

} // namespace

bool prefer_polar(const RecoveryResult& angular, const RecoveryResult& polar)
{
    // Both runs usually stop at the noise-matched tolerance, where their final residuals
    // are indistinguishable; comparing at a common atom budget keeps the choice informative.
    const int budget = std::min(atom_count(angular), atom_count(polar));
    return residual_at_atoms(polar, budget) < residual_at_atoms(angular, budget);
}

RecoveryResult complete_bdcs(const Observation& obs, const DomainSetup& angular, const DomainSetup& polar,
                             const PartitionResult& partition, Routing routing, std::optional<double> distance,
                             const SideInformation* si)
{
    if (!angular.phi || !polar.phi)
        throw ConfigError("complete_bdcs: both domain setups are required");
    if (angular.phi->pilot && polar.phi->pilot && angular.phi->pilot != polar.phi->pilot &&
        angular.phi->pilot->entries != polar.phi->pilot->entries)
        throw ConfigError("complete_bdcs: measurement matrices must share the pilot matrix");

    if (routing == Routing::by_distance) {
        if (!distance)
            throw ConfigError("complete_bdcs: by_distance routing needs a distance");
        if (*distance < partition.boundary)
            return bsomp(*polar.phi, obs, polar.cfg, si);
        return bsomp(*angular.phi, obs, angular.cfg, si);
    }
    RecoveryResult a = bsomp(*angular.phi, obs, angular.cfg, si);
    RecoveryResult p = bsomp(*polar.phi, obs, polar.cfg, si);
    return prefer_polar(a, p) ? p : a;
}

void write_profile_csv(const PartitionResult& result, std::ostream& os)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "# energy_fraction=%.6g trials=%d upper_limit=%d boundary=%.10g\n",
                  result.profile.energy_fraction, result.profile.trials, result.upper_limit, result.boundary);
    os << buf << "distance,mean_blocks\n";
    for (std::size_t i = 0; i < result.profile.distances.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", result.profile.distances[i], result.profile.block_counts[i]);
        os << buf;
    }
}

} // namespace bdcs
