#pragma once

#include "bdcs/dictionary.hpp"
#include "bdcs/recovery.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

namespace bdcs {

/// Mean number of angular blocks needed to hold a fraction `energy_fraction` of a single
/// near-field path's energy, per distance.
struct SparsityProfile {
    std::vector<double> distances;
    std::vector<double> block_counts;
    double energy_fraction = 0.95;
    int trials = 0;
};

/// Boundary r*: distances >= r* are the outer (angular) region. 0 means everything is
/// outer, +inf means everything is inner.
struct PartitionResult {
    double boundary = 0.0;
    int upper_limit = 0;
    SparsityProfile profile;
};

/// Paths are drawn at uniformly random angles of the dictionary grid and projected as
/// |A^H h|^2; per trial the smallest number of highest-energy blocks reaching the fraction is
/// recorded and averaged.
SparsityProfile sparsity_profile(const ArrayConfig& array, const Dictionary& angular_dict,
                                 const std::vector<double>& distances, double energy_fraction, int trials,
                                 std::uint64_t seed);

/// Largest k with k L < (1/mu_B + L - (L - 1) nu / mu_B) / 2, or `cap` when mu_B == 0.
int sparsity_upper_limit(const DictionaryMetrics& metrics, int block_length, int cap = 1 << 20);

PartitionResult partition_boundary(const SparsityProfile& profile, int upper_limit);

/// One recovery domain: the measurement matrix plus its recovery settings.
struct DomainSetup {
    const MeasurementMatrix* phi = nullptr;
    RecoveryConfig cfg;
};

enum class Routing { by_distance, by_residual };

/// Inner region (distance < r*) goes to the polar setup, the rest to the angular one. In
/// by_residual mode both run and prefer_polar picks the result.
RecoveryResult complete_bdcs(const Observation& obs, const DomainSetup& angular, const DomainSetup& polar,
                             const PartitionResult& partition, Routing routing,
                             std::optional<double> distance = std::nullopt, const SideInformation* si = nullptr);

/// by_residual choice between two finished runs; true selects the polar result. Relative
/// residuals are compared after the same number of atoms (the smaller of the two final
/// supports); ties go to angular.
bool prefer_polar(const RecoveryResult& angular, const RecoveryResult& polar);

void write_profile_csv(const PartitionResult& result, std::ostream& os);

} // namespace bdcs
