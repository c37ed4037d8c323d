#pragma once

#include "bdcs/dictionary.hpp"
#include "bdcs/sensing.hpp"

#include <optional>
#include <vector>

namespace bdcs {

/// Block-dominant side information.
///
/// Temporal prior: block scores are multiplied by 1 + gain * exp(-dist / width), where dist
/// is the block-index distance to the nearest block of previous_support. gain = 0 (or an
/// empty previous_support) leaves the scores untouched.
///
/// Decay prior: a newly selected block whose refitted coefficient energy falls below
/// decay_floor times the energy of the first selected block is discarded and the pursuit
/// stops. std::nullopt disables the rule.
struct SideInformation {
    std::vector<int> previous_support;
    double temporal_gain = 1.0;
    double temporal_width = 1.0;
    std::optional<double> decay_floor = 1e-2;
};

struct RecoveryConfig {
    int max_blocks = 8;
    double residual_tolerance = 0.0; // relative residual norm
    /// Overrides the dictionary's own partition when set.
    std::optional<BlockPartition> partition;
};

struct RecoveryResult {
    std::vector<int> support_blocks;       // in selection order
    std::vector<CVec> coefficients;        // K vectors of length G, dictionary units
    std::vector<CVec> reconstructed;       // K vectors of length N
    std::vector<double> residual_history;  // entry 0 is the starting value 1.0
    std::vector<int> block_lengths;        // atoms per selected block

    double final_residual() const { return residual_history.back(); }
};

/// Minimum-norm least squares pinv(P) y_k per subcarrier.
std::vector<CVec> ls_estimate(const PilotMatrix& pilot, const Observation& obs);
/// Same with a precomputed pseudo-inverse.
std::vector<CVec> ls_estimate(const CMat& pilot_pinv, const Observation& obs);
CMat pseudo_inverse(const CMat& m);

/// Block simultaneous OMP over all subcarriers of obs (joint block scores summed over K).
/// Selected blocks are refitted jointly by least squares each iteration. Stops on
/// max_blocks, relative residual <= tolerance, the decay rule, or when no further block fits
/// within the pilot count.
RecoveryResult bsomp(const MeasurementMatrix& phi, const Observation& obs, const RecoveryConfig& cfg,
                     const SideInformation* si = nullptr);

/// h_k = A x_k.
std::vector<CVec> reconstruct(const Dictionary& dict, const RecoveryResult& result);

inline constexpr double kNmseFloorDb = -300.0;

/// 10 log10(sum_k |est_k - h_k|^2 / sum_k |h_k|^2), floored at kNmseFloorDb.
double nmse_db(const std::vector<CVec>& estimate, const std::vector<CVec>& truth);

} // namespace bdcs
