#pragma once

#include "bdcs/channel_model.hpp"
#include "bdcs/dictionary.hpp"
#include "bdcs/recovery.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bdcs {

/// N_r x N_t narrowband channel.
struct MatrixChannel {
    CMat h;

    int rx() const { return static_cast<int>(h.rows()); }
    int tx() const { return static_cast<int>(h.cols()); }
};

struct PrecoderPair {
    CMat rf;       // N_t x N_RF, entries of modulus 1/sqrt(N_t)
    CMat baseband; // N_RF x N_s
    std::vector<int> support_blocks;
    std::vector<double> residual_history; // ||F_opt - F_rf F_bb||_F / ||F_opt||_F before rescaling

    int streams() const { return static_cast<int>(baseband.cols()); }
    int chains() const { return static_cast<int>(rf.cols()); }
    CMat combined() const { return rf * baseband; }
};

struct SEReport {
    double spectral_efficiency = 0.0; // bits/s/Hz
    double snr_db = 0.0;
    std::string precoder;
};

/// Near-field MIMO channel: transmit side uses spherical-wave steering vectors of `tx`,
/// receive side a half-wavelength far-field ULA of n_rx elements at uniformly random angles.
/// H = sqrt(N_t N_r / L) sum_l g_l a_r(l) b_t(l)^H.
MatrixChannel synthesize_mimo_channel(const ArrayConfig& tx, int n_rx, const std::vector<ClusterSpec>& clusters,
                                      std::uint64_t seed);

/// Right singular vectors of the N_s largest singular values.
CMat optimal_precoder(const MatrixChannel& channel, int streams);

/// Greedy block selection of dictionary atoms against the residual F_opt - F_rf F_bb. Atoms
/// are phase-projected to constant modulus before entering F_rf, F_bb is the least-squares
/// fit, and F_bb is finally rescaled so that ||F_rf F_bb||_F^2 = N_s.
PrecoderPair block_sparse_precoding(const CMat& f_opt, const Dictionary& dict, int rf_chains,
                                    const RecoveryConfig& cfg);

/// log2 det(I + rho / N_s H F F^H H^H).
SEReport spectral_efficiency(const MatrixChannel& channel, const CMat& precoder, double snr_db,
                             std::string tag = {});

} // namespace bdcs
