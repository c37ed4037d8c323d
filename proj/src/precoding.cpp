#include "bdcs/precoding.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <random>

namespace bdcs {

MatrixChannel synthesize_mimo_channel(const ArrayConfig& tx, int n_rx, const std::vector<ClusterSpec>& clusters,
                                      std::uint64_t seed)
{
    if (n_rx < 1)
        throw DomainError("synthesize_mimo_channel: n_rx must be >= 1");
    const SubcarrierGrid single{1, tx.carrier_freq(), 0.0};
    const ChannelRealization paths = synthesize_channel(tx, clusters, single, seed);
    const ArrayConfig rx_array(n_rx, tx.carrier_freq());

    std::mt19937_64 rng(derive_seed(seed, 0x5258));
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    const double scale = std::sqrt(static_cast<double>(tx.num_antennas()) * n_rx / paths.paths.size());

    MatrixChannel out{CMat::Zero(n_rx, tx.num_antennas())};
    for (const auto& p : paths.paths) {
        const CVec ar = steering_far(rx_array, angle(rng));
        const CVec bt = steering_near(tx, p.distance, p.spatial_angle);
        out.h += (scale * p.gain) * ar * bt.adjoint();
    }
    return out;
}

CMat optimal_precoder(const MatrixChannel& channel, int streams)
{
    if (streams < 1 || streams > std::min(channel.rx(), channel.tx()))
        throw DomainError("optimal_precoder: stream count must lie in [1, min(N_r, N_t)]");
    Eigen::JacobiSVD<CMat> svd(channel.h, Eigen::ComputeFullV);
    return svd.matrixV().leftCols(streams);
}

namespace {

CVec phase_project(const CVec& atom)
{
    const double amp = 1.0 / std::sqrt(static_cast<double>(atom.size()));
    CVec out(atom.size());
    for (Eigen::Index n = 0; n < atom.size(); ++n) {
        const double m = std::abs(atom[n]);
        out[n] = m > 0.0 ? atom[n] * (amp / m) : cdouble(amp, 0.0);
    }
    return out;
}

} // namespace

PrecoderPair block_sparse_precoding(const CMat& f_opt, const Dictionary& dict, int rf_chains,
                                    const RecoveryConfig& cfg)
{
    const BlockPartition& part = cfg.partition ? *cfg.partition : dict.partition;
    if (dict.rows() != f_opt.rows())
        throw DomainError("block_sparse_precoding: atom length does not match N_t");
    if (part.width() != dict.cols() || part.num_blocks() == 0)
        throw ConfigError("block_sparse_precoding: partition does not cover the dictionary");
    const int streams = static_cast<int>(f_opt.cols());
    if (rf_chains < streams || rf_chains > f_opt.rows())
        throw ConfigError("block_sparse_precoding: need N_s <= N_RF <= N_t");
    const int len = part.uniform_length();
    if (len > 0 && rf_chains % len != 0)
        throw ConfigError("block_sparse_precoding: block length must divide N_RF");

    const double ref = f_opt.norm();
    PrecoderPair out;
    out.rf.resize(f_opt.rows(), 0);
    out.baseband = CMat::Zero(0, streams);
    out.residual_history.push_back(1.0);

    std::vector<bool> taken(part.num_blocks(), false);
    CMat residual = f_opt;
    while (static_cast<int>(out.support_blocks.size()) < cfg.max_blocks) {
        const Eigen::VectorXd energy = (dict.atoms.adjoint() * residual).rowwise().squaredNorm();
        int best = -1;
        double best_score = 0.0;
        for (int b = 0; b < part.num_blocks(); ++b) {
            if (taken[b] || out.chains() + part[b].length > rf_chains)
                continue;
            const double s = energy.segment(part[b].start, part[b].length).sum();
            if (s > best_score) {
                best_score = s;
                best = b;
            }
        }
        if (best < 0)
            break;

        taken[best] = true;
        out.support_blocks.push_back(best);
        const int old = out.chains();
        out.rf.conservativeResize(Eigen::NoChange, old + part[best].length);
        for (int i = 0; i < part[best].length; ++i)
            out.rf.col(old + i) = phase_project(dict.atoms.col(part[best].start + i));

        out.baseband = out.rf.completeOrthogonalDecomposition().solve(f_opt);
        residual = f_opt - out.rf * out.baseband;
        const double rel = residual.norm() / ref;
        out.residual_history.push_back(rel);
        if (rel <= cfg.residual_tolerance || out.chains() == rf_chains)
            break;
    }

    const double power = (out.rf * out.baseband).norm();
    if (power > 0.0)
        out.baseband *= std::sqrt(static_cast<double>(streams)) / power;
    return out;
}

SEReport spectral_efficiency(const MatrixChannel& channel, const CMat& precoder, double snr_db, std::string tag)
{
    if (precoder.rows() != channel.tx())
        throw DomainError("spectral_efficiency: precoder rows must equal N_t");
    const int streams = static_cast<int>(precoder.cols());
    const int n_r = channel.rx();
    const CMat hf = channel.h * precoder;
    const double rho = db_to_linear(snr_db) / std::max(streams, 1);
    const CMat m = CMat::Identity(n_r, n_r) + rho * hf * hf.adjoint();
    Eigen::LLT<CMat> llt(m);
    double logdet = 0.0;
    for (int i = 0; i < n_r; ++i)
        logdet += 2.0 * std::log2(std::real(llt.matrixL()(i, i)));
    return SEReport{std::max(logdet, 0.0), snr_db, std::move(tag)};
}

} // namespace bdcs
