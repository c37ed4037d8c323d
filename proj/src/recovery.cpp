#include "bdcs/recovery.hpp"

#include <algorithm>
#include <cstdio>

namespace bdcs {

CMat pseudo_inverse(const CMat& m)
{
    return m.completeOrthogonalDecomposition().pseudoInverse();
}

std::vector<CVec> ls_estimate(const CMat& pilot_pinv, const Observation& obs)
{
    std::vector<CVec> out;
    out.reserve(obs.per_subcarrier.size());
    for (const auto& y : obs.per_subcarrier) {
        if (y.size() != pilot_pinv.cols())
            throw DomainError("ls_estimate: observation length does not match pilot count");
        out.push_back(pilot_pinv * y);
    }
    return out;
}

std::vector<CVec> ls_estimate(const PilotMatrix& pilot, const Observation& obs)
{
    return ls_estimate(pseudo_inverse(pilot.entries), obs);
}

namespace {

std::vector<double> temporal_weights(const SideInformation& si, int num_blocks)
{
    std::vector<double> w(num_blocks, 1.0);
    if (si.temporal_gain == 0.0 || si.previous_support.empty())
        return w;
    if (!(si.temporal_width > 0.0))
        throw ConfigError("SideInformation: temporal width must be positive");
    for (int b : si.previous_support)
        if (b < 0 || b >= num_blocks)
            throw ConfigError("SideInformation: previous support block out of range");
    for (int b = 0; b < num_blocks; ++b) {
        int dist = num_blocks;
        for (int p : si.previous_support)
            dist = std::min(dist, std::abs(b - p));
        w[b] = 1.0 + si.temporal_gain * std::exp(-dist / si.temporal_width);
    }
    return w;
}

} // namespace

RecoveryResult bsomp(const MeasurementMatrix& phi, const Observation& obs, const RecoveryConfig& cfg,
                     const SideInformation* si)
{
    const BlockPartition& part = cfg.partition ? *cfg.partition : phi.partition();
    if (part.num_blocks() == 0)
        throw ConfigError("bsomp: empty block partition");
    if (part.width() != phi.entries.cols())
        throw ConfigError("bsomp: partition does not cover the measurement matrix");
    if (cfg.max_blocks < 1)
        throw ConfigError("bsomp: max_blocks must be >= 1");

    const int q = static_cast<int>(phi.entries.rows());
    const int g = static_cast<int>(phi.entries.cols());
    const int k_sub = static_cast<int>(obs.per_subcarrier.size());
    if (k_sub == 0)
        throw DomainError("bsomp: observation has no subcarriers");

    CMat y(q, k_sub);
    for (int k = 0; k < k_sub; ++k) {
        if (obs.per_subcarrier[k].size() != q)
            throw DomainError("bsomp: observation length does not match measurement rows");
        y.col(k) = obs.per_subcarrier[k];
    }

    RecoveryResult res;
    res.coefficients.assign(k_sub, CVec::Zero(g));
    res.residual_history.push_back(1.0);
    const double y_energy = y.squaredNorm();
    if (y_energy == 0.0) {
        res.reconstructed.assign(k_sub, CVec::Zero(phi.dictionary->rows()));
        return res;
    }

    const int nb = part.num_blocks();
    const std::vector<double> weights = si ? temporal_weights(*si, nb) : std::vector<double>(nb, 1.0);
    const bool decay = si && si->decay_floor && *si->decay_floor > 0.0;

    std::vector<bool> taken(nb, false);
    std::vector<int> columns;
    CMat residual = y;
    CMat coef; // |columns| x K, normalized-column units
    Eigen::VectorXd col_energy(g);

    auto block_energy = [&](const CMat& x, int offset, int len) {
        double e = 0.0;
        for (int i = 0; i < len; ++i) {
            const int j = columns[offset + i];
            e += x.row(offset + i).squaredNorm() / (phi.column_scales[j] * phi.column_scales[j]);
        }
        return e;
    };

    while (static_cast<int>(res.support_blocks.size()) < cfg.max_blocks) {
        const CMat corr = phi.entries.adjoint() * residual;
        col_energy = corr.rowwise().squaredNorm();

        int best = -1;
        double best_score = 0.0;
        for (int b = 0; b < nb; ++b) {
            if (taken[b])
                continue;
            double s = 0.0;
            for (int i = 0; i < part[b].length; ++i)
                s += col_energy[part[b].start + i];
            s *= weights[b];
            if (s > best_score) {
                best_score = s;
                best = b;
            }
        }
        if (best < 0)
            break;
        if (static_cast<int>(columns.size()) + part[best].length > q) {
            std::fprintf(stderr, "warning: bsomp support would exceed the pilot count; stopping\n");
            break;
        }

        const int offset = static_cast<int>(columns.size());
        for (int i = 0; i < part[best].length; ++i)
            columns.push_back(part[best].start + i);

        CMat sub(q, columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i)
            sub.col(i) = phi.entries.col(columns[i]);
        CMat x = sub.completeOrthogonalDecomposition().solve(y);

        if (decay && !res.support_blocks.empty()) {
            const int first_len = part[res.support_blocks.front()].length;
            const double first = block_energy(x, 0, first_len);
            const double fresh = block_energy(x, offset, part[best].length);
            if (fresh < *si->decay_floor * first) {
                columns.resize(offset);
                break;
            }
        }

        taken[best] = true;
        res.support_blocks.push_back(best);
        res.block_lengths.push_back(part[best].length);
        coef = std::move(x);
        residual = y - sub * coef;
        const double rel = std::sqrt(residual.squaredNorm() / y_energy);
        res.residual_history.push_back(rel);
        if (rel <= cfg.residual_tolerance)
            break;
    }

    for (std::size_t i = 0; i < columns.size(); ++i) {
        const int j = columns[i];
        for (int k = 0; k < k_sub; ++k)
            res.coefficients[k][j] = coef(i, k) / phi.column_scales[j];
    }
    res.reconstructed = reconstruct(*phi.dictionary, res);
    return res;
}

std::vector<CVec> reconstruct(const Dictionary& dict, const RecoveryResult& result)
{
    std::vector<CVec> out;
    out.reserve(result.coefficients.size());
    for (const auto& x : result.coefficients) {
        if (x.size() != dict.cols())
            throw DomainError("reconstruct: coefficient length does not match dictionary width");
        out.push_back(dict.atoms * x);
    }
    return out;
}

double nmse_db(const std::vector<CVec>& estimate, const std::vector<CVec>& truth)
{
    if (estimate.size() != truth.size())
        throw DomainError("nmse: subcarrier counts differ");
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (estimate[k].size() != truth[k].size())
            throw DomainError("nmse: vector lengths differ");
        err += (estimate[k] - truth[k]).squaredNorm();
        ref += truth[k].squaredNorm();
    }
    if (ref == 0.0)
        throw DomainError("nmse: reference channel is all zero");
    if (err == 0.0)
        return kNmseFloorDb;
    return std::max(10.0 * std::log10(err / ref), kNmseFloorDb);
}

} // namespace bdcs
