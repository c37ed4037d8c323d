#include "bdcs/dictionary.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace bdcs {

const char* domain_name(Domain d)
{
    return d == Domain::angular ? "angular" : "polar";
}

BlockPartition::BlockPartition(std::vector<Block> blocks) : blocks_(std::move(blocks))
{
    int next = 0;
    for (const auto& b : blocks_) {
        if (b.length < 1 || b.start != next)
            throw ConfigError("BlockPartition: blocks must be contiguous, non-empty and start at 0");
        next += b.length;
    }
}

BlockPartition BlockPartition::uniform(int width, int block_length)
{
    if (block_length < 1 || width < 1 || width % block_length != 0)
        throw ConfigError("block length " + std::to_string(block_length) + " does not divide width " +
                          std::to_string(width));
    std::vector<Block> blocks;
    for (int s = 0; s < width; s += block_length)
        blocks.push_back({s, block_length});
    return BlockPartition(std::move(blocks));
}

int BlockPartition::uniform_length() const
{
    if (blocks_.empty())
        return 0;
    const int len = blocks_.front().length;
    for (const auto& b : blocks_)
        if (b.length != len)
            return 0;
    return len;
}

int BlockPartition::block_of(int column) const
{
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), column,
                               [](int c, const Block& b) { return c < b.start; });
    return static_cast<int>(it - blocks_.begin()) - 1;
}

Dictionary build_angular_dictionary(const ArrayConfig& array, int oversampling, int block_length)
{
    if (oversampling < 1)
        throw ConfigError("oversampling must be >= 1");
    const int n_ant = array.num_antennas();
    const int width = oversampling * n_ant;
    Dictionary dict;
    dict.partition = BlockPartition::uniform(width, block_length);
    dict.atoms.resize(n_ant, width);
    dict.meta.resize(width);
    for (int m = 0; m < width; ++m) {
        const double angle = static_cast<double>(2 * m - width + 1) / width;
        dict.atoms.col(m) = steering_far(array, angle);
        dict.meta[m] = Atom{Domain::angular, angle, std::numeric_limits<double>::infinity(), m};
    }
    return dict;
}

namespace {

double ring_scale(const ArrayConfig& array, double beta)
{
    const double n = array.num_antennas();
    const double d = array.element_spacing();
    return n * n * d * d / (2.0 * beta * beta * array.wavelength());
}

int rings_at(double z, double r_min)
{
    int s = 0;
    while (z / (s + 1) >= r_min)
        ++s;
    return s;
}

} // namespace

int polar_dictionary_size(const ArrayConfig& array, double beta, double r_min)
{
    if (!(beta > 0.0) || !(r_min > 0.0))
        throw ConfigError("polar dictionary: beta and r_min must be positive");
    const int n_ant = array.num_antennas();
    const double scale = ring_scale(array, beta);
    int total = 0;
    for (int m = 0; m < n_ant; ++m) {
        const double angle = static_cast<double>(2 * m - n_ant + 1) / n_ant;
        total += 1 + rings_at(scale * (1.0 - angle * angle), r_min);
    }
    return total;
}

Dictionary build_polar_dictionary(const ArrayConfig& array, const PolarParams& params)
{
    if (params.block_length < 1)
        throw ConfigError("block length must be >= 1");
    const int width = polar_dictionary_size(array, params.beta, params.r_min);
    const int n_ant = array.num_antennas();
    if (width == n_ant)
        std::fprintf(stderr, "warning: polar dictionary has no near-field rings (r_min too large)\n");

    const double scale = ring_scale(array, params.beta);
    Dictionary dict;
    dict.atoms.resize(n_ant, width);
    dict.meta.reserve(width);
    std::vector<Block> blocks;
    int col = 0;
    for (int m = 0; m < n_ant; ++m) {
        const double angle = static_cast<double>(2 * m - n_ant + 1) / n_ant;
        const double z = scale * (1.0 - angle * angle);
        const int rings = rings_at(z, params.r_min);
        const int run_start = col;

        dict.atoms.col(col) = steering_far(array, angle);
        dict.meta.push_back(Atom{Domain::polar, angle, std::numeric_limits<double>::infinity(), col});
        ++col;
        for (int s = 1; s <= rings; ++s) {
            const double r = z / s;
            dict.atoms.col(col) = steering_near(array, r, angle);
            dict.meta.push_back(Atom{Domain::polar, angle, r, col});
            ++col;
        }
        for (int s = run_start; s < col; s += params.block_length)
            blocks.push_back({s, std::min(params.block_length, col - s)});
    }
    dict.partition = BlockPartition(std::move(blocks));
    return dict;
}

cdouble inner(const CMat& m, int i, int j)
{
    cdouble acc(0.0, 0.0);
    for (Eigen::Index n = 0; n < m.rows(); ++n)
        acc += std::conj(m(n, i)) * m(n, j);
    return acc;
}

double coherence(const CMat& matrix)
{
    const int g = static_cast<int>(matrix.cols());
    if (g < 2)
        throw DomainError("coherence: at least two columns are required");
    double mu = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            mu = std::max(mu, std::abs(inner(matrix, i, j)));
    return mu;
}

namespace {

// Spectral norm of a small cross-Gram block via the eigenvalues of M^H M.
double spectral_norm(const CMat& m)
{
    if (m.size() == 1)
        return std::abs(m(0, 0));
    Eigen::SelfAdjointEigenSolver<CMat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

} // namespace

DictionaryMetrics block_metrics(const CMat& matrix, const BlockPartition& partition)
{
    const int len = partition.uniform_length();
    if (len == 0)
        throw ConfigError("block_metrics: partition must have a uniform block length");
    if (partition.width() != matrix.cols())
        throw ConfigError("block_metrics: partition does not cover the matrix columns");

    DictionaryMetrics out;
    out.coherence = coherence(matrix);

    const int nb = partition.num_blocks();
    CMat cross(len, len);
    for (int b = 0; b < nb; ++b) {
        const int sb = partition[b].start;
        for (int i = 0; i < len; ++i)
            for (int j = i + 1; j < len; ++j)
                out.sub_coherence = std::max(out.sub_coherence, std::abs(inner(matrix, sb + i, sb + j)));
        for (int c = b + 1; c < nb; ++c) {
            const int sc = partition[c].start;
            for (int i = 0; i < len; ++i)
                for (int j = 0; j < len; ++j)
                    cross(i, j) = inner(matrix, sb + i, sc + j);
            out.block_coherence = std::max(out.block_coherence, spectral_norm(cross) / len);
        }
    }
    return out;
}

void write_metadata_csv(const Dictionary& dict, std::ostream& os)
{
    os << "column,domain,angle,distance\n";
    char buf[128];
    for (const auto& a : dict.meta) {
        if (a.far_field())
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,inf\n", a.column_index, domain_name(a.domain), a.spatial_angle);
        else
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g\n", a.column_index, domain_name(a.domain),
                          a.spatial_angle, a.distance);
        os << buf;
    }
}

} // namespace bdcs
