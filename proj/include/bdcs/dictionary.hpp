#pragma once

#include "bdcs/channel_model.hpp"
#include "bdcs/common.hpp"

#include <iosfwd>
#include <limits>
#include <vector>

namespace bdcs {

enum class Domain { angular, polar };

const char* domain_name(Domain d);

struct Atom {
    Domain domain = Domain::angular;
    double spatial_angle = 0.0;
    double distance = std::numeric_limits<double>::infinity(); // infinity marks a far-field atom
    int column_index = 0;

    bool far_field() const { return distance == std::numeric_limits<double>::infinity(); }
};

struct Block {
    int start = 0;
    int length = 0;
};

/// Ordered, disjoint, contiguous blocks covering [0, width).
class BlockPartition {
public:
    BlockPartition() = default;
    explicit BlockPartition(std::vector<Block> blocks);

    static BlockPartition uniform(int width, int block_length);

    const std::vector<Block>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const Block& operator[](int b) const { return blocks_[b]; }
    int width() const { return blocks_.empty() ? 0 : blocks_.back().start + blocks_.back().length; }

    /// Common block length, or 0 when the blocks differ in length.
    int uniform_length() const;
    /// Block that owns column j.
    int block_of(int column) const;

private:
    std::vector<Block> blocks_;
};

struct Dictionary {
    CMat atoms;                // N x G, unit-norm columns
    std::vector<Atom> meta;    // length G
    BlockPartition partition;

    int rows() const { return static_cast<int>(atoms.rows()); }
    int cols() const { return static_cast<int>(atoms.cols()); }
};

struct DictionaryMetrics {
    double coherence = 0.0;
    double block_coherence = 0.0;
    double sub_coherence = 0.0;
};

struct PolarParams {
    double beta = 0.95;
    double r_min = 7.5;
    int block_length = 1;
};

/// DFT-grid dictionary: G = oversampling * N far-field atoms at angles (2m - G + 1) / G.
Dictionary build_angular_dictionary(const ArrayConfig& array, int oversampling, int block_length);

/// Polar-domain dictionary. For each of N uniform angles: one far-field atom followed by
/// near-field rings at Z(angle)/s, s = 1, 2, ... while >= r_min, where
/// Z(angle) = N^2 d^2 (1 - angle^2) / (2 beta^2 lambda). Blocks never straddle two angles;
/// the last block of an angle's run is truncated to fit.
Dictionary build_polar_dictionary(const ArrayConfig& array, const PolarParams& params);

/// Number of polar atoms without building the matrix.
int polar_dictionary_size(const ArrayConfig& array, double beta, double r_min);

/// Sum_n conj(a[n]) b[n], accumulated in index order.
cdouble inner(const CMat& m, int i, int j);

/// Mutual coherence max_{i != j} |<a_i, a_j>|.
double coherence(const CMat& matrix);

/// Plain coherence plus block coherence max_{b != c} ||A_b^H A_c||_2 / L and sub-coherence
/// max within-block |<a_i, a_j>|. Requires a uniform partition.
DictionaryMetrics block_metrics(const CMat& matrix, const BlockPartition& partition);

/// Column index, domain, angle, distance (inf for far-field atoms).
void write_metadata_csv(const Dictionary& dict, std::ostream& os);

} // namespace bdcs
