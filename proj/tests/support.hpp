#pragma once

#include "bdcs/common.hpp"
#include "bdcs/dictionary.hpp"
#include "bdcs/sensing.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

namespace testing {

using bdcs::cdouble;
using bdcs::CMat;
using bdcs::CVec;

inline CMat random_gaussian(int rows, int cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = cdouble(g(rng), g(rng));
    return m;
}

inline CMat random_unit_columns(int rows, int cols, std::uint64_t seed)
{
    CMat m = random_gaussian(rows, cols, seed);
    m.colwise().normalize();
    return m;
}

/// Dictionary wrapper around an arbitrary matrix (metadata is filler).
inline std::shared_ptr<const bdcs::Dictionary> wrap_dictionary(const CMat& atoms, int block_length)
{
    auto d = std::make_shared<bdcs::Dictionary>();
    d->atoms = atoms;
    d->meta.resize(atoms.cols());
    for (int j = 0; j < atoms.cols(); ++j)
        d->meta[j].column_index = j;
    d->partition = bdcs::BlockPartition::uniform(static_cast<int>(atoms.cols()), block_length);
    return d;
}

inline std::shared_ptr<const bdcs::PilotMatrix> identity_pilot(int n)
{
    auto p = std::make_shared<bdcs::PilotMatrix>();
    p->entries = CMat::Identity(n, n);
    return p;
}

/// Textbook OMP on normalized columns: argmax |phi_j^H r| (lowest index on ties), LS refit
/// via normal equations, stop after `iterations` or when the relative residual <= tol.
struct OmpOutput {
    std::vector<int> support;
    CVec coef; // on the selected columns, in selection order
};

inline OmpOutput omp_reference(const CMat& phi, const CVec& y, int iterations, double tol)
{
    OmpOutput out;
    CVec r = y;
    const double y_norm = y.norm();
    if (y_norm == 0.0)
        return out;
    std::vector<bool> used(phi.cols(), false);
    for (int it = 0; it < iterations; ++it) {
        int best = -1;
        double best_val = 0.0;
        for (int j = 0; j < phi.cols(); ++j) {
            if (used[j])
                continue;
            const double v = std::norm(phi.col(j).dot(r));
            if (v > best_val) {
                best_val = v;
                best = j;
            }
        }
        if (best < 0)
            break;
        used[best] = true;
        out.support.push_back(best);
        CMat sub(phi.rows(), out.support.size());
        for (std::size_t i = 0; i < out.support.size(); ++i)
            sub.col(i) = phi.col(out.support[i]);
        const CMat gram = sub.adjoint() * sub;
        out.coef = gram.ldlt().solve(sub.adjoint() * y);
        r = y - sub * out.coef;
        if (r.norm() / y_norm <= tol)
            break;
    }
    return out;
}

} // namespace testing
