#include "bdcs/partition.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace bdcs;

namespace {

const ArrayConfig kArray(128, 30e9);

SparsityProfile synthetic(std::vector<double> counts)
{
    SparsityProfile p;
    for (std::size_t i = 0; i < counts.size(); ++i)
        p.distances.push_back(10.0 * (i + 1));
    p.block_counts = std::move(counts);
    return p;
}

std::vector<double> ranks(const std::vector<double>& v)
{
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
            ++j;
        for (std::size_t t = i; t <= j; ++t)
            r[idx[t]] = 0.5 * (i + j);
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b)
{
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

} // namespace

TEST_CASE("sparsity profile")
{
    const Dictionary taps = build_angular_dictionary(kArray, 1, 1);
    const double rd = rayleigh_distance(kArray);

    SUBCASE("far field concentrates in one or two taps")
    {
        const auto p = sparsity_profile(kArray, taps, {100 * rd}, 0.95, 50, 1);
        CHECK(p.block_counts[0] >= 1.0);
        CHECK(p.block_counts[0] <= 2.0);
    }
    SUBCASE("energy spreads as the user gets closer")
    {
        std::vector<double> grid;
        for (int i = 0; i < 10; ++i)
            grid.push_back(rd * 0.05 * std::pow(20.0, i / 9.0));
        const auto p = sparsity_profile(kArray, taps, grid, 0.95, 100, 2);
        CHECK(spearman(grid, p.block_counts) < 0.0);
        CHECK(p.block_counts.front() > 2 * p.block_counts.back());
    }
    SUBCASE("a vanishing energy fraction needs one block")
    {
        const auto p = sparsity_profile(kArray, taps, {0.05 * rd, rd}, 1e-9, 20, 3);
        CHECK(p.block_counts == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("deterministic and converged")
    {
        const Dictionary blocks = build_angular_dictionary(kArray, 1, 4);
        const std::vector<double> grid{0.05 * rd, 0.2 * rd, 0.6 * rd};
        const auto a = sparsity_profile(kArray, blocks, grid, 0.95, 100, 4);
        const auto b = sparsity_profile(kArray, blocks, grid, 0.95, 100, 4);
        const auto c = sparsity_profile(kArray, blocks, grid, 0.95, 200, 4);
        CHECK(a.block_counts == b.block_counts);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(a.block_counts[i] >= 1.0);
            CHECK(std::abs(c.block_counts[i] - a.block_counts[i]) < 0.1 * a.block_counts[i]);
        }
    }
    CHECK_THROWS_AS(sparsity_profile(kArray, taps, {}, 0.95, 10, 1), DomainError);
    CHECK_THROWS_AS(sparsity_profile(kArray, taps, {1.0}, 1.0, 10, 1), DomainError);
    CHECK_THROWS_AS(sparsity_profile(kArray, taps, {2.0, 1.0}, 0.9, 10, 1), DomainError);
    CHECK_THROWS_AS(sparsity_profile(kArray, taps, {1.0}, 0.9, 0, 1), DomainError);
}

TEST_CASE("sparsity upper limit")
{
    DictionaryMetrics m;
    m.block_coherence = 1.0;
    CHECK(sparsity_upper_limit(m, 1) == 0);
    m.block_coherence = 1.0 / 3.0;
    CHECK(sparsity_upper_limit(m, 1) == 1);
    m.block_coherence = 0.1; // k < 5.5
    CHECK(sparsity_upper_limit(m, 1) == 5);
    m.block_coherence = 1.0 / 9.0; // k < 5 exactly, strict
    CHECK(sparsity_upper_limit(m, 1) == 4);

    m.block_coherence = 0.0;
    CHECK(sparsity_upper_limit(m, 2, 17) == 17);

    // with nu = 0 the bound reads k < 1 / (2 mu_B L) + 1/2, so the block count can only
    // shrink as blocks get longer
    for (double mu_b : {0.01, 0.05, 0.13, 0.3, 0.7}) {
        DictionaryMetrics d;
        d.block_coherence = mu_b;
        int prev = 1 << 30;
        for (int len = 1; len <= 16; ++len) {
            const int k = sparsity_upper_limit(d, len);
            // brute force: largest k with k L < bound
            const double bound = 0.5 * (1 / mu_b + len);
            int expect = 0;
            while ((expect + 1) * len < bound)
                ++expect;
            CHECK(k == expect);
            CHECK(k <= prev);
            prev = k;
        }
    }
    DictionaryMetrics sub;
    sub.block_coherence = 0.2;
    sub.sub_coherence = 0.9;
    CHECK(sparsity_upper_limit(sub, 4) == 0); // 0.5 (5 + 4 - 13.5) < 0
    CHECK_THROWS_AS(sparsity_upper_limit(sub, 0), ConfigError);
}

TEST_CASE("partition boundary")
{
    CHECK(partition_boundary(synthetic({1, 1, 2}), 2).boundary == 0.0);
    CHECK(std::isinf(partition_boundary(synthetic({5, 4, 3}), 2).boundary));
    CHECK(partition_boundary(synthetic({9, 6, 4, 2, 1}), 3).boundary == 40.0);
    // a bump after the crossing moves the boundary past it
    CHECK(partition_boundary(synthetic({9, 2, 4, 2, 1}), 3).boundary == 40.0);

    const auto profile = synthetic({12, 9, 7, 6, 4, 3, 3, 2, 1, 1});
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 13; ++k) {
        const auto r = partition_boundary(profile, k);
        CHECK(r.upper_limit == k);
        CHECK(r.boundary <= prev);
        prev = r.boundary;
    }

    std::ostringstream os;
    write_profile_csv(partition_boundary(synthetic({3, 1}), 2), os);
    CHECK(os.str() == "# energy_fraction=0.95 trials=0 upper_limit=2 boundary=20\ndistance,mean_blocks\n10,3\n20,1\n");
}

TEST_CASE("complete BD-CS routing")
{
    const ArrayConfig arr(64, 30e9);
    auto pilot = std::make_shared<PilotMatrix>(make_pilot_matrix(32, 64, 5));
    auto ang_dict = std::make_shared<Dictionary>(build_angular_dictionary(arr, 1, 4));
    auto pol_dict = std::make_shared<Dictionary>(build_polar_dictionary(arr, PolarParams{1.0, 0.3, 2}));
    const auto ang_phi = measurement_matrix(pilot, ang_dict, true);
    const auto pol_phi = measurement_matrix(pilot, pol_dict, true);
    RecoveryConfig cfg;
    cfg.max_blocks = 4;
    cfg.residual_tolerance = 1e-8;
    const DomainSetup ang{&ang_phi, cfg};
    const DomainSetup pol{&pol_phi, cfg};

    // on-grid near-field atom of the polar dictionary
    int col = 0;
    while (pol_dict->meta[col].far_field())
        ++col;
    const CVec h = 8.0 * pol_dict->atoms.col(col);
    Observation obs;
    obs.per_subcarrier = {pilot->entries * h};

    PartitionResult part;
    part.boundary = 100.0;

    SUBCASE("by distance")
    {
        const auto far = complete_bdcs(obs, ang, pol, part, Routing::by_distance, 1e4);
        const auto direct = bsomp(ang_phi, obs, cfg);
        CHECK(far.support_blocks == direct.support_blocks);
        CHECK(far.coefficients[0] == direct.coefficients[0]);

        const auto near = complete_bdcs(obs, ang, pol, part, Routing::by_distance, 10.0);
        CHECK(near.coefficients[0].size() == pol_dict->cols());

        PartitionResult everything_inner;
        everything_inner.boundary = std::numeric_limits<double>::infinity();
        const auto r = complete_bdcs(obs, ang, pol, everything_inner, Routing::by_distance, 1e9);
        CHECK(r.coefficients[0].size() == pol_dict->cols());

        CHECK_THROWS_AS(complete_bdcs(obs, ang, pol, part, Routing::by_distance), ConfigError);
    }
    SUBCASE("by residual picks polar for an on-grid polar channel")
    {
        const auto r = complete_bdcs(obs, ang, pol, part, Routing::by_residual);
        CHECK(r.coefficients[0].size() == pol_dict->cols());
        CHECK(nmse_db(r.reconstructed, {h}) < -100.0);
    }
    SUBCASE("preference compares residuals at a common atom budget")
    {
        RecoveryResult a, p;
        a.residual_history = {1.0, 0.5, 0.1};
        a.block_lengths = {4, 4};
        p.residual_history = {1.0, 0.6, 0.3, 0.2, 0.05};
        p.block_lengths = {2, 2, 2, 2};
        // budget 8: angular 0.1 vs polar 0.05
        CHECK(prefer_polar(a, p));
        p.residual_history = {1.0, 0.6, 0.3, 0.2, 0.15};
        CHECK_FALSE(prefer_polar(a, p));
        // budget 2: angular has nothing yet (1.0), polar 0.6
        p.residual_history = {1.0, 0.6};
        p.block_lengths = {2};
        CHECK(prefer_polar(a, p));
        // ties go to angular
        RecoveryResult same = a;
        CHECK_FALSE(prefer_polar(a, same));
        RecoveryResult empty;
        empty.residual_history = {1.0};
        CHECK_FALSE(prefer_polar(empty, empty));
    }
    SUBCASE("pilot mismatch")
    {
        auto other = std::make_shared<PilotMatrix>(make_pilot_matrix(32, 64, 6));
        const auto other_phi = measurement_matrix(other, pol_dict, true);
        const DomainSetup bad{&other_phi, cfg};
        CHECK_THROWS_AS(complete_bdcs(obs, ang, bad, part, Routing::by_residual), ConfigError);
        CHECK_THROWS_AS(complete_bdcs(obs, DomainSetup{}, pol, part, Routing::by_residual), ConfigError);
    }
}
