#include "bdcs/bench.hpp"

#include "bdcs/precoding.hpp"
#include "bdcs/sensing.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace bdcs {

namespace {

constexpr std::array<std::pair<Method, const char*>, 5> kMethodNames{{
    {Method::ls, "ls"},
    {Method::somp_polar, "somp_polar"},
    {Method::bsomp_angular, "bsomp_angular"},
    {Method::bsomp_polar, "bsomp_polar"},
    {Method::complete_bdcs, "complete_bdcs"},
}};

} // namespace

const char* method_name(Method m)
{
    for (const auto& [method, name] : kMethodNames)
        if (method == m)
            return name;
    return "?";
}

Method parse_method(const std::string& name)
{
    for (const auto& [method, tag] : kMethodNames)
        if (name == tag)
            return method;
    throw ConfigError("unknown method tag '" + name + "'");
}

int ExperimentConfig::pilot_count() const
{
    return std::max(1, static_cast<int>(std::lround(pilot_fraction * num_antennas)));
}

std::vector<double> ExperimentConfig::distance_values() const
{
    if (!distances.values_m.empty())
        return distances.values_m;
    const double rd = rayleigh_distance(array());
    std::vector<double> out;
    const int n = distances.points;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        double f;
        if (distances.log_spacing)
            f = distances.min_rayleigh * std::pow(distances.max_rayleigh / distances.min_rayleigh, t);
        else
            f = distances.min_rayleigh + t * (distances.max_rayleigh - distances.min_rayleigh);
        out.push_back(f * rd);
    }
    return out;
}

void ExperimentConfig::validate() const
{
    if (num_antennas < 2)
        throw ConfigError("num_antennas must be >= 2");
    if (!(carrier_freq > 0.0))
        throw ConfigError("carrier_freq must be positive");
    if (subcarriers < 1 || users < 1)
        throw ConfigError("subcarriers and users must be >= 1");
    if (clusters.count < 1 || clusters.subpaths < 1)
        throw ConfigError("cluster count and subpaths must be >= 1");
    if (!(clusters.max_angle >= 0.0 && clusters.max_angle <= 1.0))
        throw ConfigError("cluster max_angle must lie in [0, 1]");
    if (!(pilot_fraction > 0.0 && pilot_fraction <= 1.0))
        throw ConfigError("pilot_fraction must lie in (0, 1]");
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (methods.empty())
        throw ConfigError("methods must be non-empty");
    if (oversampling < 1 || angular_block_length < 1 || polar_block_length < 1)
        throw ConfigError("oversampling and block lengths must be >= 1");
    if ((oversampling * num_antennas) % angular_block_length != 0)
        throw ConfigError("angular block length must divide the angular dictionary width");
    if (!(beta > 0.0) || !(r_min > 0.0))
        throw ConfigError("beta and r_min must be positive");
    if (max_atoms < 1)
        throw ConfigError("max_atoms must be >= 1");
    if (residual_tolerance && !(*residual_tolerance >= 0.0))
        throw ConfigError("residual_tolerance must be non-negative");
    if (!(energy_fraction > 0.0 && energy_fraction < 1.0))
        throw ConfigError("energy_fraction must lie in (0, 1)");
    if (distances.values_m.empty()) {
        if (distances.points < 1 || !(distances.min_rayleigh > 0.0) ||
            !(distances.max_rayleigh >= distances.min_rayleigh))
            throw ConfigError("invalid distance grid");
    }
    for (double d : distances.values_m)
        if (!(d > 0.0) || std::isinf(d))
            throw ConfigError("distances must lie in (0, inf)");
}

ExperimentConfig multiuser_preset()
{
    return ExperimentConfig{};
}

// ---------------------------------------------------------------------------------------------
// config I/O

namespace {

using nlohmann::json;

template <typename T>
void read(const json& j, const char* key, T& dst)
{
    if (j.contains(key) && !j.at(key).is_null())
        dst = j.at(key).get<T>();
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("array")) {
            const auto& a = j.at("array");
            read(a, "num_antennas", cfg.num_antennas);
            read(a, "carrier_freq", cfg.carrier_freq);
            read(a, "element_spacing", cfg.element_spacing);
        }
        if (j.contains("subcarriers")) {
            const auto& s = j.at("subcarriers");
            read(s, "count", cfg.subcarriers);
            read(s, "spacing", cfg.subcarrier_spacing);
        }
        read(j, "users", cfg.users);
        if (j.contains("clusters")) {
            const auto& c = j.at("clusters");
            read(c, "count", cfg.clusters.count);
            read(c, "subpaths", cfg.clusters.subpaths);
            read(c, "max_angle", cfg.clusters.max_angle);
            read(c, "angle_spread", cfg.clusters.angle_spread);
            read(c, "distance_spread_fraction", cfg.clusters.distance_spread_fraction);
            read(c, "power_decay_rate", cfg.clusters.power_decay_rate);
        }
        read(j, "pilot_fraction", cfg.pilot_fraction);
        read(j, "snr_db", cfg.snr_db);
        if (j.contains("distances")) {
            const auto& d = j.at("distances");
            read(d, "min_rayleigh", cfg.distances.min_rayleigh);
            read(d, "max_rayleigh", cfg.distances.max_rayleigh);
            read(d, "points", cfg.distances.points);
            std::string spacing = cfg.distances.log_spacing ? "log" : "linear";
            read(d, "spacing", spacing);
            if (spacing != "log" && spacing != "linear")
                throw ConfigError("distances.spacing must be 'log' or 'linear'");
            cfg.distances.log_spacing = spacing == "log";
            read(d, "values_m", cfg.distances.values_m);
        }
        read(j, "snr_sweep_distance_rayleigh", cfg.snr_sweep_distance_rayleigh);
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : j.at("methods"))
                cfg.methods.push_back(parse_method(m.get<std::string>()));
        }
        read(j, "trials", cfg.trials);
        read(j, "seed", cfg.seed);
        if (j.contains("dictionary")) {
            const auto& d = j.at("dictionary");
            read(d, "oversampling", cfg.oversampling);
            read(d, "beta", cfg.beta);
            read(d, "r_min", cfg.r_min);
            read(d, "angular_block_length", cfg.angular_block_length);
            read(d, "polar_block_length", cfg.polar_block_length);
        }
        if (j.contains("recovery")) {
            const auto& r = j.at("recovery");
            read(r, "max_atoms", cfg.max_atoms);
            if (r.contains("residual_tolerance") && r.at("residual_tolerance").is_number())
                cfg.residual_tolerance = r.at("residual_tolerance").get<double>();
            std::string routing = cfg.routing == Routing::by_residual ? "by_residual" : "by_distance";
            read(r, "routing", routing);
            if (routing != "by_residual" && routing != "by_distance")
                throw ConfigError("recovery.routing must be 'by_residual' or 'by_distance'");
            cfg.routing = routing == "by_residual" ? Routing::by_residual : Routing::by_distance;
        }
        if (j.contains("side_info")) {
            const auto& s = j.at("side_info");
            read(s, "temporal_gain", cfg.temporal_gain);
            read(s, "temporal_width", cfg.temporal_width);
            if (s.contains("decay_floor") && s.at("decay_floor").is_number())
                cfg.decay_floor = s.at("decay_floor").get<double>();
        }
        if (j.contains("partition")) {
            const auto& p = j.at("partition");
            read(p, "energy_fraction", cfg.energy_fraction);
            read(p, "trials", cfg.partition_trials);
        }
        if (j.contains("precoding")) {
            const auto& p = j.at("precoding");
            read(p, "rx_antennas", cfg.precoding.rx_antennas);
            read(p, "streams", cfg.precoding.streams);
            read(p, "rf_chains", cfg.precoding.rf_chains);
            read(p, "inner_distance_rayleigh", cfg.precoding.inner_distance_rayleigh);
            read(p, "outer_distance_rayleigh", cfg.precoding.outer_distance_rayleigh);
        }
        read(j, "output", cfg.output);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    json j;
    j["array"] = {{"num_antennas", cfg.num_antennas},
                  {"carrier_freq", cfg.carrier_freq},
                  {"element_spacing", cfg.array().element_spacing()}};
    j["subcarriers"] = {{"count", cfg.subcarriers}, {"spacing", cfg.subcarrier_spacing}};
    j["users"] = cfg.users;
    j["clusters"] = {{"count", cfg.clusters.count},
                     {"subpaths", cfg.clusters.subpaths},
                     {"max_angle", cfg.clusters.max_angle},
                     {"angle_spread", cfg.clusters.angle_spread},
                     {"distance_spread_fraction", cfg.clusters.distance_spread_fraction},
                     {"power_decay_rate", cfg.clusters.power_decay_rate}};
    j["pilot_fraction"] = cfg.pilot_fraction;
    j["pilot_count"] = cfg.pilot_count();
    j["snr_db"] = cfg.snr_db;
    j["distances"] = {{"min_rayleigh", cfg.distances.min_rayleigh},
                      {"max_rayleigh", cfg.distances.max_rayleigh},
                      {"points", cfg.distances.points},
                      {"spacing", cfg.distances.log_spacing ? "log" : "linear"},
                      {"values_m", cfg.distance_values()}};
    j["snr_sweep_distance_rayleigh"] = cfg.snr_sweep_distance_rayleigh;
    j["rayleigh_distance_m"] = rayleigh_distance(cfg.array());
    std::vector<std::string> methods;
    for (Method m : cfg.methods)
        methods.emplace_back(method_name(m));
    j["methods"] = methods;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["dictionary"] = {{"oversampling", cfg.oversampling},
                       {"beta", cfg.beta},
                       {"r_min", cfg.r_min},
                       {"angular_block_length", cfg.angular_block_length},
                       {"polar_block_length", cfg.polar_block_length}};
    j["recovery"] = {{"max_atoms", cfg.max_atoms},
                     {"residual_tolerance", cfg.residual_tolerance ? json(*cfg.residual_tolerance) : json("auto")},
                     {"routing", cfg.routing == Routing::by_residual ? "by_residual" : "by_distance"}};
    j["side_info"] = {{"temporal_gain", cfg.temporal_gain},
                      {"temporal_width", cfg.temporal_width},
                      {"decay_floor", cfg.decay_floor ? json(*cfg.decay_floor) : json(nullptr)}};
    j["partition"] = {{"energy_fraction", cfg.energy_fraction}, {"trials", cfg.partition_trials}};
    j["precoding"] = {{"rx_antennas", cfg.precoding.rx_antennas},
                      {"streams", cfg.precoding.streams},
                      {"rf_chains", cfg.precoding.rf_chains},
                      {"inner_distance_rayleigh", cfg.precoding.inner_distance_rayleigh},
                      {"outer_distance_rayleigh", cfg.precoding.outer_distance_rayleigh}};
    j["output"] = cfg.output;
    return j.dump(2);
}

// ---------------------------------------------------------------------------------------------
// runners

namespace {

// Runs fn(i) for i in [0, n); each index writes only its own output slot.
template <typename Fn>
void parallel_for(int n, Fn fn)
{
    const int workers = std::min<int>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers)
                fn(i);
        });
}

struct Stats {
    double mean = 0.0;
    double std_error = 0.0;
};

Stats summarize(const std::vector<double>& v)
{
    Stats s;
    for (double x : v)
        s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v)
            ss += (x - s.mean) * (x - s.mean);
        s.std_error = std::sqrt(ss / (v.size() - 1) / v.size());
    }
    return s;
}

bool uses(const ExperimentConfig& cfg, Method m)
{
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

bool needs_polar(const ExperimentConfig& cfg)
{
    return uses(cfg, Method::somp_polar) || uses(cfg, Method::bsomp_polar) || uses(cfg, Method::complete_bdcs);
}

bool needs_angular(const ExperimentConfig& cfg)
{
    return uses(cfg, Method::bsomp_angular) || uses(cfg, Method::complete_bdcs);
}

std::vector<ClusterSpec> draw_clusters(const ExperimentConfig& cfg, double distance, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-cfg.clusters.max_angle, cfg.clusters.max_angle);
    std::vector<ClusterSpec> out;
    for (int c = 0; c < cfg.clusters.count; ++c) {
        ClusterSpec spec;
        spec.center_angle = angle(rng);
        spec.center_distance = distance;
        spec.angle_spread = cfg.clusters.angle_spread;
        spec.distance_spread = cfg.clusters.distance_spread_fraction * distance;
        spec.subpath_count = cfg.clusters.subpaths;
        spec.power_decay_rate = cfg.clusters.power_decay_rate;
        out.push_back(spec);
    }
    return out;
}

/// Everything shared read-only across trials of one run.
struct EstimationBench {
    ExperimentConfig cfg;
    ArrayConfig array;
    SubcarrierGrid grid;
    std::shared_ptr<const PilotMatrix> pilot;
    CMat pilot_pinv;
    std::optional<MeasurementMatrix> angular;
    std::optional<MeasurementMatrix> polar;
    BlockPartition polar_single;
    PartitionResult partition;

    explicit EstimationBench(const ExperimentConfig& c)
        : cfg(c), array(c.array()), grid{c.subcarriers, c.carrier_freq, c.subcarrier_spacing}
    {
        const int q = cfg.pilot_count();
        pilot = std::make_shared<PilotMatrix>(make_pilot_matrix(q, cfg.num_antennas, derive_seed(cfg.seed, 0x50494c)));
        if (uses(cfg, Method::ls))
            pilot_pinv = pseudo_inverse(pilot->entries);
        if (needs_angular(cfg)) {
            auto dict = std::make_shared<const Dictionary>(
                build_angular_dictionary(array, cfg.oversampling, cfg.angular_block_length));
            angular = measurement_matrix(pilot, dict, true);
        }
        if (needs_polar(cfg)) {
            auto dict = std::make_shared<const Dictionary>(
                build_polar_dictionary(array, PolarParams{cfg.beta, cfg.r_min, cfg.polar_block_length}));
            polar = measurement_matrix(pilot, dict, true);
            polar_single = BlockPartition::uniform(dict->cols(), 1);
        }
        if (uses(cfg, Method::complete_bdcs) && cfg.routing == Routing::by_distance)
            partition = run_partition(cfg);
    }

    RecoveryConfig recovery_config(int block_length, double snr_db) const
    {
        RecoveryConfig rc;
        rc.max_blocks = std::max(1, std::min(cfg.max_atoms, cfg.pilot_count()) / block_length);
        if (cfg.residual_tolerance)
            rc.residual_tolerance = *cfg.residual_tolerance;
        else if (std::isinf(snr_db) && snr_db > 0.0)
            rc.residual_tolerance = 1e-6;
        else
            rc.residual_tolerance = 1.0 / std::sqrt(1.0 + db_to_linear(snr_db));
        return rc;
    }

    std::optional<SideInformation> side_info() const
    {
        if (cfg.temporal_gain == 0.0 && !cfg.decay_floor)
            return std::nullopt;
        SideInformation si;
        si.temporal_gain = 0.0; // no previous slot in a single-snapshot run
        si.temporal_width = cfg.temporal_width;
        si.decay_floor = cfg.decay_floor;
        return si;
    }

    /// Per-method NMSE (dB) for one trial, pooled over users and subcarriers.
    std::vector<double> trial(double distance, double snr_db, int trial_index) const
    {
        const std::size_t nm = cfg.methods.size();
        std::vector<double> err(nm, 0.0);
        double ref = 0.0;
        const auto si = side_info();
        const SideInformation* si_ptr = si ? &*si : nullptr;

        for (int u = 0; u < cfg.users; ++u) {
            const auto clusters = draw_clusters(cfg, distance, derive_seed(cfg.seed, trial_index, u, 1));
            const ChannelRealization ch = synthesize_channel(array, clusters, grid, derive_seed(cfg.seed, trial_index, u, 2));
            const Observation obs = observe(*pilot, ch, snr_db, derive_seed(cfg.seed, trial_index, u, 3));
            for (const auto& h : ch.per_subcarrier)
                ref += h.squaredNorm();

            std::optional<RecoveryResult> ang, pol;
            auto angular_run = [&]() -> const RecoveryResult& {
                if (!ang)
                    ang = bsomp(*angular, obs, recovery_config(cfg.angular_block_length, snr_db), si_ptr);
                return *ang;
            };
            auto polar_run = [&]() -> const RecoveryResult& {
                if (!pol)
                    pol = bsomp(*polar, obs, recovery_config(cfg.polar_block_length, snr_db), si_ptr);
                return *pol;
            };

            for (std::size_t mi = 0; mi < nm; ++mi) {
                std::vector<CVec> est;
                switch (cfg.methods[mi]) {
                case Method::ls:
                    est = ls_estimate(pilot_pinv, obs);
                    break;
                case Method::somp_polar: {
                    RecoveryConfig rc = recovery_config(1, snr_db);
                    rc.partition = polar_single;
                    est = bsomp(*polar, obs, rc, si_ptr).reconstructed;
                    break;
                }
                case Method::bsomp_angular:
                    est = angular_run().reconstructed;
                    break;
                case Method::bsomp_polar:
                    est = polar_run().reconstructed;
                    break;
                case Method::complete_bdcs:
                    if (cfg.routing == Routing::by_residual)
                        est = prefer_polar(angular_run(), polar_run()) ? pol->reconstructed : ang->reconstructed;
                    else
                        est = distance < partition.boundary ? polar_run().reconstructed : angular_run().reconstructed;
                    break;
                }
                for (std::size_t k = 0; k < est.size(); ++k)
                    err[mi] += (est[k] - ch.per_subcarrier[k]).squaredNorm();
            }
        }
        std::vector<double> out(nm);
        for (std::size_t mi = 0; mi < nm; ++mi)
            out[mi] = err[mi] == 0.0 ? kNmseFloorDb : std::max(10.0 * std::log10(err[mi] / ref), kNmseFloorDb);
        return out;
    }

    /// Curve points for one x value.
    void sweep_point(double x, double distance, double snr_db, std::vector<CurvePoint>& out) const
    {
        std::vector<std::vector<double>> per_trial(cfg.trials);
        parallel_for(cfg.trials, [&](int t) { per_trial[t] = trial(distance, snr_db, t); });
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            std::vector<double> v;
            v.reserve(per_trial.size());
            for (const auto& row : per_trial)
                v.push_back(row[mi]);
            const Stats s = summarize(v);
            out.push_back(CurvePoint{x, method_name(cfg.methods[mi]), s.mean, s.std_error, cfg.trials});
        }
    }
};

} // namespace

std::vector<CurvePoint> run_nmse_vs_distance(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.snr_db.empty())
        throw ConfigError("nmse-distance needs one SNR value");
    const EstimationBench bench(cfg);
    std::vector<CurvePoint> out;
    for (double d : cfg.distance_values())
        bench.sweep_point(d, d, cfg.snr_db.front(), out);
    return out;
}

std::vector<CurvePoint> run_nmse_vs_snr(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.snr_db.empty())
        throw ConfigError("nmse-snr needs a non-empty SNR list");
    const EstimationBench bench(cfg);
    const double distance = cfg.snr_sweep_distance_rayleigh * rayleigh_distance(cfg.array());
    std::vector<CurvePoint> out;
    for (double snr : cfg.snr_db)
        bench.sweep_point(snr, distance, snr, out);
    return out;
}

std::vector<CurvePoint> run_se_vs_snr(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.snr_db.empty())
        throw ConfigError("se-snr needs a non-empty SNR list");
    const auto& pc = cfg.precoding;
    if (pc.rx_antennas < 1 || pc.streams < 1 || pc.streams > std::min(pc.rx_antennas, cfg.num_antennas) ||
        pc.rf_chains < pc.streams || pc.rf_chains > cfg.num_antennas)
        throw ConfigError("precoding: need 1 <= N_s <= min(N_r, N_t) and N_s <= N_RF <= N_t");
    if (pc.rf_chains % cfg.angular_block_length != 0)
        throw ConfigError("precoding: angular block length must divide rf_chains");

    const ArrayConfig array = cfg.array();
    const Dictionary angular = build_angular_dictionary(array, cfg.oversampling, cfg.angular_block_length);
    const Dictionary polar = build_polar_dictionary(array, PolarParams{cfg.beta, cfg.r_min, cfg.polar_block_length});
    const double rd = rayleigh_distance(array);

    struct Regime {
        const char* name;
        double distance;
        const Dictionary* dict;
    };
    const std::array<Regime, 2> regimes{{{"inner", pc.inner_distance_rayleigh * rd, &polar},
                                         {"outer", pc.outer_distance_rayleigh * rd, &angular}}};

    // Channels and precoders do not depend on SNR; compute them once per trial.
    struct TrialPrecoders {
        std::array<MatrixChannel, 2> channel;
        std::array<CMat, 2> optimal;
        std::array<CMat, 2> hybrid;
    };
    std::vector<TrialPrecoders> trials(cfg.trials);
    parallel_for(cfg.trials, [&](int t) {
        for (std::size_t r = 0; r < regimes.size(); ++r) {
            const auto clusters = draw_clusters(cfg, regimes[r].distance, derive_seed(cfg.seed, t, r, 1));
            trials[t].channel[r] = synthesize_mimo_channel(array, pc.rx_antennas, clusters, derive_seed(cfg.seed, t, r, 2));
            trials[t].optimal[r] = optimal_precoder(trials[t].channel[r], pc.streams);
            RecoveryConfig rc;
            rc.max_blocks = pc.rf_chains;
            trials[t].hybrid[r] = block_sparse_precoding(trials[t].optimal[r], *regimes[r].dict, pc.rf_chains, rc).combined();
        }
    });

    std::vector<CurvePoint> out;
    for (double snr : cfg.snr_db) {
        for (std::size_t r = 0; r < regimes.size(); ++r) {
            std::vector<double> opt, hyb;
            for (const auto& tp : trials) {
                opt.push_back(spectral_efficiency(tp.channel[r], tp.optimal[r], snr).spectral_efficiency);
                hyb.push_back(spectral_efficiency(tp.channel[r], tp.hybrid[r], snr).spectral_efficiency);
            }
            const Stats so = summarize(opt);
            const Stats sh = summarize(hyb);
            out.push_back({snr, std::string("optimal_") + regimes[r].name, so.mean, so.std_error, cfg.trials});
            out.push_back({snr, std::string("hybrid_") + regimes[r].name, sh.mean, sh.std_error, cfg.trials});
        }
    }
    return out;
}

PartitionResult run_partition(const ExperimentConfig& cfg)
{
    cfg.validate();
    const ArrayConfig array = cfg.array();
    auto dict = std::make_shared<const Dictionary>(
        build_angular_dictionary(array, cfg.oversampling, cfg.angular_block_length));
    auto pilot = std::make_shared<const PilotMatrix>(
        make_pilot_matrix(cfg.pilot_count(), cfg.num_antennas, derive_seed(cfg.seed, 0x50494c)));
    const MeasurementMatrix phi = measurement_matrix(pilot, dict, true);
    const DictionaryMetrics metrics = block_metrics(phi.entries, dict->partition);
    const int limit = sparsity_upper_limit(metrics, cfg.angular_block_length);
    const SparsityProfile profile =
        sparsity_profile(array, *dict, cfg.distance_values(), cfg.energy_fraction, cfg.partition_trials,
                         derive_seed(cfg.seed, 0x50524f));
    return partition_boundary(profile, limit);
}

void write_curve_csv(const std::vector<CurvePoint>& points, std::ostream& os)
{
    os << "x,method,mean_db,stderr_db,trials\n";
    char buf[256];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g,%s,%.6f,%.6f,%d\n", p.x, p.method.c_str(), p.mean, p.std_error, p.trials);
        os << buf;
    }
}

} // namespace bdcs
