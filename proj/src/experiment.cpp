#include "levy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace levy {

void ExperimentConfig::validate() const {
    model.validate();
    if (n < 1)
        throw std::invalid_argument("ExperimentConfig: n must be >= 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("ExperimentConfig: delta must be > 0");
    if (replications < 1)
        throw std::invalid_argument("ExperimentConfig: replications must be >= 1");
    if (targets.empty() && sigma_rs.empty())
        throw std::invalid_argument("ExperimentConfig: nothing to estimate");
    if (!targets.empty()) {
        cutoffs.validate();
        x_grid.validate();
        if (quad_intervals < 4)
            throw std::invalid_argument("ExperimentConfig: quad_intervals too small");
    }
    for (Target t : targets)
        if (t == Target::H_HAT && n % 2 != 0)
            throw std::invalid_argument("ExperimentConfig: h_hat needs an even sample size");
    if (exclusion_a && !(*exclusion_a > 0.0))
        throw std::invalid_argument("ExperimentConfig: exclusion_a must be > 0");
}

CutoffGrid ExperimentConfig::target_cutoffs(Target t) const {
    if (t == Target::P_BAR)
        return cutoffs.capped(std::sqrt(static_cast<double>(n) * delta));
    return cutoffs;
}

double mise(const DensityEstimate& estimate, const Eigen::ArrayXd& truth) {
    if (truth.size() != estimate.values.size())
        throw std::invalid_argument("mise: grids do not match");
    const Eigen::ArrayXd x = estimate.x_grid.points();
    double total = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double dl = estimate.values[i] - truth[i];
        const double dr = estimate.values[i + 1] - truth[i + 1];
        total += 0.5 * (x[i + 1] - x[i]) * (dl * dl + dr * dr);
    }
    return total;
}

namespace {

int needed_order(const std::vector<Target>& targets) {
    int order = 0;
    for (Target t : targets) {
        if (t == Target::G)
            order = std::max(order, 1);
        else if (t == Target::H_BAR)
            order = std::max(order, 2);
        else if (t == Target::P_BAR)
            order = std::max(order, 3);
    }
    return order;
}

Eigen::ArrayXd penalties_on_grid(const ExperimentConfig& config, Target target,
                                 const SampleIncrements& sample,
                                 const SplitSample* split, const CutoffGrid& grid) {
    Eigen::ArrayXd pen(grid.values.size());
    for (Eigen::Index i = 0; i < grid.values.size(); ++i) {
        pen[i] = (target == Target::H_HAT)
                     ? penalty_h_hat(*split, config.penalty.kappa_h_hat, grid.values[i])
                     : penalty_for(target, sample, config.penalty, grid.values[i]);
    }
    return pen;
}

} // namespace

ReplicationRecord estimate_replication(const ExperimentConfig& config,
                                       const SampleIncrements& sample,
                                       std::uint64_t stream_id) {
    ReplicationRecord rec;
    rec.stream_id = stream_id;
    rec.b_hat = estimate_b(sample);
    rec.c2_hat = estimate_c_ell(sample, 2);
    rec.c3_hat = estimate_c_ell(sample, 3);
    for (double r : config.sigma_rs)
        rec.sigma_hats.push_back(estimate_sigma_power_variation(sample, r));

    if (config.targets.empty())
        return rec;

    double band_m = 0.0;
    for (Target t : config.targets)
        band_m = std::max(band_m, config.target_cutoffs(t).max());
    const FrequencyGrid grid =
        FrequencyGrid::symmetric(M_PI * band_m, config.quad_intervals / 2);

    const int order = needed_order(config.targets);
    CfDerivatives cf;
    if (order > 0)
        cf = cf_derivatives(sample, order, grid);

    const bool wants_h_hat =
        std::find(config.targets.begin(), config.targets.end(), Target::H_HAT) !=
        config.targets.end();
    SplitSample split;
    if (wants_h_hat)
        split = split_halves(sample);

    for (Target t : config.targets) {
        TargetRecord tr;
        tr.target = t;
        SpectralEstimate spec;
        switch (t) {
        case Target::G:
            spec = g_bar_star(cf);
            break;
        case Target::H_BAR:
            spec = h_bar_star(cf);
            break;
        case Target::P_BAR:
            spec = p_bar_star(cf);
            break;
        case Target::H_HAT:
            spec = h_hat_star(split, grid);
            break;
        }
        const CutoffGrid mgrid = config.target_cutoffs(t);
        const Eigen::ArrayXd norms = squared_norms(spec, mgrid.values);
        const Eigen::ArrayXd pens =
            penalties_on_grid(config, t, sample, wants_h_hat ? &split : nullptr, mgrid);
        tr.selection = select_cutoff(norms, pens, mgrid);
        tr.estimate = invert_on_cutoff(spec, tr.selection.chosen_m, config.x_grid);
        const Eigen::ArrayXd truth =
            true_target(config.model, t, config.x_grid.points());
        tr.mise = mise(tr.estimate, truth);
        rec.targets.push_back(std::move(tr));
    }
    return rec;
}

ReplicationRecord run_replication(const ExperimentConfig& config,
                                  std::uint64_t stream_id) {
    config.validate();
    const SampleIncrements sample = simulate_increments(
        config.model, config.n, config.delta, SeedSpec{config.master_seed, stream_id});
    return estimate_replication(config, sample, stream_id);
}

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2)
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

QuantityStat stat_of(std::string name, const std::vector<double>& v) {
    const double m = mean_of(v);
    return QuantityStat{std::move(name), m, sd_of(v, m)};
}

// Order statistic with linear interpolation between ranks.
double quantile(std::vector<double> v, double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::ptrdiff_t>(std::floor(pos));
    const auto hi =
        std::min<std::ptrdiff_t>(lo + 1, static_cast<std::ptrdiff_t>(v.size()) - 1);
    std::nth_element(v.begin(), v.begin() + lo, v.end());
    const double vlo = v[static_cast<std::size_t>(lo)];
    std::nth_element(v.begin(), v.begin() + hi, v.end());
    const double vhi = v[static_cast<std::size_t>(hi)];
    const double frac = pos - static_cast<double>(lo);
    return vlo + frac * (vhi - vlo);
}

} // namespace

ExperimentReport aggregate_records(const ExperimentConfig& config,
                                   const std::vector<ReplicationRecord>& records) {
    const std::size_t K = records.size();
    if (K == 0)
        throw std::invalid_argument("aggregate_records: no replications");

    ExperimentReport report;
    report.n = config.n;
    report.delta = config.delta;
    report.replications = static_cast<int>(K);
    report.degenerate_sd = (K == 1);
    const double nd = static_cast<double>(config.n);
    report.n_delta = nd * config.delta;
    report.n_delta2 = nd * config.delta * config.delta;
    report.n_delta_3_2 = nd * std::pow(config.delta, 1.5);
    report.n_delta_7_4 = nd * std::pow(config.delta, 1.75);

    auto collect = [&](auto&& get) {
        std::vector<double> v(K);
        for (std::size_t i = 0; i < K; ++i)
            v[i] = get(records[i]);
        return v;
    };

    report.params.push_back(stat_of("b_hat", collect([](const ReplicationRecord& r) {
        return r.b_hat;
    })));
    report.params.push_back(stat_of("c2_hat", collect([](const ReplicationRecord& r) {
        return r.c2_hat;
    })));
    report.params.push_back(stat_of("c3_hat", collect([](const ReplicationRecord& r) {
        return r.c3_hat;
    })));
    for (std::size_t j = 0; j < config.sigma_rs.size(); ++j) {
        char name[48];
        std::snprintf(name, sizeof(name), "sigma_hat(r=%g)", config.sigma_rs[j]);
        report.params.push_back(stat_of(name, collect([j](const ReplicationRecord& r) {
            return r.sigma_hats[j].sigma;
        })));
    }

    for (std::size_t t = 0; t < config.targets.size(); ++t) {
        TargetSummary ts;
        ts.target = config.targets[t];
        const auto ms = collect(
            [t](const ReplicationRecord& r) { return r.targets[t].selection.chosen_m; });
        const auto mises =
            collect([t](const ReplicationRecord& r) { return r.targets[t].mise; });
        ts.mean_m = mean_of(ms);
        ts.sd_m = sd_of(ms, ts.mean_m);
        ts.mean_mise = mean_of(mises);
        ts.sd_mise = sd_of(mises, ts.mean_mise);

        ts.x = config.x_grid.points();
        ts.truth = true_target(config.model, ts.target, ts.x);
        const Eigen::Index nx = ts.x.size();
        ts.lower.resize(nx);
        ts.median.resize(nx);
        ts.upper.resize(nx);
        std::vector<double> column(K);
        for (Eigen::Index i = 0; i < nx; ++i) {
            for (std::size_t k = 0; k < K; ++k)
                column[k] = records[k].targets[t].estimate.values[i];
            ts.lower[i] = quantile(column, 0.025);
            ts.median[i] = quantile(column, 0.5);
            ts.upper[i] = quantile(column, 0.975);
        }
        report.targets.push_back(std::move(ts));
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config, int threads) {
    config.validate();
    const int K = config.replications;
    std::vector<ReplicationRecord> records(static_cast<std::size_t>(K));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(K));

    const int nthreads = std::max(1, std::min(threads, K));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= K)
                return;
            try {
                records[static_cast<std::size_t>(i)] =
                    run_replication(config, static_cast<std::uint64_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (int i = 0; i < K; ++i) {
        if (errors[static_cast<std::size_t>(i)]) {
            try {
                std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
            } catch (const std::exception& e) {
                throw std::runtime_error("replication " + std::to_string(i) +
                                         " failed: " + e.what());
            }
        }
    }
    return aggregate_records(config, records);
}

} // namespace levy
