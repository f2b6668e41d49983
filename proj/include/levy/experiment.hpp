#pragma once

#include "levy/modsel.hpp"
#include "levy/oracles.hpp"
#include "levy/paramest.hpp"
#include "levy/simulate.hpp"
#include "levy/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levy {

struct ExperimentConfig {
    ModelSpec model;
    Eigen::Index n = 50000;
    double delta = 0.05;
    int replications = 50;
    std::vector<Target> targets;
    CutoffGrid cutoffs = CutoffGrid::equispaced();
    PenaltyConfig penalty;
    StateGrid x_grid{-10.0, 10.0, 500};
    std::vector<double> sigma_rs{0.5, 0.25};
    std::optional<double> exclusion_a;
    std::uint64_t master_seed = 1;
    Eigen::Index quad_intervals = 4096; // trapezoid cells across the widest band

    void validate() const;

    // Cutoff grid actually searched for a target (capped at sqrt(n Delta) for p).
    CutoffGrid target_cutoffs(Target t) const;
};

struct TargetRecord {
    Target target = Target::H_BAR;
    SelectionDiagnostics selection;
    DensityEstimate estimate; // at the selected cutoff
    double mise = 0.0;
};

struct ReplicationRecord {
    std::uint64_t stream_id = 0;
    double b_hat = 0.0;
    double c2_hat = 0.0;
    double c3_hat = 0.0;
    std::vector<SigmaEstimate> sigma_hats;
    std::vector<TargetRecord> targets;
};

struct QuantityStat {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
};

struct TargetSummary {
    Target target = Target::H_BAR;
    double mean_m = 0.0, sd_m = 0.0;
    double mean_mise = 0.0, sd_mise = 0.0;
    Eigen::ArrayXd x, lower, median, upper, truth; // pointwise 2.5/50/97.5% bands
};

struct ExperimentReport {
    Eigen::Index n = 0;
    double delta = 0.0;
    int replications = 0;
    bool degenerate_sd = false; // single replication: sds are 0 by convention
    double n_delta = 0.0, n_delta2 = 0.0, n_delta_3_2 = 0.0, n_delta_7_4 = 0.0;
    std::vector<QuantityStat> params;
    std::vector<TargetSummary> targets;
};

// Trapezoid of (estimate - truth)^2 over the state grid.
double mise(const DensityEstimate& estimate, const Eigen::ArrayXd& truth);

// Estimation half of a replication, shared by the experiment driver and the CLI.
ReplicationRecord estimate_replication(const ExperimentConfig& config,
                                       const SampleIncrements& sample,
                                       std::uint64_t stream_id);

ReplicationRecord run_replication(const ExperimentConfig& config,
                                  std::uint64_t stream_id);

ExperimentReport run_experiment(const ExperimentConfig& config, int threads = 1);

// Aggregation split out so tests can exercise it on synthetic records.
ExperimentReport aggregate_records(const ExperimentConfig& config,
                                   const std::vector<ReplicationRecord>& records);

} // namespace levy
