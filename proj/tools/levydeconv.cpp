#include "levy/io.hpp"
#include "levy/tables.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace {

int g_verbosity = 1; // 0 = quiet, 1 = normal, 2 = verbose

void note(const std::string& msg, int level = 1) {
    if (g_verbosity >= level)
        std::cerr << msg << "\n";
}

fs::path default_out_dir() {
    if (const char* env = std::getenv("LEVYDECONV_OUT"))
        return fs::path(env);
    return fs::path(".");
}

int resolve_threads(int threads) {
    if (threads > 0)
        return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

double default_exclusion(levy::Target t) {
    switch (t) {
    case levy::Target::G:
        return 0.1;
    case levy::Target::H_HAT:
    case levy::Target::H_BAR:
        return 0.5;
    case levy::Target::P_BAR:
        return 1.0;
    }
    return 0.5;
}

void write_estimate_outputs(const levy::ExperimentConfig& cfg,
                            const levy::ReplicationRecord& rec, const fs::path& out) {
    fs::create_directories(out);
    std::string params = "quantity,value\n";
    params += "b_hat," + levy::format_double(rec.b_hat) + "\n";
    params += "c2_hat," + levy::format_double(rec.c2_hat) + "\n";
    params += "c3_hat," + levy::format_double(rec.c3_hat) + "\n";
    for (const auto& s : rec.sigma_hats) {
        char name[48];
        std::snprintf(name, sizeof(name), "sigma_hat(r=%g)", s.r);
        params += std::string(name) + "," + levy::format_double(s.sigma) + "\n";
    }
    write_text(out / "params.csv", params);

    const Eigen::ArrayXd x = cfg.x_grid.points();
    for (const auto& tr : rec.targets) {
        const std::string name = levy::target_name(tr.target);

        std::string est = "x,value\n";
        for (Eigen::Index i = 0; i < x.size(); ++i)
            est += levy::format_double(x[i]) + "," +
                   levy::format_double(tr.estimate.values[i]) + "\n";
        write_text(out / ("estimate_" + name + ".csv"), est);

        std::string sel = "m,norm2,pen,crit,chosen\n";
        for (Eigen::Index i = 0; i < tr.selection.m.size(); ++i) {
            sel += levy::format_double(tr.selection.m[i]) + "," +
                   levy::format_double(tr.selection.norm2[i]) + "," +
                   levy::format_double(tr.selection.penalty[i]) + "," +
                   levy::format_double(tr.selection.criterion[i]) + "," +
                   (i == tr.selection.chosen_index ? "1" : "0") + "\n";
        }
        write_text(out / ("selection_" + name + ".csv"), sel);

        const double a = cfg.exclusion_a.value_or(default_exclusion(tr.target));
        const levy::DensityEstimate nhat = levy::truncated_levy_density(tr.estimate, a);
        std::string nh = "x,value\n";
        for (Eigen::Index i = 0; i < x.size(); ++i)
            nh += levy::format_double(x[i]) + "," + levy::format_double(nhat.values[i]) +
                  "\n";
        write_text(out / ("nhat_" + name + ".csv"), nh);

        note("  " + name + ": m = " + levy::format_double(tr.selection.chosen_m), 2);
    }
}

std::string quantity_table_csv(const std::vector<levy::StudyModel>& models,
                               const std::vector<levy::ExperimentReport>& reports,
                               const std::vector<levy::SamplingDesign>& designs) {
    std::string csv = "model,n,delta,quantity,mean,sd\n";
    std::size_t r = 0;
    for (const auto& m : models) {
        for (const auto& d : designs) {
            const auto& rep = reports[r++];
            for (const auto& q : rep.params) {
                if (q.name == "c2_hat" || q.name == "c3_hat")
                    continue;
                csv += m.name + "," + std::to_string(d.n) + "," +
                       levy::format_double(d.delta) + "," + q.name + "," +
                       levy::format_double(q.mean) + "," + levy::format_double(q.sd) +
                       "\n";
            }
        }
    }
    return csv;
}

int run_table(int which, int replications, std::uint64_t seed, int threads,
              const fs::path& out) {
    fs::create_directories(out);
    if (which == 3) {
        std::string csv = "n,delta,n_delta,n_delta2,n_delta_3_2,n_delta_7_4\n";
        for (const auto& d : levy::study_designs()) {
            const double n = static_cast<double>(d.n);
            csv += std::to_string(d.n) + "," + levy::format_double(d.delta) + "," +
                   levy::format_double(n * d.delta) + "," +
                   levy::format_double(n * d.delta * d.delta) + "," +
                   levy::format_double(n * std::pow(d.delta, 1.5)) + "," +
                   levy::format_double(n * std::pow(d.delta, 1.75)) + "\n";
        }
        write_text(out / "table3.csv", csv);
        note("wrote " + (out / "table3.csv").string());
        return 0;
    }
    const double sigma = (which == 1) ? 0.5 : 1.0;
    const auto models = levy::study_models(sigma);
    const auto designs = levy::study_designs();
    std::vector<levy::ExperimentReport> reports;
    for (const auto& m : models) {
        for (const auto& d : designs) {
            note("running " + m.name + " n=" + std::to_string(d.n) +
                 " delta=" + levy::format_double(d.delta));
            reports.push_back(levy::run_experiment(
                levy::parameter_study_config(m, d, replications, seed), threads));
        }
    }
    const fs::path file = out / ("table" + std::to_string(which) + ".csv");
    write_text(file, quantity_table_csv(models, reports, designs));
    note("wrote " + file.string());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levy process simulation and nonparametric density-multiple estimation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear before or after the subcommand

    std::string out_dir = default_out_dir().string();
    int threads = 0;
    long seed_flag = -1;
    bool quiet = false, verbose = false;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--seed", seed_flag, "override the master seed");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_flag("--verbose", verbose, "extra progress output");

    auto* sim = app.add_subcommand("simulate", "simulate increments to a CSV file");
    std::string sim_config;
    long sim_n = -1, sim_stream = 0;
    double sim_delta = -1.0;
    sim->add_option("--config", sim_config, "model configuration file")->required();
    sim->add_option("--n", sim_n, "override sample size");
    sim->add_option("--delta", sim_delta, "override sampling step");
    sim->add_option("--stream", sim_stream, "replication stream id");

    auto* est = app.add_subcommand("estimate", "estimate from an increments CSV file");
    std::string est_in, est_config;
    est->add_option("--in", est_in, "increments CSV file")->required();
    est->add_option("--config", est_config, "estimation configuration file");
    std::string est_targets = "g,h,p";
    est->add_option("--targets", est_targets, "comma list among g,h,p,h_hat");

    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo experiment");
    std::string exp_config;
    long exp_reps = -1;
    exp->add_option("--config", exp_config, "experiment configuration file")->required();
    exp->add_option("--K", exp_reps, "override replication count");

    auto* tab = app.add_subcommand("table", "run a bundled reproduction study");
    int tab_which = 1;
    long tab_reps = 50;
    tab->add_option("--which", tab_which, "study number (1, 2 or 3)")
        ->check(CLI::Range(1, 3));
    tab->add_option("--K", tab_reps, "replications per configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    g_verbosity = quiet ? 0 : (verbose ? 2 : 1);
    const fs::path out(out_dir);

    try {
        if (sim->parsed()) {
            levy::ExperimentConfig cfg = levy::parse_config_file(sim_config);
            if (sim_n > 0)
                cfg.n = sim_n;
            if (sim_delta > 0.0)
                cfg.delta = sim_delta;
            if (seed_flag >= 0)
                cfg.master_seed = static_cast<std::uint64_t>(seed_flag);
            const levy::SampleIncrements sample = levy::simulate_increments(
                cfg.model, cfg.n, cfg.delta,
                levy::SeedSpec{cfg.master_seed, static_cast<std::uint64_t>(sim_stream)});
            fs::create_directories(out);
            levy::write_increments_csv(out / "increments.csv", sample);
            note("wrote " + (out / "increments.csv").string());
        } else if (est->parsed()) {
            levy::ExperimentConfig cfg;
            if (!est_config.empty())
                cfg = levy::parse_config_file(est_config);
            if (cfg.targets.empty() || est->count("--targets") > 0) {
                cfg.targets.clear();
                std::istringstream in(est_targets);
                std::string item;
                while (std::getline(in, item, ',')) {
                    if (item == "g")
                        cfg.targets.push_back(levy::Target::G);
                    else if (item == "h")
                        cfg.targets.push_back(levy::Target::H_BAR);
                    else if (item == "p")
                        cfg.targets.push_back(levy::Target::P_BAR);
                    else if (item == "h_hat")
                        cfg.targets.push_back(levy::Target::H_HAT);
                    else
                        throw std::invalid_argument("unknown target '" + item + "'");
                }
            }
            const levy::SampleIncrements sample = levy::read_increments_csv(est_in);
            const levy::ReplicationRecord rec =
                levy::estimate_replication(cfg, sample, 0);
            write_estimate_outputs(cfg, rec, out);
            note("wrote estimates to " + out.string());
        } else if (exp->parsed()) {
            levy::ExperimentConfig cfg = levy::parse_config_file(exp_config);
            if (exp_reps > 0)
                cfg.replications = static_cast<int>(exp_reps);
            if (seed_flag >= 0)
                cfg.master_seed = static_cast<std::uint64_t>(seed_flag);
            note("running " + std::to_string(cfg.replications) + " replications");
            const levy::ExperimentReport report =
                levy::run_experiment(cfg, resolve_threads(threads));
            levy::emit_report(report, levy::ReportFormat::Csv, out);
            levy::emit_report(report, levy::ReportFormat::Json, out);
            note("wrote report to " + out.string());
        } else if (tab->parsed()) {
            const std::uint64_t seed = seed_flag >= 0
                                           ? static_cast<std::uint64_t>(seed_flag)
                                           : 8675309u;
            return run_table(tab_which, static_cast<int>(tab_reps), seed,
                             resolve_threads(threads), out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
