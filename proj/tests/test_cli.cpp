#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levy/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace levy;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("levydeconv_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LEVYDECONV_BIN) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1)
        return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::stringstream out;
    out << in.rdbuf();
    return out.str();
}

const char* kGammaConfig = R"(# levy gamma experiment
model = levy_gamma
beta = 1
alpha = 1
b0 = 0
sigma = 0
n = 2000
delta = 0.05
replications = 4
targets = g,h
sigma_rs = 0.5,0.25
quad_intervals = 512
x_min = -6
x_max = 6
x_count = 101
master_seed = 42
)";

} // namespace

TEST_CASE("increments file round trip is exact") {
    const auto dir = scratch_dir("roundtrip");
    ModelSpec m;
    m.drift_b0 = 1.0;
    m.sigma = 0.5;
    m.jumps = LevyGamma{1.0, 1.0};
    const auto sample = simulate_increments(m, 1000, 0.05, SeedSpec{5, 0});
    write_increments_csv(dir / "inc.csv", sample);
    const auto back = read_increments_csv(dir / "inc.csv");
    CHECK(back.delta == sample.delta);
    REQUIRE(back.size() == sample.size());
    CHECK((back.z == sample.z).all());
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text(kGammaConfig);
    CHECK(std::holds_alternative<LevyGamma>(cfg.model.jumps));
    CHECK(cfg.n == 2000);
    CHECK(cfg.delta == 0.05);
    CHECK(cfg.replications == 4);
    REQUIRE(cfg.targets.size() == 2);
    CHECK(cfg.targets[0] == Target::G);
    CHECK(cfg.targets[1] == Target::H_BAR);
    CHECK(cfg.sigma_rs == std::vector<double>{0.5, 0.25});
    CHECK(cfg.penalty.kappa_g == 7.5);
    CHECK(cfg.penalty.kappa_h == 4.0);
    CHECK(cfg.penalty.kappa_p == 3.0);
    CHECK(cfg.quad_intervals == 512);
    CHECK(cfg.master_seed == 42);

    CHECK_THROWS_AS(parse_config_text("model = levy_gamma\nbogus_key = 3\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("model = unknown_kind\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("model levy_gamma\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/config.cfg"), std::invalid_argument);

    const auto cp = parse_config_text(
        "model = compound_poisson\nintensity = 0.5\njump_law = beta_rescaled\n"
        "jump_a = 3\njump_b = 3\njump_lo = -4\njump_hi = 4\n");
    const auto* jumps = std::get_if<CompoundPoisson>(&cp.model.jumps);
    REQUIRE(jumps != nullptr);
    CHECK(std::holds_alternative<BetaRescaledJump>(jumps->law));

    const auto sb = parse_config_text(
        "model = subordinated_bm\nsubordinator = levy_gamma\nbeta = 2\nalpha = 3\n");
    const auto* sub = std::get_if<SubordinatedBm>(&sb.model.jumps);
    REQUIRE(sub != nullptr);
    CHECK(std::get<LevyGamma>(sub->subordinator).beta == 2.0);
}

TEST_CASE("report emission is byte-stable and json round trips") {
    const auto dir1 = scratch_dir("report1");
    const auto dir2 = scratch_dir("report2");
    const auto cfg = parse_config_text(kGammaConfig);
    const auto report = run_experiment(cfg, 2);

    emit_report(report, ReportFormat::Csv, dir1);
    emit_report(report, ReportFormat::Json, dir1);
    emit_report(report, ReportFormat::Csv, dir2);
    emit_report(report, ReportFormat::Json, dir2);

    for (const char* name : {"params.csv", "selection.csv", "mise.csv", "bands_g.csv",
                             "bands_h.csv", "report.json"})
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));

    const auto back = read_report_json(dir1 / "report.json");
    CHECK(back.n == report.n);
    CHECK(back.delta == report.delta);
    CHECK(back.replications == report.replications);
    CHECK(back.n_delta_7_4 == report.n_delta_7_4);
    REQUIRE(back.params.size() == report.params.size());
    for (std::size_t i = 0; i < back.params.size(); ++i) {
        CHECK(back.params[i].name == report.params[i].name);
        CHECK(back.params[i].mean == report.params[i].mean);
        CHECK(back.params[i].sd == report.params[i].sd);
    }
    REQUIRE(back.targets.size() == report.targets.size());
    for (std::size_t i = 0; i < back.targets.size(); ++i) {
        CHECK(back.targets[i].target == report.targets[i].target);
        CHECK(back.targets[i].mean_m == report.targets[i].mean_m);
        CHECK((back.targets[i].lower == report.targets[i].lower).all());
        CHECK((back.targets[i].median == report.targets[i].median).all());
        CHECK((back.targets[i].upper == report.targets[i].upper).all());
        CHECK((back.targets[i].truth == report.targets[i].truth).all());
    }

    // empty targets: only params.csv
    const auto dir3 = scratch_dir("report3");
    auto params_only = parse_config_text("model = levy_gamma\nn = 500\ndelta = 0.05\n"
                                         "replications = 2\nmaster_seed = 1\n");
    emit_report(run_experiment(params_only, 1), ReportFormat::Csv, dir3);
    CHECK(fs::exists(dir3 / "params.csv"));
    CHECK(!fs::exists(dir3 / "selection.csv"));
    CHECK(!fs::exists(dir3 / "mise.csv"));
}

TEST_CASE("cli: usage errors exit 1, runtime errors exit 2") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("experiment --config /nonexistent/missing.toml") == 1);
    CHECK(run_cli("bogus-subcommand") == 1);
    CHECK(run_cli("table --which 9") == 1);

    // a missing increments file surfaces as a runtime failure
    const auto dir = scratch_dir("exit2");
    CHECK(run_cli("--out " + dir.string() + " estimate --in " +
                  (dir / "missing.csv").string()) == 2);
}

TEST_CASE("cli: simulate then estimate matches the in-process replication") {
    const auto dir = scratch_dir("pipeline");
    const auto cfgfile = dir / "exp.cfg";
    {
        std::ofstream out(cfgfile);
        out << kGammaConfig;
    }
    REQUIRE(run_cli("--out " + (dir / "sim").string() + " simulate --config " +
                    cfgfile.string()) == 0);
    REQUIRE(run_cli("--out " + (dir / "est").string() + " estimate --in " +
                    (dir / "sim" / "increments.csv").string() + " --config " +
                    cfgfile.string()) == 0);

    // in-process reference: same seed, stream 0
    const auto cfg = parse_config_text(kGammaConfig);
    const auto rec = run_replication(cfg, 0);

    const std::string params = slurp(dir / "est" / "params.csv");
    std::stringstream expect;
    expect << "quantity,value\n";
    expect << "b_hat," << format_double(rec.b_hat) << "\n";
    expect << "c2_hat," << format_double(rec.c2_hat) << "\n";
    expect << "c3_hat," << format_double(rec.c3_hat) << "\n";
    expect << "sigma_hat(r=0.5)," << format_double(rec.sigma_hats[0].sigma) << "\n";
    expect << "sigma_hat(r=0.25)," << format_double(rec.sigma_hats[1].sigma) << "\n";
    CHECK(params == expect.str());

    // estimated curve for g matches bit-exactly
    const std::string est_g = slurp(dir / "est" / "estimate_g.csv");
    std::stringstream gline;
    const auto x = cfg.x_grid.points();
    gline << "x,value\n";
    for (Eigen::Index i = 0; i < x.size(); ++i)
        gline << format_double(x[i]) << ","
              << format_double(rec.targets[0].estimate.values[i]) << "\n";
    CHECK(est_g == gline.str());

    CHECK(fs::exists(dir / "est" / "selection_g.csv"));
    CHECK(fs::exists(dir / "est" / "selection_h.csv"));
    CHECK(fs::exists(dir / "est" / "nhat_g.csv"));
    CHECK(fs::exists(dir / "est" / "nhat_h.csv"));
}

TEST_CASE("cli: LEVYDECONV_OUT provides the default output directory") {
    const auto dir = scratch_dir("envout");
    const std::string cmd = "LEVYDECONV_OUT=" + dir.string() + " " +
                            std::string(LEVYDECONV_BIN) +
                            " --quiet table --which 3 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(dir / "table3.csv"));
}

TEST_CASE("cli: experiment and table subcommands") {
    const auto dir = scratch_dir("experiment");
    const auto cfgfile = dir / "exp.cfg";
    {
        std::ofstream out(cfgfile);
        out << kGammaConfig;
    }
    REQUIRE(run_cli("--out " + dir.string() + " --threads 2 experiment --config " +
                    cfgfile.string() + " --K 3") == 0);
    CHECK(fs::exists(dir / "params.csv"));
    CHECK(fs::exists(dir / "report.json"));
    const auto report = read_report_json(dir / "report.json");
    CHECK(report.replications == 3);

    REQUIRE(run_cli("--out " + dir.string() + " table --which 3") == 0);
    const std::string t3 = slurp(dir / "table3.csv");
    CHECK(t3.find("n,delta,n_delta,n_delta2,n_delta_3_2,n_delta_7_4") == 0);
    CHECK(t3.find("50000,0.01") != std::string::npos);
}
