#include "levy/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace levy {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_increments_csv(const std::filesystem::path& path,
                          const SampleIncrements& sample) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "delta," << format_double(sample.delta) << "\n";
    out << "n," << sample.size() << "\n";
    for (Eigen::Index i = 0; i < sample.size(); ++i)
        out << format_double(sample.z[i]) << "\n";
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

SampleIncrements read_increments_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::string line;
    auto header = [&](const char* key) -> std::string {
        if (!std::getline(in, line))
            throw std::runtime_error(path.string() + ": truncated header");
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.substr(0, comma) != key)
            throw std::runtime_error(path.string() + ": expected '" + key + ",...'");
        return line.substr(comma + 1);
    };
    SampleIncrements sample;
    sample.delta = std::stod(header("delta"));
    const long n = std::stol(header("n"));
    if (n < 1)
        throw std::runtime_error(path.string() + ": bad sample size");
    sample.z.resize(n);
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error(path.string() + ": fewer values than header says");
        sample.z[i] = std::stod(line);
    }
    return sample;
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

namespace {

struct KeyValues {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string take(const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end())
            throw std::invalid_argument("config: missing key '" + k + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    }
    std::string take_or(const std::string& k, const std::string& fallback) {
        return has(k) ? take(k) : fallback;
    }
    double num(const std::string& k) { return std::stod(take(k)); }
    double num_or(const std::string& k, double fallback) {
        return has(k) ? num(k) : fallback;
    }
    long integer_or(const std::string& k, long fallback) {
        return has(k) ? std::stol(take(k)) : fallback;
    }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

KeyValues tokenize(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        if (!out.kv.emplace(key, value).second)
            throw std::invalid_argument("config: duplicate key '" + key + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

JumpLaw parse_jump_law(KeyValues& kv) {
    const std::string law = kv.take_or("jump_law", "gaussian");
    if (law == "gaussian")
        return GaussianJump{kv.num_or("jump_mean", 0.0), kv.num_or("jump_sd", 1.0)};
    if (law == "exponential")
        return ExponentialJump{kv.num_or("jump_rate", 1.0)};
    if (law == "beta_rescaled")
        return BetaRescaledJump{kv.num_or("jump_a", 3.0), kv.num_or("jump_b", 3.0),
                                kv.num_or("jump_lo", -4.0), kv.num_or("jump_hi", 4.0)};
    throw std::invalid_argument("config: unknown jump_law '" + law + "'");
}

Subordinator parse_subordinator(KeyValues& kv) {
    const std::string kind = kv.take_or("subordinator", "levy_gamma");
    if (kind == "levy_gamma")
        return LevyGamma{kv.num_or("beta", 1.0), kv.num_or("alpha", 1.0)};
    if (kind == "subordinator_power")
        return SubordinatorPower{kv.num_or("beta", 1.0), kv.num_or("alpha", 1.0),
                                 kv.num_or("delta_power", 0.5)};
    if (kind == "compound_poisson")
        return CompoundPoisson{kv.num_or("intensity", 0.5), parse_jump_law(kv)};
    throw std::invalid_argument("config: unknown subordinator '" + kind + "'");
}

JumpPart parse_jump_part(KeyValues& kv) {
    const std::string kind = kv.take_or("model", "none");
    if (kind == "none")
        return NoJumps{};
    if (kind == "compound_poisson")
        return CompoundPoisson{kv.num_or("intensity", 0.5), parse_jump_law(kv)};
    if (kind == "levy_gamma")
        return LevyGamma{kv.num_or("beta", 1.0), kv.num_or("alpha", 1.0)};
    if (kind == "bilateral_gamma")
        return BilateralGamma{kv.num_or("beta", 1.0), kv.num_or("alpha", 1.0),
                              kv.num_or("beta2", 1.0), kv.num_or("alpha2", 1.0)};
    if (kind == "subordinator_power")
        return SubordinatorPower{kv.num_or("beta", 1.0), kv.num_or("alpha", 1.0),
                                 kv.num_or("delta_power", 0.5)};
    if (kind == "subordinated_bm")
        return SubordinatedBm{parse_subordinator(kv)};
    throw std::invalid_argument("config: unknown model '" + kind + "'");
}

Target parse_target(const std::string& name) {
    if (name == "g")
        return Target::G;
    if (name == "h")
        return Target::H_BAR;
    if (name == "p")
        return Target::P_BAR;
    if (name == "h_hat")
        return Target::H_HAT;
    throw std::invalid_argument("config: unknown target '" + name + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    KeyValues kv = tokenize(text);
    ExperimentConfig cfg;
    cfg.model.jumps = parse_jump_part(kv);
    cfg.model.drift_b0 = kv.num_or("b0", 0.0);
    cfg.model.sigma = kv.num_or("sigma", 0.0);
    cfg.n = kv.integer_or("n", cfg.n);
    cfg.delta = kv.num_or("delta", cfg.delta);
    cfg.replications = static_cast<int>(kv.integer_or("replications", cfg.replications));
    cfg.master_seed = static_cast<std::uint64_t>(kv.integer_or("master_seed", 1));

    cfg.targets.clear();
    for (const auto& t : split_list(kv.take_or("targets", "")))
        cfg.targets.push_back(parse_target(t));

    cfg.sigma_rs.clear();
    for (const auto& r : split_list(kv.take_or("sigma_rs", "0.5,0.25")))
        cfg.sigma_rs.push_back(std::stod(r));

    cfg.cutoffs = CutoffGrid::equispaced(kv.num_or("cutoff_max", 10.0),
                                         kv.integer_or("cutoff_count", 100));
    cfg.penalty.kappa_g = kv.num_or("kappa_g", cfg.penalty.kappa_g);
    cfg.penalty.kappa_h = kv.num_or("kappa_h", cfg.penalty.kappa_h);
    cfg.penalty.kappa_p = kv.num_or("kappa_p", cfg.penalty.kappa_p);
    cfg.penalty.kappa_h_hat = kv.num_or("kappa_h_hat", cfg.penalty.kappa_h);
    cfg.x_grid = StateGrid{kv.num_or("x_min", -10.0), kv.num_or("x_max", 10.0),
                           kv.integer_or("x_count", 500)};
    cfg.quad_intervals = kv.integer_or("quad_intervals", cfg.quad_intervals);
    if (kv.has("exclusion_a"))
        cfg.exclusion_a = kv.num("exclusion_a");

    if (!kv.kv.empty())
        throw std::invalid_argument("config: unknown key '" + kv.kv.begin()->first + "'");
    cfg.model.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json report_to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["delta"] = r.delta;
    j["replications"] = r.replications;
    j["degenerate_sd"] = r.degenerate_sd;
    j["n_delta"] = r.n_delta;
    j["n_delta2"] = r.n_delta2;
    j["n_delta_3_2"] = r.n_delta_3_2;
    j["n_delta_7_4"] = r.n_delta_7_4;
    j["params"] = nlohmann::json::array();
    for (const auto& p : r.params)
        j["params"].push_back({{"name", p.name}, {"mean", p.mean}, {"sd", p.sd}});
    j["targets"] = nlohmann::json::array();
    for (const auto& t : r.targets) {
        nlohmann::json jt;
        jt["target"] = target_name(t.target);
        jt["mean_m"] = t.mean_m;
        jt["sd_m"] = t.sd_m;
        jt["mean_mise"] = t.mean_mise;
        jt["sd_mise"] = t.sd_mise;
        auto col = [](const Eigen::ArrayXd& a) {
            return std::vector<double>(a.data(), a.data() + a.size());
        };
        jt["x"] = col(t.x);
        jt["lower"] = col(t.lower);
        jt["median"] = col(t.median);
        jt["upper"] = col(t.upper);
        jt["truth"] = col(t.truth);
        j["targets"].push_back(std::move(jt));
    }
    return j;
}

Target target_from_name(const std::string& name) {
    if (name == "g")
        return Target::G;
    if (name == "h")
        return Target::H_BAR;
    if (name == "p")
        return Target::P_BAR;
    if (name == "h_hat")
        return Target::H_HAT;
    throw std::runtime_error("report: unknown target '" + name + "'");
}

} // namespace

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (format == ReportFormat::Json) {
        write_file(out_dir / "report.json", report_to_json(report).dump(2) + "\n");
        return;
    }

    std::string params = "quantity,mean,sd\n";
    for (const auto& p : report.params)
        params += p.name + "," + format_double(p.mean) + "," + format_double(p.sd) + "\n";
    write_file(out_dir / "params.csv", params);

    if (report.targets.empty())
        return;

    std::string selection = "target,mean_m,sd_m\n";
    std::string misecsv = "target,mean_mise,sd_mise\n";
    for (const auto& t : report.targets) {
        selection += std::string(target_name(t.target)) + "," + format_double(t.mean_m) +
                     "," + format_double(t.sd_m) + "\n";
        misecsv += std::string(target_name(t.target)) + "," + format_double(t.mean_mise) +
                   "," + format_double(t.sd_mise) + "\n";
        std::string bands = "x,lower,median,upper,truth\n";
        for (Eigen::Index i = 0; i < t.x.size(); ++i) {
            bands += format_double(t.x[i]) + "," + format_double(t.lower[i]) + "," +
                     format_double(t.median[i]) + "," + format_double(t.upper[i]) + "," +
                     format_double(t.truth[i]) + "\n";
        }
        write_file(out_dir / (std::string("bands_") + target_name(t.target) + ".csv"),
                   bands);
    }
    write_file(out_dir / "selection.csv", selection);
    write_file(out_dir / "mise.csv", misecsv);
}

ExperimentReport read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;

    ExperimentReport r;
    r.n = j.at("n").get<Eigen::Index>();
    r.delta = j.at("delta").get<double>();
    r.replications = j.at("replications").get<int>();
    r.degenerate_sd = j.at("degenerate_sd").get<bool>();
    r.n_delta = j.at("n_delta").get<double>();
    r.n_delta2 = j.at("n_delta2").get<double>();
    r.n_delta_3_2 = j.at("n_delta_3_2").get<double>();
    r.n_delta_7_4 = j.at("n_delta_7_4").get<double>();
    for (const auto& p : j.at("params"))
        r.params.push_back(QuantityStat{p.at("name").get<std::string>(),
                                        p.at("mean").get<double>(),
                                        p.at("sd").get<double>()});
    for (const auto& jt : j.at("targets")) {
        TargetSummary t;
        t.target = target_from_name(jt.at("target").get<std::string>());
        t.mean_m = jt.at("mean_m").get<double>();
        t.sd_m = jt.at("sd_m").get<double>();
        t.mean_mise = jt.at("mean_mise").get<double>();
        t.sd_mise = jt.at("sd_mise").get<double>();
        auto col = [&](const char* key) {
            const auto v = jt.at(key).get<std::vector<double>>();
            return Eigen::Map<const Eigen::ArrayXd>(v.data(),
                                                    static_cast<Eigen::Index>(v.size()))
                .eval();
        };
        t.x = col("x");
        t.lower = col("lower");
        t.median = col("median");
        t.upper = col("upper");
        t.truth = col("truth");
        r.targets.push_back(std::move(t));
    }
    return r;
}

} // namespace levy
