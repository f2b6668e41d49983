#include "levy/tables.hpp"

namespace levy {

std::vector<StudyModel> study_models(double sigma) {
    std::vector<StudyModel> out;
    {
        StudyModel m;
        m.name = "poisson_gaussian";
        m.model.drift_b0 = 1.0;
        m.model.sigma = sigma;
        m.model.jumps = CompoundPoisson{0.5, GaussianJump{0.0, 1.0}};
        m.b_true = 1.0;
        out.push_back(m);
    }
    {
        StudyModel m;
        m.name = "poisson_exponential";
        m.model.drift_b0 = 1.0;
        m.model.sigma = sigma;
        m.model.jumps = CompoundPoisson{0.5, ExponentialJump{1.0}};
        m.b_true = 1.5;
        out.push_back(m);
    }
    {
        StudyModel m;
        m.name = "levy_gamma";
        m.model.drift_b0 = 1.0;
        m.model.sigma = sigma;
        m.model.jumps = LevyGamma{1.0, 1.0};
        m.b_true = 2.0;
        out.push_back(m);
    }
    {
        StudyModel m;
        m.name = "bilateral_gamma";
        m.model.drift_b0 = 1.0;
        m.model.sigma = sigma;
        m.model.jumps = BilateralGamma{1.0, 0.7, 1.0, 1.0};
        m.b_true = 1.0 + 1.0 / 0.7 - 1.0;
        out.push_back(m);
    }
    return out;
}

std::vector<SamplingDesign> study_designs() {
    return {{50000, 0.05}, {50000, 0.01}, {50000, 1e-3}, {10000, 1e-3}};
}

ExperimentConfig parameter_study_config(const StudyModel& m, SamplingDesign d,
                                        int replications, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.model = m.model;
    cfg.n = d.n;
    cfg.delta = d.delta;
    cfg.replications = replications;
    cfg.targets.clear();
    cfg.sigma_rs = {0.5, 0.25};
    cfg.master_seed = seed;
    return cfg;
}

} // namespace levy
