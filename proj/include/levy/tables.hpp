#pragma once

#include "levy/experiment.hpp"

#include <string>
#include <vector>

namespace levy {

// The four jump models of the parameter-estimation study, all with b0 = 1.
// The bilateral model uses (beta, alpha) = (1, 0.7) against (1, 1), which is
// the parametrization consistent with b = 1.4286.
struct StudyModel {
    std::string name;
    ModelSpec model; // sigma filled in by the caller
    double b_true = 0.0;
};

std::vector<StudyModel> study_models(double sigma);

// The four (n, Delta) sampling designs of the study.
struct SamplingDesign {
    Eigen::Index n;
    double delta;
};

std::vector<SamplingDesign> study_designs();

// Parameter-estimation config (b and sigma only, no density targets).
ExperimentConfig parameter_study_config(const StudyModel& m, SamplingDesign d,
                                        int replications, std::uint64_t seed);

} // namespace levy
