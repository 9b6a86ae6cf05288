#pragma once

#include <map>
#include <string>

#include "flatflight/genflat.hpp"
#include "flatflight/track.hpp"

namespace flatflight {

// A complete run description: aircraft, flat outputs, trajectory generators,
// grid, iteration counts, feedback poles, control mode, integrator settings.
struct ScenarioConfig {
    std::string name;
    std::string aircraft; // path, resolved relative to the scenario file
    FlatOutputChoice choice;
    FlatOutputTrajectory trajectory;
    double t_begin = 0.0;
    double t_end = 1.0;
    int n_steps = 10;
    IterationPlan iterations;
    PoleConfig poles;
    ControlMode mode;
    int substeps = 20;
    std::map<std::string, double> perturbation;
    bool has_trim_seed = false;
    TrimProblem trim_seed;

    std::string source_path; // where it was loaded from
};

ScenarioConfig load_scenario(const std::string& path);

// Serialization that survives a parse round trip semantically.
std::string scenario_to_json(const ScenarioConfig& sc);

} // namespace flatflight
