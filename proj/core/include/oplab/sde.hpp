#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oplab/influence.hpp"

namespace oplab {

enum class Boundary { free, reflecting, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& name);

/// Full parameter set of one particle realization. Identical configs
/// (including the seed) produce bit-identical trajectories.
struct SimConfig {
    int n_agents = 500;
    double length = 10.0;
    ScaledInfluence influence{builtin_shapes().at("phi2"), 1.0};
    double sigma = 0.0;
    double dt = 0.1;
    double t_end = 150.0;
    Boundary boundary = Boundary::free;
    std::uint64_t seed = 0;
    int sample_every = 10;  // snapshot stride in steps

    void validate() const;  // throws ConfigError
    std::int64_t n_steps() const;
};

struct AgentState {
    double time = 0.0;
    std::vector<double> positions;
};

struct Trajectory {
    SimConfig config;
    std::vector<AgentState> snapshots;  // first at t = 0, then every sample_every steps
};

/// Signed displacement used in the pair interaction; on the torus this is
/// the minimal-image difference in (-L/2, L/2].
double wrap_displacement(double diff, double length);

/// N independent uniforms on [0, L) at t = 0, keyed by (seed, agent).
AgentState init_uniform(const SimConfig& config);

/// Pairwise attraction d_i = -(1/N) sum_j phi(|x_i - x_j|) (x_i - x_j).
/// Accumulated pairwise in a fixed order, so the force sum is exactly
/// antisymmetric and results are deterministic.
std::vector<double> drift(std::span<const double> positions, const ScaledInfluence& influence,
                          Boundary boundary, double length);

/// Clamp positions to the domain: free leaves them alone, periodic wraps
/// into [0, L), reflecting folds across 0 and L until inside.
void apply_boundary(std::span<double> positions, Boundary boundary, double length);

/// One explicit Euler step: x += drift dt + sigma xi, Var(xi) = dt, noise
/// keyed by (seed, step_index, agent). Advances time to (step_index + 1) dt.
AgentState euler_step(const AgentState& state, const SimConfig& config,
                      std::int64_t step_index);

/// Integrate to t_end, recording a snapshot at t = 0 and then every
/// sample_every steps.
Trajectory run(const SimConfig& config);

} // namespace oplab
