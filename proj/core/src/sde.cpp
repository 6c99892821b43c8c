#include "oplab/sde.hpp"

#include <cmath>

#include "oplab/errors.hpp"
#include "oplab/rng.hpp"

namespace oplab {

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::free: return "free";
        case Boundary::reflecting: return "reflecting";
        case Boundary::periodic: return "periodic";
    }
    return "free";
}

Boundary boundary_from_string(const std::string& name) {
    if (name == "free") return Boundary::free;
    if (name == "reflecting") return Boundary::reflecting;
    if (name == "periodic") return Boundary::periodic;
    throw ConfigError("boundary: expected free|reflecting|periodic, got '" + name + "'");
}

void SimConfig::validate() const {
    if (n_agents < 2) throw ConfigError("n_agents: must be >= 2");
    if (!(length > 0.0)) throw ConfigError("length: must be positive");
    if (!(influence.radius > 0.0)) throw ConfigError("radius: must be positive");
    if (sigma < 0.0) throw ConfigError("sigma: must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
    if (t_end < dt) throw ConfigError("t_end: must be >= dt");
    if (sample_every < 1) throw ConfigError("sample_every: must be >= 1");
}

std::int64_t SimConfig::n_steps() const {
    return std::llround(t_end / dt);
}

double wrap_displacement(double diff, double length) {
    const double r = std::remainder(diff, length);
    return r <= -0.5 * length ? r + length : r;
}

AgentState init_uniform(const SimConfig& config) {
    AgentState state;
    state.time = 0.0;
    state.positions.resize(config.n_agents);
    for (int i = 0; i < config.n_agents; ++i) {
        state.positions[i] =
            config.length * keyed_uniform(config.seed, RngDomain::init, 0,
                                          static_cast<std::uint64_t>(i));
    }
    return state;
}

std::vector<double> drift(std::span<const double> positions, const ScaledInfluence& influence,
                          Boundary boundary, double length) {
    const std::size_t n = positions.size();
    const double radius = influence.radius;
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double diff = positions[i] - positions[j];
            if (boundary == Boundary::periodic) {
                diff = wrap_displacement(diff, length);
            }
            const double dist = std::fabs(diff);
            if (dist > radius) {
                continue;  // outside the influence support, exactly zero
            }
            const double pull = influence.shape(dist / radius) * diff;
            d[i] -= pull;
            d[j] += pull;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : d) {
        v *= inv_n;
    }
    return d;
}

void apply_boundary(std::span<double> positions, Boundary boundary, double length) {
    switch (boundary) {
        case Boundary::free:
            return;
        case Boundary::periodic:
            for (auto& x : positions) {
                x = std::fmod(x, length);
                if (x < 0.0) {
                    x += length;
                }
            }
            return;
        case Boundary::reflecting:
            // Fold over the period-2L triangle wave; equivalent to repeated
            // reflection across 0 and L.
            for (auto& x : positions) {
                double m = std::fmod(x, 2.0 * length);
                if (m < 0.0) {
                    m += 2.0 * length;
                }
                x = m <= length ? m : 2.0 * length - m;
            }
            return;
    }
}

AgentState euler_step(const AgentState& state, const SimConfig& config,
                      std::int64_t step_index) {
    AgentState next;
    next.positions = state.positions;
    const auto d = drift(next.positions, config.influence, config.boundary, config.length);
    const double root_dt = std::sqrt(config.dt);
    for (std::size_t i = 0; i < next.positions.size(); ++i) {
        double dx = d[i] * config.dt;
        if (config.sigma > 0.0) {
            dx += config.sigma * root_dt *
                  keyed_gaussian(config.seed, RngDomain::noise,
                                 static_cast<std::uint64_t>(step_index),
                                 static_cast<std::uint64_t>(i));
        }
        next.positions[i] += dx;
    }
    apply_boundary(next.positions, config.boundary, config.length);
    next.time = static_cast<double>(step_index + 1) * config.dt;
    return next;
}

Trajectory run(const SimConfig& config) {
    config.validate();
    Trajectory traj;
    traj.config = config;
    AgentState state = init_uniform(config);
    const std::int64_t steps = config.n_steps();
    traj.snapshots.reserve(static_cast<std::size_t>(steps / config.sample_every) + 2);
    traj.snapshots.push_back(state);
    for (std::int64_t step = 0; step < steps; ++step) {
        state = euler_step(state, config, step);
        if ((step + 1) % config.sample_every == 0) {
            traj.snapshots.push_back(state);
        }
    }
    return traj;
}

} // namespace oplab
