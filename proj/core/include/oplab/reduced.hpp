#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oplab/rng.hpp"
#include "oplab/sde.hpp"
#include "oplab/stability.hpp"

namespace oplab {

/// Macroscopic cluster: center position, agent mass fraction, stationary width.
struct ReducedCluster {
    double center = 0.0;
    double mass = 0.0;   // fraction of all agents, in (0, 1]
    double width = 0.0;  // sigma / sqrt(mass phi0(0))
};

struct ReducedParams {
    double sigma = 0.1;
    int n_agents = 500;
    double radius = 1.0;       // collision distance R0
    double phi0_at_zero = 1.0;
    double length = 10.0;
    Boundary boundary = Boundary::periodic;
};

/// Cluster list sorted by center; total mass is conserved across merges.
struct ReducedState {
    double time = 0.0;
    std::vector<ReducedCluster> clusters;
    ReducedParams params;

    double total_mass() const;
    void sort_by_center();
};

struct ReducedMergeEvent {
    double time = 0.0;
    int merged_a = -1;  // indices in the sorted state at merge time, a < b
    int merged_b = -1;
    double new_center = 0.0;
    double new_mass = 0.0;
    double new_width = 0.0;
};

enum class ReducedOutcome { consensus, frozen, timed_out };

struct MergeLog {
    std::vector<ReducedMergeEvent> events;
    ReducedOutcome outcome = ReducedOutcome::timed_out;
    double final_time = 0.0;
    ReducedState final_state;
};

/// Seed the reduced dynamics from a stability report: round(count) clusters
/// at the predicted spacing, each with mass m_c and the stationary width.
/// Throws NotUnstable for a stable-regime report.
ReducedState init_from_report(const StabilityReport& report, const ReducedParams& params);

/// Independent Brownian increments for every center, variance
/// sigma^2 dt / (N mass); widths and masses unchanged.
void step_centers(ReducedState& state, double dt, Rng& rng);

/// Pair of clusters at minimal center distance if that distance is <= R0;
/// ties break toward the smallest indices.
std::optional<std::pair<int, int>> detect_collision(const ReducedState& state);

/// Merge clusters k and l: mass-weighted center, summed mass, width reset to
/// the stationary value of the merged mass.
ReducedMergeEvent merge(ReducedState& state, int k, int l);

/// Alternate Brownian steps with collision handling (chained merges run at
/// one time stamp) until a single cluster remains or t_max passes. A
/// noiseless state with no collisions is reported frozen immediately.
MergeLog run_to_consensus(ReducedState state, double dt, Rng& rng, double t_max);

/// Step size heuristic: dt = 0.1 N base_dt, halved until the per-step center
/// displacement stays below R0/10 so collisions cannot be tunneled through.
double default_reduced_dt(const ReducedState& state, double base_dt = 0.1);

/// Post-collision relaxation of two equal-mass clusters under the pair ODE;
/// returns (t, distance) samples. Used to justify treating merges as
/// instantaneous, not part of run_to_consensus.
std::vector<std::pair<double, double>> merge_relaxation(double xk, double xl, double m_c,
                                                        const ScaledInfluence& influence,
                                                        double dt = 1e-3, double t_end = 4.0);

} // namespace oplab
