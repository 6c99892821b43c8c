#pragma once

#include <map>
#include <span>
#include <vector>

#include "oplab/sde.hpp"

namespace oplab {

/// One detected cluster: member agent indices, their mean position, and the
/// factor-2 empirical width (zero for singletons, where it is undefined).
struct Cluster {
    std::vector<int> member_ids;
    double center = 0.0;
    int mass_count = 0;
    double width = 0.0;
};

struct ClusterSet {
    double time = 0.0;
    std::vector<Cluster> clusters;  // sorted by center
};

/// Factor-2 empirical width sqrt( 2/(n-1) sum (x - mean)^2 ). The factor 2
/// makes the estimator converge to the width of the stationary Gaussian
/// cluster profile. Throws DegenerateCluster for fewer than two members.
double cluster_width(std::span<const double> members);

/// Gap clustering: sort positions and cut wherever neighbours are more than
/// `gap` apart. On a periodic domain the largest circular gap is always cut
/// first, so a cluster straddling 0 == L is kept whole.
ClusterSet detect_clusters(std::span<const double> positions, double gap,
                           Boundary boundary = Boundary::free, double length = 0.0);
ClusterSet detect_clusters(const AgentState& state, double gap,
                           Boundary boundary = Boundary::free, double length = 0.0);

struct CenterPoint {
    double time = 0.0;
    double center = 0.0;
    int mass = 0;
    double width = 0.0;
};

struct MergeEvent {
    double time = 0.0;
    int absorbed = -1;
    int survivor = -1;
};

/// Per-label center paths plus the merge events that ended the absorbed
/// labels. Each series covers a contiguous run of snapshots.
struct CenterSeries {
    std::map<int, std::vector<CenterPoint>> series;
    std::vector<MergeEvent> merges;
};

struct TrackingParams {
    double gap = 0.5;
    double match_radius = 1.0;  // centers match across snapshots within this distance
    Boundary boundary = Boundary::free;
    double length = 0.0;
};

/// Track detected clusters across snapshots. Consecutive snapshots are
/// matched by nearest center within match_radius; when two labels land on
/// one cluster the larger mass keeps the label (tie: smaller label) and a
/// merge event is recorded.
CenterSeries track_centers(std::span<const AgentState> snapshots, const TrackingParams& params);
CenterSeries track_centers(const Trajectory& trajectory, double gap);

/// Sum of squared center increments over snapshot steps inside [t0, t1].
double quadratic_variation(std::span<const CenterPoint> series, double t0, double t1);

/// Mean width (over clusters with >= 2 members) per snapshot; NaN where no
/// such cluster exists.
std::vector<double> mean_width_series(std::span<const AgentState> snapshots, double gap,
                                      Boundary boundary, double length);

/// Empirical clustering onset: first time the mean-width series dips below
/// the midpoint (max + min)/2 of the series. Throws NoOnset when the series
/// never makes a meaningful descent (max - min <= 0.2 max).
double onset_time_empirical(std::span<const AgentState> snapshots, double gap,
                            Boundary boundary, double length);
double onset_time_empirical(const Trajectory& trajectory, double gap);

} // namespace oplab
