#include "oplab/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

Cluster make_cluster(const std::vector<int>& ids, std::span<const double> coords,
                     std::size_t begin, std::size_t end, double wrap_length) {
    Cluster c;
    c.member_ids.assign(ids.begin() + begin, ids.begin() + end);
    c.mass_count = static_cast<int>(end - begin);
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
        sum += coords[k];
    }
    c.center = sum / c.mass_count;
    if (c.mass_count >= 2) {
        double ss = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const double d = coords[k] - c.center;
            ss += d * d;
        }
        c.width = std::sqrt(2.0 * ss / (c.mass_count - 1));
    }
    if (wrap_length > 0.0) {
        c.center = std::fmod(c.center, wrap_length);
        if (c.center < 0.0) {
            c.center += wrap_length;
        }
    }
    return c;
}

double center_distance(double a, double b, Boundary boundary, double length) {
    double d = std::fabs(a - b);
    if (boundary == Boundary::periodic && length > 0.0) {
        d = std::min(d, length - d);
    }
    return d;
}

} // namespace

double cluster_width(std::span<const double> members) {
    const std::size_t n = members.size();
    if (n < 2) {
        throw DegenerateCluster("cluster_width: need at least two members");
    }
    const double mean = std::accumulate(members.begin(), members.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : members) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(2.0 * ss / (n - 1));
}

ClusterSet detect_clusters(std::span<const double> positions, double gap,
                           Boundary boundary, double length) {
    if (!(gap > 0.0)) {
        throw std::invalid_argument("detect_clusters: gap must be positive");
    }
    ClusterSet set;
    const std::size_t n = positions.size();
    if (n == 0) {
        return set;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return positions[a] < positions[b]; });

    std::vector<int> ids(n);
    std::vector<double> coords(n);

    double wrap_length = 0.0;
    if (boundary == Boundary::periodic && length > 0.0 && n > 1) {
        // Start the sweep just past the largest circular gap; members that
        // wrap past L are unwrapped by +L so each cluster is contiguous.
        std::size_t cut = n - 1;  // gap between order[n-1] and order[0] + L
        double widest = positions[order[0]] + length - positions[order[n - 1]];
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double g = positions[order[k + 1]] - positions[order[k]];
            if (g > widest) {
                widest = g;
                cut = k;
            }
        }
        const std::size_t start = (cut + 1) % n;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t src = (start + k) % n;
            ids[k] = order[src];
            coords[k] = positions[order[src]] + (start + k >= n ? length : 0.0);
        }
        wrap_length = length;
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            ids[k] = order[k];
            coords[k] = positions[order[k]];
        }
    }

    std::size_t begin = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (coords[k] - coords[k - 1] > gap) {
            set.clusters.push_back(make_cluster(ids, coords, begin, k, wrap_length));
            begin = k;
        }
    }
    set.clusters.push_back(make_cluster(ids, coords, begin, n, wrap_length));
    std::sort(set.clusters.begin(), set.clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.center < b.center; });
    return set;
}

ClusterSet detect_clusters(const AgentState& state, double gap,
                           Boundary boundary, double length) {
    ClusterSet set = detect_clusters(std::span<const double>(state.positions), gap,
                                     boundary, length);
    set.time = state.time;
    return set;
}

CenterSeries track_centers(std::span<const AgentState> snapshots, const TrackingParams& params) {
    if (snapshots.size() < 2) {
        throw std::invalid_argument("track_centers: need at least two snapshots");
    }
    CenterSeries out;

    struct Active {
        int label;
        double center;
        int mass;
    };
    std::vector<Active> active;
    int next_label = 0;

    auto append_point = [&](int label, double time, const Cluster& c) {
        out.series[label].push_back({time, c.center, c.mass_count, c.width});
    };

    {
        const ClusterSet first =
            detect_clusters(snapshots[0], params.gap, params.boundary, params.length);
        for (const Cluster& c : first.clusters) {
            active.push_back({next_label, c.center, c.mass_count});
            append_point(next_label, first.time, c);
            ++next_label;
        }
    }

    for (std::size_t s = 1; s < snapshots.size(); ++s) {
        const ClusterSet now =
            detect_clusters(snapshots[s], params.gap, params.boundary, params.length);

        // Each live label claims its nearest current cluster within range.
        std::vector<std::vector<std::size_t>> claims(now.clusters.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < now.clusters.size(); ++c) {
                const double d = center_distance(active[a].center, now.clusters[c].center,
                                                 params.boundary, params.length);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            if (best <= params.match_radius && !now.clusters.empty()) {
                claims[best_c].push_back(a);
            }
        }

        std::vector<Active> next_active;
        for (std::size_t c = 0; c < now.clusters.size(); ++c) {
            const Cluster& cluster = now.clusters[c];
            if (claims[c].empty()) {
                next_active.push_back({next_label, cluster.center, cluster.mass_count});
                append_point(next_label, now.time, cluster);
                ++next_label;
                continue;
            }
            // Larger mass keeps the label; ties go to the smaller label.
            std::size_t winner = claims[c][0];
            for (std::size_t idx : claims[c]) {
                if (active[idx].mass > active[winner].mass ||
                    (active[idx].mass == active[winner].mass &&
                     active[idx].label < active[winner].label)) {
                    winner = idx;
                }
            }
            for (std::size_t idx : claims[c]) {
                if (idx != winner) {
                    out.merges.push_back({now.time, active[idx].label, active[winner].label});
                }
            }
            next_active.push_back({active[winner].label, cluster.center, cluster.mass_count});
            append_point(active[winner].label, now.time, cluster);
        }
        active = std::move(next_active);
    }
    return out;
}

CenterSeries track_centers(const Trajectory& trajectory, double gap) {
    TrackingParams params;
    params.gap = gap;
    params.match_radius = trajectory.config.influence.radius;
    params.boundary = trajectory.config.boundary;
    params.length = trajectory.config.length;
    return track_centers(std::span<const AgentState>(trajectory.snapshots), params);
}

double quadratic_variation(std::span<const CenterPoint> series, double t0, double t1) {
    constexpr double eps = 1e-9;
    double qv = 0.0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        if (series[i].time >= t0 - eps && series[i + 1].time <= t1 + eps) {
            const double inc = series[i + 1].center - series[i].center;
            qv += inc * inc;
        }
    }
    return qv;
}

std::vector<double> mean_width_series(std::span<const AgentState> snapshots, double gap,
                                      Boundary boundary, double length) {
    std::vector<double> widths;
    widths.reserve(snapshots.size());
    for (const AgentState& snap : snapshots) {
        const ClusterSet set = detect_clusters(snap, gap, boundary, length);
        double sum = 0.0;
        int count = 0;
        for (const Cluster& c : set.clusters) {
            if (c.mass_count >= 2) {
                sum += c.width;
                ++count;
            }
        }
        widths.push_back(count > 0 ? sum / count
                                   : std::numeric_limits<double>::quiet_NaN());
    }
    return widths;
}

double onset_time_empirical(std::span<const AgentState> snapshots, double gap,
                            Boundary boundary, double length) {
    if (snapshots.size() < 2) {
        throw std::invalid_argument("onset_time_empirical: need at least two snapshots");
    }
    const std::vector<double> widths = mean_width_series(snapshots, gap, boundary, length);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double w : widths) {
        if (std::isnan(w)) {
            continue;
        }
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    if (!std::isfinite(hi) || hi - lo <= 0.2 * hi) {
        // The series never collapses; a flat or noisy-flat width curve is
        // not an onset.
        throw NoOnset("onset_time_empirical: width series shows no clustering transition");
    }
    const double midpoint = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (!std::isnan(widths[i]) && widths[i] < midpoint) {
            return snapshots[i].time;
        }
    }
    throw NoOnset("onset_time_empirical: width series never crosses the midpoint");
}

double onset_time_empirical(const Trajectory& trajectory, double gap) {
    return onset_time_empirical(std::span<const AgentState>(trajectory.snapshots), gap,
                                trajectory.config.boundary, trajectory.config.length);
}

} // namespace oplab
