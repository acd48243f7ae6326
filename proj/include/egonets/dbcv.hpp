#pragma once
// Density-Based Clustering Validation index (Moulavi et al. 2014): all-points
// core distances, mutual-reachability weights, per-cluster internal MSTs, and
// size-weighted aggregation. Noise points (label -1) count in the total mass
// but form no cluster.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace egonets {

struct LabeledPointSet {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> points;  // row-major n x d
    std::vector<int> labels;     // -1 = noise

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(points.data() + i * d, d);
    }
};

enum class DistanceMetric : std::uint8_t { euclidean, manhattan };

struct DbcvOptions {
    DistanceMetric metric = DistanceMetric::euclidean;
};

struct DbcvScore {
    double overall = 0.0;                // in [-1, 1]
    std::map<int, double> per_cluster;   // cluster id -> V_C
    double noise_fraction = 0.0;
};

// Throws std::invalid_argument when shapes are inconsistent, every point is
// noise, or a cluster has fewer than 2 points.
DbcvScore dbcv_score(const LabeledPointSet& data, const DbcvOptions& options = {});

// Subsample with per-cluster counts proportional to cluster sizes
// (largest-remainder rounding); noise is a stratum too. Deterministic given
// the seed. Throws when target_n exceeds n or would collapse clusters
// (target_n < 2 * cluster count).
LabeledPointSet proportional_sample(const LabeledPointSet& data, std::size_t target_n,
                                    std::uint64_t seed);

}  // namespace egonets
