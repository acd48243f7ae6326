#pragma once
// One-dimensional Mean Shift with a flat kernel over contact-frequency
// values. Clusters become rings, ordered by descending mean frequency; the
// cluster count is chosen by the algorithm.

#include <span>
#include <vector>

namespace egonets {

struct MeanShiftParams {
    // <= 0 estimates the bandwidth from the data (nearest-neighbor quantile).
    double bandwidth = 0.0;
    double bandwidth_quantile = 0.3;
    int max_iterations = 300;
    // Convergence threshold as a fraction of the data range.
    double tolerance = 1e-6;
    bool log_scale = false;
};

struct MeanShiftResult {
    // labels[i] is the ring of frequencies[i]; ring 0 has the highest mean.
    std::vector<int> labels;
    std::vector<double> modes;       // per ring, descending
    std::vector<double> ring_means;  // mean of member values per ring, descending
    double bandwidth = 0.0;

    int ring_count() const { return static_cast<int>(modes.size()); }
};

// Mean distance to the k-th nearest neighbor, k = floor(n * quantile),
// clamped to [1, n-1]. Returns 0 when all values coincide or n == 1.
double estimate_bandwidth(std::span<const double> values, double quantile);

// Throws std::invalid_argument on empty input (empty active network).
MeanShiftResult mean_shift_rings(std::span<const double> frequencies,
                                 const MeanShiftParams& params = {});

}  // namespace egonets
