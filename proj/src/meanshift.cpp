#include "egonets/meanshift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace egonets {

double estimate_bandwidth(std::span<const double> values, double quantile) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    std::vector<double> xs(values.begin(), values.end());
    std::sort(xs.begin(), xs.end());
    const auto k = std::clamp<std::size_t>(
        static_cast<std::size_t>(static_cast<double>(n) * quantile), 1, n - 1);
    // k-th nearest neighbor of xs[i] lies in some window of k+1 consecutive
    // sorted values containing i; minimize the window reach over placements.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j_lo = i >= k ? i - k : 0;
        const std::size_t j_hi = std::min(i, n - 1 - k);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            best = std::min(best, std::max(xs[i] - xs[j], xs[j + k] - xs[i]));
        }
        total += best;
    }
    return total / static_cast<double>(n);
}

namespace {

struct Mode {
    double position;
    double weight;  // number of data points that converged here
};

// One flat-kernel update: mean of sorted values within [m - h, m + h].
double shift_once(const std::vector<double>& xs, const std::vector<double>& prefix, double m,
                  double h) {
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), m - h) - xs.begin());
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), m + h) - xs.begin());
    if (hi <= lo) return m;  // unreachable for in-hull starts; keep total
    return (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
}

double converge(const std::vector<double>& xs, const std::vector<double>& prefix, double m,
                double h, double tol, int max_iterations) {
    for (int it = 0; it < max_iterations; ++it) {
        const double next = shift_once(xs, prefix, m, h);
        const double step = std::abs(next - m);
        m = next;
        if (step == 0.0 || step < tol) break;
    }
    return m;
}

// Groups modes closer than h/2 into their weighted mean.
std::vector<Mode> merge_modes(std::vector<Mode> modes, double h) {
    std::sort(modes.begin(), modes.end(),
              [](const Mode& a, const Mode& b) { return a.position < b.position; });
    std::vector<Mode> out;
    for (const Mode& m : modes) {
        if (!out.empty() && m.position - out.back().position < h / 2.0) {
            Mode& last = out.back();
            const double w = last.weight + m.weight;
            last.position = (last.position * last.weight + m.position * m.weight) / w;
            last.weight = w;
        } else {
            out.push_back(m);
        }
    }
    return out;
}

}  // namespace

MeanShiftResult mean_shift_rings(std::span<const double> frequencies,
                                 const MeanShiftParams& params) {
    if (frequencies.empty()) {
        throw std::invalid_argument("mean_shift_rings: empty active network");
    }
    const std::size_t n = frequencies.size();

    std::vector<double> data(frequencies.begin(), frequencies.end());
    if (params.log_scale) {
        for (double& v : data) {
            if (!(v > 0.0)) throw std::invalid_argument("mean_shift_rings: log scale needs positive values");
            v = std::log(v);
        }
    }

    std::vector<double> xs = data;
    std::sort(xs.begin(), xs.end());
    const double range = xs.back() - xs.front();

    MeanShiftResult result;
    result.bandwidth = params.bandwidth > 0.0
                           ? params.bandwidth
                           : estimate_bandwidth(xs, params.bandwidth_quantile);

    // Zero spread or zero bandwidth: a single ring holds everything.
    if (range == 0.0 || result.bandwidth <= 0.0) {
        result.labels.assign(n, 0);
        result.modes = {xs.front()};
        double mean_value = 0.0;
        for (double v : frequencies) mean_value += v;
        result.ring_means = {mean_value / static_cast<double>(n)};
        if (params.log_scale) result.modes = {std::exp(xs.front())};
        return result;
    }

    const double h = result.bandwidth;
    const double tol = params.tolerance * range;

    std::vector<double> prefix(n + 1, 0.0);
    std::partial_sum(xs.begin(), xs.end(), prefix.begin() + 1);

    // Seed one mode per distinct value, weighted by multiplicity.
    std::vector<Mode> modes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && xs[j] == xs[i]) ++j;
        modes.push_back(Mode{converge(xs, prefix, xs[i], h, tol, params.max_iterations),
                             static_cast<double>(j - i)});
        i = j;
    }

    // Merged modes are re-converged until merging is the identity, so every
    // surviving mode is a fixed point of the shift.
    for (int round = 0; round < 100; ++round) {
        std::vector<Mode> merged = merge_modes(modes, h);
        bool settled = merged.size() == modes.size();
        for (Mode& m : merged) {
            const double converged = converge(xs, prefix, m.position, h, tol, params.max_iterations);
            if (std::abs(converged - m.position) >= tol) settled = false;
            m.position = converged;
        }
        modes = std::move(merged);
        if (settled) break;
    }

    // Assign each value to the nearest mode; ties go to the higher mode.
    std::vector<double> positions;
    positions.reserve(modes.size());
    for (const Mode& m : modes) positions.push_back(m.position);

    std::vector<int> mode_of(n);
    std::vector<std::size_t> member_count(positions.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = data[i];
        auto it = std::lower_bound(positions.begin(), positions.end(), v);
        std::size_t pick;
        if (it == positions.begin()) {
            pick = 0;
        } else if (it == positions.end()) {
            pick = positions.size() - 1;
        } else {
            const auto right = static_cast<std::size_t>(it - positions.begin());
            const std::size_t left = right - 1;
            pick = (positions[right] - v <= v - positions[left]) ? right : left;
        }
        mode_of[i] = static_cast<int>(pick);
        ++member_count[pick];
    }

    // Order non-empty clusters by descending mean of their member values.
    std::vector<double> sums(positions.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) sums[static_cast<std::size_t>(mode_of[i])] += frequencies[i];
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < positions.size(); ++c) {
        if (member_count[c] > 0) order.push_back(c);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sums[a] / static_cast<double>(member_count[a]) >
               sums[b] / static_cast<double>(member_count[b]);
    });

    std::vector<int> ring_of_mode(positions.size(), -1);
    for (std::size_t r = 0; r < order.size(); ++r) {
        ring_of_mode[order[r]] = static_cast<int>(r);
        const std::size_t c = order[r];
        result.ring_means.push_back(sums[c] / static_cast<double>(member_count[c]));
        result.modes.push_back(params.log_scale ? std::exp(positions[c]) : positions[c]);
    }
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.labels[i] = ring_of_mode[static_cast<std::size_t>(mode_of[i])];
    }
    return result;
}

}  // namespace egonets
