#include "egonets/dbcv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "egonets/kernels.hpp"
#include "egonets/rng.hpp"

namespace egonets {

namespace {

constexpr double kDistanceFloor = 1e-12;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Cluster {
    int label = 0;
    std::vector<std::size_t> members;           // original point indices
    std::vector<std::vector<double>> columns;   // per-dim member coordinates
    std::vector<double> core;                   // all-points core distance
    std::vector<char> internal;                 // MST degree >= 2
    double sparseness = 0.0;                    // DSC
};

double point_distance(const LabeledPointSet& data, std::size_t a, std::size_t b,
                      DistanceMetric metric) {
    const auto ra = data.row(a);
    const auto rb = data.row(b);
    double acc = 0.0;
    if (metric == DistanceMetric::euclidean) {
        for (std::size_t k = 0; k < data.d; ++k) {
            const double diff = ra[k] - rb[k];
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    for (std::size_t k = 0; k < data.d; ++k) acc += std::abs(ra[k] - rb[k]);
    return acc;
}

// Distances from member a to every cluster member, via the column-major
// gathered coordinates (SIMD-accelerated for the euclidean case).
void distances_to_members(const Cluster& c, const LabeledPointSet& data, std::size_t a,
                          DistanceMetric metric, std::vector<double>& out) {
    const std::size_t k = c.members.size();
    out.assign(k, 0.0);
    const auto query = data.row(c.members[a]);
    if (metric == DistanceMetric::euclidean) {
        for (std::size_t dim = 0; dim < data.d; ++dim) {
            kernels::sqdiff_accum(out.data(), c.columns[dim].data(), query[dim], k);
        }
        for (double& v : out) v = std::sqrt(v);
        return;
    }
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = point_distance(data, c.members[a], c.members[j], metric);
    }
}

// All-points core distance: inverse-distance power mean over the cluster,
// distances floored before inversion so duplicate points stay finite.
void compute_core_distances(Cluster& c, const LabeledPointSet& data, DistanceMetric metric) {
    const std::size_t k = c.members.size();
    const auto dim = static_cast<double>(data.d);
    c.core.assign(k, 0.0);
    std::vector<double> dist;
    for (std::size_t a = 0; a < k; ++a) {
        distances_to_members(c, data, a, metric, dist);
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == a) continue;
            sum += std::pow(1.0 / std::max(dist[j], kDistanceFloor), dim);
        }
        c.core[a] = std::pow(sum / static_cast<double>(k - 1), -1.0 / dim);
    }
}

// Prim MST over the cluster's mutual-reachability graph; marks internal
// nodes (degree >= 2) and records the density sparseness (max edge among
// internal-internal edges, falling back to the overall max for 2-point
// clusters). Mutual-reachability weights tie whenever a shared core
// distance dominates, and tied weights admit many spanning trees, so edge
// selection is canonical: minimize (weight, node index, parent index).
void build_internal_mst(Cluster& c, const LabeledPointSet& data, DistanceMetric metric) {
    const std::size_t k = c.members.size();
    std::vector<double> best(k, kInfinity);
    std::vector<std::size_t> parent(k, 0);
    std::vector<char> in_tree(k, 0);
    std::vector<int> degree(k, 0);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(k - 1);

    std::vector<double> dist;
    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t added = 1; added < k; ++added) {
        distances_to_members(c, data, current, metric, dist);
        for (std::size_t j = 0; j < k; ++j) {
            if (in_tree[j]) continue;
            const double w = std::max({c.core[current], c.core[j], dist[j]});
            if (w < best[j] || (w == best[j] && current < parent[j])) {
                best[j] = w;
                parent[j] = current;
            }
        }
        std::size_t pick = k;
        double pick_w = kInfinity;
        for (std::size_t j = 0; j < k; ++j) {
            if (!in_tree[j] && best[j] < pick_w) {
                pick_w = best[j];
                pick = j;
            }
        }
        in_tree[pick] = 1;
        ++degree[pick];
        ++degree[parent[pick]];
        edges.emplace_back(pick, parent[pick]);
        current = pick;
    }

    c.internal.assign(k, 0);
    for (std::size_t j = 0; j < k; ++j) c.internal[j] = degree[j] >= 2;

    double max_internal = -kInfinity;
    double max_all = -kInfinity;
    for (const auto& [a, b] : edges) {
        const double w = std::max({c.core[a], c.core[b],
                                   point_distance(data, c.members[a], c.members[b], metric)});
        max_all = std::max(max_all, w);
        if (c.internal[a] && c.internal[b]) max_internal = std::max(max_internal, w);
    }
    c.sparseness = max_internal > -kInfinity ? max_internal : max_all;
}

// Minimum mutual reachability between the internal nodes of two clusters;
// clusters without internal nodes contribute all their nodes.
double density_separation(const Cluster& a, const Cluster& b, const LabeledPointSet& data,
                          DistanceMetric metric) {
    const bool a_has = std::find(a.internal.begin(), a.internal.end(), 1) != a.internal.end();
    const bool b_has = std::find(b.internal.begin(), b.internal.end(), 1) != b.internal.end();
    double min_reach = kInfinity;
    std::vector<double> dist(b.members.size());
    for (std::size_t i = 0; i < a.members.size(); ++i) {
        if (a_has && !a.internal[i]) continue;
        const auto query = data.row(a.members[i]);
        if (metric == DistanceMetric::euclidean) {
            std::fill(dist.begin(), dist.end(), 0.0);
            for (std::size_t dim = 0; dim < data.d; ++dim) {
                kernels::sqdiff_accum(dist.data(), b.columns[dim].data(), query[dim],
                                      b.members.size());
            }
            for (double& v : dist) v = std::sqrt(v);
        } else {
            for (std::size_t j = 0; j < b.members.size(); ++j) {
                dist[j] = point_distance(data, a.members[i], b.members[j], metric);
            }
        }
        for (std::size_t j = 0; j < b.members.size(); ++j) {
            if (b_has && !b.internal[j]) continue;
            min_reach = std::min(min_reach, std::max({a.core[i], b.core[j], dist[j]}));
        }
    }
    return min_reach;
}

}  // namespace

DbcvScore dbcv_score(const LabeledPointSet& data, const DbcvOptions& options) {
    if (data.labels.size() != data.n || data.points.size() != data.n * data.d || data.d == 0) {
        throw std::invalid_argument("dbcv_score: inconsistent point-set shape");
    }

    std::map<int, std::vector<std::size_t>> by_label;
    std::size_t n_noise = 0;
    for (std::size_t i = 0; i < data.n; ++i) {
        if (data.labels[i] < 0) {
            ++n_noise;
        } else {
            by_label[data.labels[i]].push_back(i);
        }
    }
    if (by_label.empty()) throw std::invalid_argument("dbcv_score: all points are noise");

    std::vector<Cluster> clusters;
    clusters.reserve(by_label.size());
    for (auto& [label, members] : by_label) {
        if (members.size() < 2) {
            throw std::invalid_argument("dbcv_score: cluster " + std::to_string(label) +
                                        " has fewer than 2 points");
        }
        Cluster c;
        c.label = label;
        c.members = std::move(members);
        c.columns.assign(data.d, std::vector<double>(c.members.size()));
        for (std::size_t dim = 0; dim < data.d; ++dim) {
            for (std::size_t j = 0; j < c.members.size(); ++j) {
                c.columns[dim][j] = data.points[c.members[j] * data.d + dim];
            }
        }
        clusters.push_back(std::move(c));
    }

    for (auto& c : clusters) {
        compute_core_distances(c, data, options.metric);
        build_internal_mst(c, data, options.metric);
    }

    DbcvScore score;
    score.noise_fraction = static_cast<double>(n_noise) / static_cast<double>(data.n);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        double min_sep = kInfinity;
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (i == j) continue;
            min_sep = std::min(min_sep,
                               density_separation(clusters[i], clusters[j], data, options.metric));
        }
        double validity;
        if (min_sep == kInfinity) {
            validity = 1.0;  // lone cluster: separation is vacuous
        } else {
            const double denom = std::max(min_sep, clusters[i].sparseness);
            validity = denom > 0.0 ? (min_sep - clusters[i].sparseness) / denom : 0.0;
        }
        score.per_cluster[clusters[i].label] = validity;
        score.overall += validity * static_cast<double>(clusters[i].members.size()) /
                         static_cast<double>(data.n);
    }
    return score;
}

LabeledPointSet proportional_sample(const LabeledPointSet& data, std::size_t target_n,
                                    std::uint64_t seed) {
    if (data.labels.size() != data.n || data.points.size() != data.n * data.d) {
        throw std::invalid_argument("proportional_sample: inconsistent point-set shape");
    }
    if (target_n > data.n) throw std::invalid_argument("proportional_sample: target exceeds n");

    std::map<int, std::vector<std::size_t>> strata;
    std::size_t n_clusters = 0;
    for (std::size_t i = 0; i < data.n; ++i) strata[data.labels[i]].push_back(i);
    for (const auto& [label, members] : strata) {
        if (label >= 0) ++n_clusters;
    }
    if (target_n < 2 * n_clusters) {
        throw std::invalid_argument("proportional_sample: target would collapse clusters");
    }

    // Largest-remainder allocation of target_n across strata.
    struct Share {
        int label;
        std::size_t size;
        std::size_t base;
        double remainder;
    };
    std::vector<Share> shares;
    std::size_t assigned = 0;
    for (const auto& [label, members] : strata) {
        const double quota = static_cast<double>(target_n) * static_cast<double>(members.size()) /
                             static_cast<double>(data.n);
        const auto base = static_cast<std::size_t>(quota);
        shares.push_back(Share{label, members.size(), base, quota - static_cast<double>(base)});
        assigned += base;
    }
    std::vector<std::size_t> order(shares.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (shares[a].remainder != shares[b].remainder) {
            return shares[a].remainder > shares[b].remainder;
        }
        if (shares[a].size != shares[b].size) return shares[a].size > shares[b].size;
        return shares[a].label < shares[b].label;
    });
    // Hand out the leftover by descending remainder, skipping full strata.
    while (assigned < target_n) {
        bool progressed = false;
        for (const std::size_t idx : order) {
            if (assigned == target_n) break;
            if (shares[idx].base < shares[idx].size) {
                ++shares[idx].base;
                ++assigned;
                progressed = true;
            }
        }
        if (!progressed) break;
    }

    // Partial Fisher-Yates per stratum, in label order, off one seeded stream.
    Rng rng(seed);
    std::vector<std::size_t> selected;
    selected.reserve(target_n);
    std::size_t share_idx = 0;
    for (const auto& [label, members] : strata) {
        const std::size_t take = std::min(shares[share_idx++].base, members.size());
        std::vector<std::size_t> pool = members;
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + rng.bounded(pool.size() - i);
            std::swap(pool[i], pool[j]);
            selected.push_back(pool[i]);
        }
    }
    std::sort(selected.begin(), selected.end());

    LabeledPointSet out;
    out.n = selected.size();
    out.d = data.d;
    out.points.reserve(out.n * out.d);
    out.labels.reserve(out.n);
    for (const std::size_t idx : selected) {
        const auto row = data.row(idx);
        out.points.insert(out.points.end(), row.begin(), row.end());
        out.labels.push_back(data.labels[idx]);
    }
    return out;
}

}  // namespace egonets
