#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dietclust/kmeans.hpp"

namespace dietclust {

/// Davies-Bouldin decomposition: dispersion delta_k is the mean Euclidean
/// distance of a cluster's members to their barycenter, Delta_kk' the distance
/// between barycenters, M_k the worst similarity ratio against any other
/// cluster, and the index the mean of the M_k. Lower is better.
template <typename S>
struct DbBreakdown {
    VectorX<S> dispersion;          ///< delta_k
    MatrixX<S> barycenter_distance; ///< Delta_kk', symmetric, zero diagonal
    VectorX<S> worst_ratio;         ///< M_k = max_{k' != k} (delta_k + delta_k') / Delta_kk'
    S index;                        ///< mean of worst_ratio
};

/// Davies-Bouldin index of an arbitrary labeling. Barycenters are recomputed
/// from the assignments, so the input need not come from a converged fit.
template <typename DP>
DbBreakdown<typename DP::Scalar> davies_bouldin(const Eigen::MatrixBase<DP>& points,
                                                const std::vector<int>& labels, int k) {
    using S = typename DP::Scalar;
    const Index n = points.rows();
    if (k < 2) throw TooFewClusters("Davies-Bouldin needs k >= 2, got " + std::to_string(k));
    if (labels.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch("labels length vs point count");

    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (int a : labels) {
        if (a < 0 || a >= k) throw InvalidConfig("cluster label out of range");
        ++counts[static_cast<std::size_t>(a)];
    }
    for (int j = 0; j < k; ++j)
        if (counts[static_cast<std::size_t>(j)] == 0)
            throw TooFewClusters("cluster " + std::to_string(j) + " has no members");

    MatrixX<S> barycenters = MatrixX<S>::Zero(k, points.cols());
    for (Index i = 0; i < n; ++i) barycenters.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
    for (int j = 0; j < k; ++j) barycenters.row(j) /= static_cast<S>(counts[static_cast<std::size_t>(j)]);

    DbBreakdown<S> out;
    out.dispersion = VectorX<S>::Zero(k);
    for (Index i = 0; i < n; ++i) {
        const int j = labels[static_cast<std::size_t>(i)];
        out.dispersion[j] += (points.row(i) - barycenters.row(j)).norm();
    }
    for (int j = 0; j < k; ++j) out.dispersion[j] /= static_cast<S>(counts[static_cast<std::size_t>(j)]);

    out.barycenter_distance = MatrixX<S>::Zero(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            const S d = (barycenters.row(a) - barycenters.row(b)).norm();
            if (d == S(0)) throw CoincidentBarycenters(a, b);
            out.barycenter_distance(a, b) = out.barycenter_distance(b, a) = d;
        }
    }

    out.worst_ratio = VectorX<S>::Zero(k);
    for (int a = 0; a < k; ++a) {
        S worst = S(0);
        for (int b = 0; b < k; ++b) {
            if (b == a) continue;
            const S r = (out.dispersion[a] + out.dispersion[b]) / out.barycenter_distance(a, b);
            worst = std::max(worst, r);
        }
        out.worst_ratio[a] = worst;
    }
    // sum in sorted order so relabeling the clusters cannot change the index
    std::vector<S> sorted(out.worst_ratio.data(), out.worst_ratio.data() + k);
    std::sort(sorted.begin(), sorted.end());
    S total = S(0);
    for (S v : sorted) total += v;
    out.index = total / static_cast<S>(k);
    return out;
}

template <typename DP, typename S>
DbBreakdown<S> davies_bouldin(const Eigen::MatrixBase<DP>& points, const Clustering<S>& clustering) {
    return davies_bouldin(points, clustering.assignments, clustering.k);
}

struct KSweepEntry {
    int k = 0;
    bool ok = false;
    double db = 0;
    double inertia = 0;
    std::uint64_t seed = 0; ///< per-k derived seed the fit ran with
    int iterations = 0;
    std::string error;      ///< set when ok is false
};

struct KSweepResult {
    std::vector<KSweepEntry> entries; ///< ascending k, one per k in range
    int k_min = 0;
    int k_max = 0;
    std::optional<int> suggested_k;   ///< elbow heuristic, never binding
};

/// Elbow heuristic: the k maximizing the discrete second difference of the DB
/// curve (needs three consecutive successful entries). A judgment call, not a
/// decision; callers must confirm or override.
inline std::optional<int> suggest_elbow(const std::vector<KSweepEntry>& entries) {
    std::optional<int> best_k;
    double best_d2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < entries.size(); ++i) {
        const KSweepEntry& a = entries[i - 1];
        const KSweepEntry& b = entries[i];
        const KSweepEntry& c = entries[i + 1];
        if (!a.ok || !b.ok || !c.ok) continue;
        if (a.k + 1 != b.k || b.k + 1 != c.k) continue;
        const double d2 = a.db - 2.0 * b.db + c.db;
        if (d2 > best_d2) {
            best_d2 = d2;
            best_k = b.k;
        }
    }
    return best_k;
}

/// Fit K-Means and score DB for every k in [k_min, k_max]. Each k gets the
/// derived seed derive_seed(base.seed, k), so entries are independent of
/// evaluation order. A k whose fit or scoring fails is recorded as failed.
template <typename DP>
KSweepResult sweep_k(const Eigen::MatrixBase<DP>& points, int k_min, int k_max,
                     const KMeansConfig& base_config) {
    if (k_min < 2 || k_min > k_max || static_cast<Index>(k_max) > points.rows())
        throw InvalidKRange(k_min, k_max, points.rows());

    KSweepResult result;
    result.k_min = k_min;
    result.k_max = k_max;
    for (int k = k_min; k <= k_max; ++k) {
        KMeansConfig config = base_config;
        config.k = k;
        config.seed = derive_seed(base_config.seed, static_cast<std::uint64_t>(k));
        KSweepEntry entry;
        entry.k = k;
        entry.seed = config.seed;
        try {
            auto clustering = fit_kmeans(points, config);
            entry.db = static_cast<double>(davies_bouldin(points, clustering).index);
            entry.inertia = static_cast<double>(clustering.inertia);
            entry.iterations = clustering.iterations;
            entry.ok = true;
        } catch (const Error& e) {
            entry.error = e.what();
        }
        result.entries.push_back(std::move(entry));
    }
    result.suggested_k = suggest_elbow(result.entries);
    return result;
}

} // namespace dietclust
