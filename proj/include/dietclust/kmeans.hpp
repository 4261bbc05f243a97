#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dietclust/numerics.hpp"
#include "dietclust/rng.hpp"

namespace dietclust {

enum class InitStrategy { random_points, kmeanspp };

struct KMeansConfig {
    int k = 1;
    std::uint64_t seed = 0;
    int max_iterations = 300;
    double movement_tolerance = 1e-9; ///< stop when no centroid moves further than this
    int restarts = 32;
    InitStrategy init = InitStrategy::random_points;
};

template <typename S>
struct Clustering {
    int k = 0;
    MatrixX<S> centroids;           ///< k x d; row j is the mean of cluster j's members
    std::vector<int> assignments;   ///< per point, in [0, k); no cluster empty
    S inertia = S(0);               ///< sum of squared point-to-centroid distances
    int iterations = 0;
    std::uint64_t seed_used = 0;    ///< derived seed of the winning restart
    std::vector<S> inertia_history; ///< inertia after each update step of the winning run
};

/// Nearest centroid per point (squared Euclidean); ties go to the lowest
/// centroid index.
template <typename DC, typename DP>
std::vector<int> assign(const Eigen::MatrixBase<DC>& centroids,
                        const Eigen::MatrixBase<DP>& points) {
    using S = typename DP::Scalar;
    if (centroids.cols() != points.cols())
        throw DimensionMismatch("centroids have " + std::to_string(centroids.cols())
                                + " dims, points have " + std::to_string(points.cols()));
    std::vector<int> out(static_cast<std::size_t>(points.rows()));
    for (Index i = 0; i < points.rows(); ++i) {
        S best = std::numeric_limits<S>::infinity();
        int arg = 0;
        for (Index j = 0; j < centroids.rows(); ++j) {
            const S d = (points.row(i) - centroids.row(j)).squaredNorm();
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        out[static_cast<std::size_t>(i)] = arg;
    }
    return out;
}

template <typename DP, typename DC>
typename DP::Scalar inertia(const Eigen::MatrixBase<DP>& points,
                            const Eigen::MatrixBase<DC>& centroids,
                            const std::vector<int>& assignments) {
    using S = typename DP::Scalar;
    if (centroids.cols() != points.cols() || assignments.size() != static_cast<std::size_t>(points.rows()))
        throw DimensionMismatch("inertia inputs disagree on shape");
    S sum = S(0);
    for (Index i = 0; i < points.rows(); ++i)
        sum += (points.row(i) - centroids.row(assignments[static_cast<std::size_t>(i)])).squaredNorm();
    return sum;
}

template <typename DP, typename S>
S inertia(const Eigen::MatrixBase<DP>& points, const Clustering<S>& clustering) {
    return inertia(points, clustering.centroids, clustering.assignments);
}

namespace detail {

/// After an assignment step, give every empty cluster the point farthest from
/// that cluster's centroid (never emptying the donor cluster). Keeps k fixed.
template <typename S, typename DP>
void repair_empty_clusters(const Eigen::MatrixBase<DP>& points, MatrixX<S>& centroids,
                           std::vector<int>& labels, std::vector<Index>& counts) {
    const int k = static_cast<int>(centroids.rows());
    for (int j = 0; j < k; ++j) {
        if (counts[static_cast<std::size_t>(j)] > 0) continue;
        Index far = -1;
        S far_d = S(-1);
        for (Index i = 0; i < points.rows(); ++i) {
            if (counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] <= 1) continue;
            const S d = (points.row(i) - centroids.row(j)).squaredNorm();
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        // rows >= k guarantees a donor cluster with more than one member
        --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
        labels[static_cast<std::size_t>(far)] = j;
        counts[static_cast<std::size_t>(j)] = 1;
        centroids.row(j) = points.row(far);
    }
}

template <typename S, typename DP>
MatrixX<S> init_random_points(const Eigen::MatrixBase<DP>& points, int k, SplitMix64& rng) {
    const Index n = points.rows();
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index(0));
    MatrixX<S> centroids(k, points.cols());
    for (int j = 0; j < k; ++j) {
        const std::uint64_t pick = rng.next_below(static_cast<std::uint64_t>(n - j));
        std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(j) + pick]);
        centroids.row(j) = points.row(idx[static_cast<std::size_t>(j)]);
    }
    return centroids;
}

template <typename S, typename DP>
MatrixX<S> init_kmeanspp(const Eigen::MatrixBase<DP>& points, int k, SplitMix64& rng) {
    const Index n = points.rows();
    MatrixX<S> centroids(k, points.cols());
    centroids.row(0) = points.row(static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n))));
    VectorX<S> d2(n);
    for (Index i = 0; i < n; ++i) d2[i] = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int j = 1; j < k; ++j) {
        const S total = d2.sum();
        Index pick;
        if (total > S(0)) {
            const S u = static_cast<S>(rng.next_double()) * total;
            S cum = S(0);
            pick = n - 1;
            for (Index i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > u) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
        }
        centroids.row(j) = points.row(pick);
        for (Index i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], (points.row(i) - centroids.row(j)).squaredNorm());
    }
    return centroids;
}

} // namespace detail

/// One Lloyd run from explicit initial centroids. Stops when assignments are
/// stable, when no centroid moved more than `movement_tolerance`, or at
/// `max_iterations`. After every update step the centroids are exactly the
/// means of their members, so the returned state always satisfies that
/// invariant regardless of which stop fired.
template <typename DP, typename S>
Clustering<S> lloyd(const Eigen::MatrixBase<DP>& points, MatrixX<S> centroids,
                    const KMeansConfig& config) {
    const Index n = points.rows();
    const int k = static_cast<int>(centroids.rows());
    if (centroids.cols() != points.cols()) throw DimensionMismatch("initial centroids vs points");
    if (n < k) throw TooFewPoints(n, k);

    Clustering<S> out;
    out.k = k;
    std::vector<int> prev;
    for (int it = 1; it <= config.max_iterations; ++it) {
        std::vector<int> labels = assign(centroids, points);
        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        for (int a : labels) ++counts[static_cast<std::size_t>(a)];
        detail::repair_empty_clusters(points, centroids, labels, counts);

        const bool changed = prev.empty() || labels != prev;

        MatrixX<S> updated = MatrixX<S>::Zero(k, points.cols());
        for (Index i = 0; i < n; ++i) updated.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
        for (int j = 0; j < k; ++j) updated.row(j) /= static_cast<S>(counts[static_cast<std::size_t>(j)]);

        S movement = S(0);
        for (int j = 0; j < k; ++j)
            movement = std::max(movement, (updated.row(j) - centroids.row(j)).norm());
        centroids = std::move(updated);

        out.inertia_history.push_back(inertia(points, centroids, labels));
        out.iterations = it;
        prev = std::move(labels);
        if (!changed || movement <= static_cast<S>(config.movement_tolerance)) break;
    }
    out.centroids = std::move(centroids);
    out.assignments = std::move(prev);
    out.inertia = out.inertia_history.back();
    return out;
}

/// Best-of-`restarts` Lloyd's K-Means. Restart r runs with the derived seed
/// derive_seed(config.seed, r); the winner is the lowest inertia, ties broken
/// by lowest restart index, so the result does not depend on execution order.
template <typename DP>
Clustering<typename DP::Scalar> fit_kmeans(const Eigen::MatrixBase<DP>& points,
                                           const KMeansConfig& config) {
    using S = typename DP::Scalar;
    if (config.k < 1 || config.restarts < 1 || config.max_iterations < 1
        || !(config.movement_tolerance >= 0.0))
        throw InvalidConfig("kmeans config: need k >= 1, restarts >= 1, max_iterations >= 1, tolerance >= 0");
    if (points.rows() < config.k) throw TooFewPoints(points.rows(), config.k);
    require_finite(points, "kmeans points");

    Clustering<S> best;
    bool have_best = false;
    for (int r = 0; r < config.restarts; ++r) {
        const std::uint64_t restart_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
        SplitMix64 rng(restart_seed);
        MatrixX<S> init = config.init == InitStrategy::kmeanspp
                              ? detail::init_kmeanspp<S>(points, config.k, rng)
                              : detail::init_random_points<S>(points, config.k, rng);
        Clustering<S> run = lloyd(points, std::move(init), config);
        run.seed_used = restart_seed;
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }
    return best;
}

/// Apply a cluster-index permutation (perm[old] = new). Inertia is unchanged.
template <typename S>
Clustering<S> relabel(const Clustering<S>& clustering, const std::vector<int>& perm) {
    if (perm.size() != static_cast<std::size_t>(clustering.k))
        throw InvalidConfig("relabel permutation has wrong length");
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= clustering.k || seen[static_cast<std::size_t>(p)])
            throw InvalidConfig("relabel argument is not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    Clustering<S> out = clustering;
    for (int j = 0; j < clustering.k; ++j)
        out.centroids.row(perm[static_cast<std::size_t>(j)]) = clustering.centroids.row(j);
    for (std::size_t i = 0; i < clustering.assignments.size(); ++i)
        out.assignments[i] = perm[static_cast<std::size_t>(clustering.assignments[i])];
    return out;
}

} // namespace dietclust
