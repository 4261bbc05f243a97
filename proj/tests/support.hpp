#pragma once

#include <vector>

#include "dietclust/kmeans.hpp"
#include "dietclust/numerics.hpp"
#include "dietclust/rng.hpp"

// Independent oracles for the test suites. Everything here recomputes results
// with plain loops (long double accumulators where it matters) so the checks
// do not share a code path with the library.
namespace oracle {

inline double mean_ld(const std::vector<double>& xs) {
    long double sum = 0;
    for (double x : xs) sum += x;
    return static_cast<double>(sum / static_cast<long double>(xs.size()));
}

inline double sample_std_ld(const std::vector<double>& xs) {
    const long double m = mean_ld(xs);
    long double ssq = 0;
    for (double x : xs) ssq += (static_cast<long double>(x) - m) * (static_cast<long double>(x) - m);
    return static_cast<double>(std::sqrt(ssq / static_cast<long double>(xs.size() - 1)));
}

inline std::vector<double> column(const dietclust::Matrix& m, Eigen::Index j) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m(i, j));
    return out;
}

/// Entry-by-entry sample covariance: cov(X,Y) = sum((X_i - xbar)(Y_i - ybar)) / (n-1).
inline dietclust::Matrix brute_covariance(const dietclust::Matrix& m) {
    const Eigen::Index n = m.rows();
    const Eigen::Index d = m.cols();
    dietclust::Matrix cov(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            long double xbar = 0, ybar = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                xbar += m(i, a);
                ybar += m(i, b);
            }
            xbar /= n;
            ybar /= n;
            long double sum = 0;
            for (Eigen::Index i = 0; i < n; ++i)
                sum += (static_cast<long double>(m(i, a)) - xbar) * (static_cast<long double>(m(i, b)) - ybar);
            cov(a, b) = static_cast<double>(sum / static_cast<long double>(n - 1));
        }
    }
    return cov;
}

inline dietclust::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    dietclust::SplitMix64 rng(seed);
    dietclust::Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.next_double() - 1.0;
    return m;
}

inline dietclust::Matrix random_symmetric(Eigen::Index n, std::uint64_t seed) {
    dietclust::Matrix b = random_matrix(n, n, seed);
    return b + b.transpose();
}

/// Nested-loop nearest-centroid scan, ties to the lowest index.
inline std::vector<int> brute_assign(const dietclust::Matrix& centroids, const dietclust::Matrix& points) {
    std::vector<int> out;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        int arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < centroids.rows(); ++j) {
            double d = 0;
            for (Eigen::Index c = 0; c < points.cols(); ++c) {
                const double t = points(i, c) - centroids(j, c);
                d += t * t;
            }
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        out.push_back(arg);
    }
    return out;
}

inline double brute_inertia(const dietclust::Matrix& points, const dietclust::Matrix& centroids,
                            const std::vector<int>& assign) {
    long double sum = 0;
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            const double t = points(i, c) - centroids(assign[static_cast<std::size_t>(i)], c);
            sum += static_cast<long double>(t) * t;
        }
    return static_cast<double>(sum);
}

/// Globally optimal k-means objective by enumerating every assignment of the
/// points into k non-empty parts. Exponential; only for tiny instances.
inline double brute_force_optimum(const dietclust::Matrix& points, int k) {
    const Eigen::Index n = points.rows();
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    double best = std::numeric_limits<double>::infinity();
    const long total = static_cast<long>(std::pow(static_cast<double>(k), static_cast<double>(n)) + 0.5);
    for (long code = 0; code < total; ++code) {
        long c = code;
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            assign[static_cast<std::size_t>(i)] = static_cast<int>(c % k);
            ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
            c /= k;
        }
        bool all_nonempty = true;
        for (int cnt : counts) all_nonempty = all_nonempty && cnt > 0;
        if (!all_nonempty) continue;
        dietclust::Matrix centroids = dietclust::Matrix::Zero(k, points.cols());
        for (Eigen::Index i = 0; i < n; ++i) centroids.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
        for (int j = 0; j < k; ++j) centroids.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
        best = std::min(best, brute_inertia(points, centroids, assign));
    }
    return best;
}

#ifdef DOCTEST_LIBRARY_INCLUDED
/// Checks the structural invariants of a finished clustering: labels in
/// range, no empty cluster, centroids equal to member means, and (for stable
/// fits) every point on its nearest centroid with ties at the lowest index.
inline void check_clustering_invariants(const dietclust::Matrix& points,
                                        const dietclust::Clustering<double>& c,
                                        bool check_nearest = true) {
    std::vector<int> counts(static_cast<std::size_t>(c.k), 0);
    for (int a : c.assignments) {
        REQUIRE(a >= 0);
        REQUIRE(a < c.k);
        ++counts[static_cast<std::size_t>(a)];
    }
    for (int cnt : counts) CHECK(cnt > 0);
    dietclust::Matrix means = dietclust::Matrix::Zero(c.k, points.cols());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        means.row(c.assignments[static_cast<std::size_t>(i)]) += points.row(i);
    for (int j = 0; j < c.k; ++j) means.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
    CHECK((means - c.centroids).cwiseAbs().maxCoeff() <= 1e-10);
    if (check_nearest) {
        const std::vector<int> nearest = brute_assign(c.centroids, points);
        CHECK(nearest == c.assignments);
    }
}
#endif

} // namespace oracle
