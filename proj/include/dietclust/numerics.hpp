#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include "dietclust/errors.hpp"

namespace dietclust {

template <typename S> using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S> using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Index = Eigen::Index;

/// Per-column centering/scaling parameters. stds uses divisor n-1 and is
/// strictly positive for every column.
template <typename S>
struct StandardizationParams {
    VectorX<S> means;
    VectorX<S> stds;
};

template <typename S>
struct Standardized {
    MatrixX<S> values;
    StandardizationParams<S> params;
};

template <typename S>
struct SymmetricEigen {
    VectorX<S> eigenvalues;  ///< sorted descending
    MatrixX<S> eigenvectors; ///< column j pairs with eigenvalues[j]; orthonormal
    S residual;              ///< max_j ||A v_j - lambda_j v_j||_inf
    int sweeps;              ///< Jacobi sweeps performed
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (!m.allFinite()) throw DataError(std::string(what) + " contains NaN or Inf");
}

/// A column counts as constant when its sample std is indistinguishable from
/// zero at the column's magnitude (catches exact constants whose mean does
/// not round exactly, e.g. three copies of 0.1).
template <typename S>
bool sigma_is_zero(S sigma, S column_scale) {
    return !(sigma > S(1e-13) * std::max(S(1), column_scale));
}

/// Rescale every column to mean 0, sample standard deviation 1.
template <typename Derived>
Standardized<typename Derived::Scalar> standardize(const Eigen::MatrixBase<Derived>& data) {
    using S = typename Derived::Scalar;
    const Index n = data.rows();
    if (n < 2) throw EmptyInput("standardize needs at least 2 rows");
    require_finite(data, "standardize input");

    Standardized<S> out;
    out.params.means = data.colwise().mean();
    MatrixX<S> centered = data.rowwise() - out.params.means.transpose();
    out.params.stds.resize(data.cols());
    for (Index j = 0; j < data.cols(); ++j) {
        const S sigma = std::sqrt(centered.col(j).squaredNorm() / static_cast<S>(n - 1));
        if (sigma_is_zero(sigma, data.col(j).cwiseAbs().maxCoeff())) throw ConstantColumn(j);
        out.params.stds[j] = sigma;
    }
    out.values = centered * out.params.stds.cwiseInverse().asDiagonal();
    return out;
}

/// Apply stored parameters to new data (same columns as the fit).
template <typename S, typename Derived>
MatrixX<S> apply_standardization(const StandardizationParams<S>& params,
                                 const Eigen::MatrixBase<Derived>& data) {
    if (data.cols() != params.means.size())
        throw DimensionMismatch("data has " + std::to_string(data.cols()) + " columns, parameters have "
                                + std::to_string(params.means.size()));
    return (data.rowwise() - params.means.transpose()) * params.stds.cwiseInverse().asDiagonal();
}

/// Inverse of apply_standardization.
template <typename S, typename Derived>
MatrixX<S> invert_standardization(const StandardizationParams<S>& params,
                                  const Eigen::MatrixBase<Derived>& z) {
    if (z.cols() != params.means.size())
        throw DimensionMismatch("z has " + std::to_string(z.cols()) + " columns, parameters have "
                                + std::to_string(params.means.size()));
    return (z * params.stds.asDiagonal()).rowwise() + params.means.transpose();
}

/// Sample covariance matrix (divisor n-1) of the columns, symmetrized exactly.
template <typename Derived>
MatrixX<typename Derived::Scalar> covariance_matrix(const Eigen::MatrixBase<Derived>& data) {
    using S = typename Derived::Scalar;
    const Index n = data.rows();
    if (n < 2) throw EmptyInput("covariance needs at least 2 rows");
    require_finite(data, "covariance input");

    MatrixX<S> centered = data.rowwise() - data.colwise().mean();
    MatrixX<S> cov = (centered.adjoint() * centered) / static_cast<S>(n - 1);
    cov = ((cov + cov.transpose()) / S(2)).eval();
    return cov;
}

namespace detail {

template <typename S>
S off_diagonal_norm_squared(const MatrixX<S>& b) {
    S off2 = S(0);
    for (Index p = 0; p + 1 < b.cols(); ++p)
        for (Index q = p + 1; q < b.cols(); ++q) off2 += S(2) * b(p, q) * b(p, q);
    return off2;
}

} // namespace detail

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Convergence is declared when the Frobenius norm of the off-diagonal part
/// drops to `tolerance` (default 1e-12 * ||A||_F when tolerance <= 0). Cyclic
/// sweeps make the result deterministic; eigenvalues come back descending and
/// each eigenvector is flipped so its largest-magnitude component is positive,
/// so identical inputs give bit-identical output.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> symmetric_eigen(const Eigen::MatrixBase<Derived>& a,
                                                         double tolerance = 0.0,
                                                         int max_sweeps = 100) {
    using S = typename Derived::Scalar;
    const Index n = a.rows();
    if (n != a.cols()) throw NotSymmetric("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    require_finite(a, "eigensolver input");
    if (n > 0) {
        const S max_abs = a.cwiseAbs().maxCoeff();
        const S asym = (a - a.transpose()).cwiseAbs().maxCoeff();
        if (asym > S(1e-10) * std::max(S(1), max_abs))
            throw NotSymmetric("max |a_ij - a_ji| = " + std::to_string(static_cast<double>(asym)));
    }

    MatrixX<S> work = ((a + a.transpose()) / S(2)).eval(); // exact symmetry for the iteration
    const MatrixX<S> original = work;
    MatrixX<S> vectors = MatrixX<S>::Identity(n, n);

    S tol = static_cast<S>(tolerance);
    if (!(tol > S(0))) tol = S(1e-12) * original.norm();
    const S tol2 = tol * tol;

    int sweeps = 0;
    bool converged = detail::off_diagonal_norm_squared(work) <= tol2;
    while (!converged && sweeps < max_sweeps) {
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const S apq = work(p, q);
                if (apq == S(0)) continue;
                // Symmetric Schur 2x2: pick the rotation angle <= pi/4 that
                // annihilates work(p, q).
                const S tau = (work(q, q) - work(p, p)) / (S(2) * apq);
                S t;
                if (std::abs(tau) > S(1e10))
                    t = S(1) / (S(2) * tau);
                else
                    t = std::copysign(S(1), tau) / (std::abs(tau) + std::sqrt(S(1) + tau * tau));
                const S c = S(1) / std::sqrt(S(1) + t * t);
                const S s = t * c;
                const Eigen::JacobiRotation<S> rot(c, s);
                work.applyOnTheLeft(p, q, rot.transpose());
                work.applyOnTheRight(p, q, rot);
                work(p, q) = work(q, p) = S(0);
                vectors.applyOnTheRight(p, q, rot);
            }
        }
        ++sweeps;
        converged = detail::off_diagonal_norm_squared(work) <= tol2;
    }
    if (!converged)
        throw NoConvergence(max_sweeps, std::sqrt(static_cast<double>(detail::off_diagonal_norm_squared(work))));

    // Sort eigenpairs descending; stable so equal eigenvalues keep their order.
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    VectorX<S> diag = work.diagonal();
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return diag[i] > diag[j]; });

    SymmetricEigen<S> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Index j = 0; j < n; ++j) {
        out.eigenvalues[j] = diag[order[static_cast<std::size_t>(j)]];
        out.eigenvectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
    }

    // Sign convention: largest-magnitude component positive (first index wins
    // ties), so repeated runs and platforms agree on vector orientation.
    for (Index j = 0; j < n; ++j) {
        Index arg = 0;
        S best = S(-1);
        for (Index i = 0; i < n; ++i) {
            const S mag = std::abs(out.eigenvectors(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (out.eigenvectors(arg, j) < S(0)) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
    }

    out.residual = S(0);
    if (n > 0) {
        const MatrixX<S> r = original * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
        out.residual = r.cwiseAbs().maxCoeff();
    }
    out.sweeps = sweeps;
    return out;
}

} // namespace dietclust
