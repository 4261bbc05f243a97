#pragma once

#include <cmath>

#include "dietclust/numerics.hpp"

namespace dietclust {

/// Fitted principal-component model. Keeps the full spectrum (for cumulative
/// variance reporting) but only the selected top-k eigenvectors as the
/// projection basis.
template <typename S>
struct PcaModel {
    StandardizationParams<S> standardization;
    VectorX<S> eigenvalues; ///< full spectrum, descending
    MatrixX<S> components;  ///< d x k, orthonormal columns
    Index k = 0;
    S variance_target = S(0);
    S explained_ratio = S(0);
};

// Cumulative-ratio comparisons carry a relative slack so that rank-deficient
// data (ratio 1 - O(eps)) still selects the minimal component count at
// target 1.0. A component contributing less than this is numerically zero.
inline constexpr double kVarianceRatioSlack = 1e-12;

/// Standardize, compute the covariance spectrum, and keep the smallest k whose
/// cumulative explained-variance ratio reaches `variance_target`.
template <typename Derived>
PcaModel<typename Derived::Scalar> fit_pca(const Eigen::MatrixBase<Derived>& data,
                                           double variance_target) {
    using S = typename Derived::Scalar;
    if (!(variance_target > 0.0 && variance_target <= 1.0)) throw InvalidTarget(variance_target);

    Standardized<S> std_data = standardize(data);
    const MatrixX<S> cov = covariance_matrix(std_data.values);
    SymmetricEigen<S> eig = symmetric_eigen(cov);

    PcaModel<S> model;
    model.standardization = std::move(std_data.params);
    model.eigenvalues = std::move(eig.eigenvalues);
    model.variance_target = static_cast<S>(variance_target);

    const S total = model.eigenvalues.sum();
    S cum = S(0);
    Index k = model.eigenvalues.size();
    for (Index m = 0; m < model.eigenvalues.size(); ++m) {
        cum += model.eigenvalues[m];
        if (cum / total >= static_cast<S>(variance_target) - S(kVarianceRatioSlack)) {
            k = m + 1;
            break;
        }
    }
    model.k = k;
    model.explained_ratio = model.eigenvalues.head(k).sum() / total;
    model.components = eig.eigenvectors.leftCols(k);
    return model;
}

/// Project rows into the reduced space: standardize with the stored
/// parameters, then multiply by the component basis.
template <typename S, typename Derived>
MatrixX<S> transform(const PcaModel<S>& model, const Eigen::MatrixBase<Derived>& data) {
    return apply_standardization(model.standardization, data) * model.components;
}

/// lambda_j / sum(lambda), over the full spectrum.
template <typename S>
VectorX<S> explained_variance_ratios(const PcaModel<S>& model) {
    return model.eigenvalues / model.eigenvalues.sum();
}

template <typename S>
VectorX<S> cumulative_variance_ratios(const PcaModel<S>& model) {
    VectorX<S> out(model.eigenvalues.size());
    const S total = model.eigenvalues.sum();
    S cum = S(0);
    for (Index j = 0; j < model.eigenvalues.size(); ++j) {
        cum += model.eigenvalues[j];
        out[j] = cum / total;
    }
    return out;
}

} // namespace dietclust
