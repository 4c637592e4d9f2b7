#pragma once

#include <Eigen/Dense>

#include <vector>

namespace linlasso {

/// Default relative pivot tolerance; correlation matrices have unit diagonal so
/// this is effectively absolute.
inline constexpr double kDefaultPivotTolerance = 1e-10;

/// Diagonally pivoted Cholesky factorization P M P' = L L' of a symmetric PSD
/// matrix, truncated at the numerical rank. Solves never form an inverse.
///
/// For rank k < dim the factor is split as L = [L11; L21] with L11 k-by-k lower
/// triangular, and M = G G' with G = P'[I; K] L11, K = L21 L11^-1. Minimum-norm
/// quantities then reduce to small solves with L11 and the well-conditioned
/// k-by-k matrix I + K'K.
class SymFactorization {
public:
    /// Throws NotPsdError when an indefinite direction is found, NumericError when
    /// M is not symmetric to 1e-12 (relative).
    static SymFactorization factor(const Eigen::MatrixXd& M, double tol = kDefaultPivotTolerance);

    Eigen::Index dim() const { return static_cast<Eigen::Index>(pivots_.size()); }
    Eigen::Index rank() const { return rank_; }
    double tolerance() const { return tol_; }
    /// pivots()[i] is the original index placed at position i.
    const std::vector<Eigen::Index>& pivots() const { return pivots_; }

    /// Minimum-norm solution of M x = b. Throws InconsistentSystemError if b has a
    /// component outside range(M) larger than sqrt(tol) * |b|.
    Eigen::VectorXd solve_min_norm(const Eigen::VectorXd& b) const;

    /// b' M^+ b, computed as |G^+ b|^2.
    double quad_form(const Eigen::VectorXd& b) const;

    /// diag(M^+), used for standard errors and elimination scores.
    Eigen::VectorXd pinv_diagonal() const;

    Eigen::MatrixXd reconstruct() const;

private:
    struct Projection {
        Eigen::VectorXd u;  // (I + K'K)^-1 W' P b
        Eigen::VectorXd v;  // G^+ b
    };
    Projection project(const Eigen::VectorXd& b, bool check_consistent) const;
    Eigen::VectorXd permute(const Eigen::VectorXd& b) const;

    std::vector<Eigen::Index> pivots_;
    Eigen::Index rank_ = 0;
    double tol_ = kDefaultPivotTolerance;
    Eigen::MatrixXd L_;  // dim x rank, pivoted order
    Eigen::MatrixXd K_;  // (dim - rank) x rank
    Eigen::LLT<Eigen::MatrixXd> gram_;  // I + K'K
};

}  // namespace linlasso
