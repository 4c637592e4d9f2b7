#include "linlasso/symmatrix.hpp"

#include "linlasso/error.hpp"

#include <cmath>
#include <sstream>

namespace linlasso {

SymFactorization SymFactorization::factor(const Eigen::MatrixXd& M, double tol) {
    if (M.rows() != M.cols()) throw NumericError("factor_psd: matrix is not square");
    const Eigen::Index n = M.rows();
    const double scale = n == 0 ? 0.0 : std::max(M.cwiseAbs().maxCoeff(), 0.0);
    if (n > 0 && (M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
        throw NumericError("factor_psd: matrix is not symmetric");
    }

    SymFactorization f;
    f.tol_ = tol;
    f.pivots_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) f.pivots_[static_cast<std::size_t>(i)] = i;

    Eigen::MatrixXd A = M;  // Schur complement, updated in place
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    const double max_diag = n == 0 ? 0.0 : M.diagonal().maxCoeff();
    const double threshold = tol * std::max(max_diag, 0.0);

    Eigen::Index j = 0;
    for (; j < n; ++j) {
        Eigen::Index p = j;
        for (Eigen::Index i = j + 1; i < n; ++i)
            if (A(i, i) > A(p, p)) p = i;
        if (!(A(p, p) > threshold)) break;
        if (p != j) {
            A.row(j).swap(A.row(p));
            A.col(j).swap(A.col(p));
            L.row(j).swap(L.row(p));
            std::swap(f.pivots_[static_cast<std::size_t>(j)], f.pivots_[static_cast<std::size_t>(p)]);
        }
        const double d = std::sqrt(A(j, j));
        L(j, j) = d;
        const Eigen::Index rest = n - j - 1;
        if (rest > 0) {
            L.col(j).tail(rest) = A.col(j).tail(rest) / d;
            A.bottomRightCorner(rest, rest).noalias() -=
                L.col(j).tail(rest) * L.col(j).tail(rest).transpose();
        }
    }
    f.rank_ = j;

    // Whatever is left must be numerically zero for M to be PSD.
    const Eigen::Index rest = n - j;
    if (rest > 0) {
        const auto S = A.bottomRightCorner(rest, rest);
        const double slack = std::sqrt(tol) * std::max(scale, 1.0);
        if (S.diagonal().minCoeff() < -slack || S.cwiseAbs().maxCoeff() > slack) {
            std::ostringstream os;
            os << "factor_psd: matrix is not positive semidefinite (residual pivot "
               << S.diagonal().minCoeff() << ")";
            throw NotPsdError(os.str());
        }
    }

    f.L_ = L.leftCols(f.rank_);
    const Eigen::Index k = f.rank_;
    if (k < n) {
        const auto L11 = f.L_.topRows(k).triangularView<Eigen::Lower>();
        // K = L21 L11^-1  <=>  L11' K' = L21'
        Eigen::MatrixXd Kt = f.L_.bottomRows(n - k).transpose();
        L11.transpose().solveInPlace(Kt);
        f.K_ = Kt.transpose();
    } else {
        f.K_.resize(0, k);
    }
    f.gram_.compute(Eigen::MatrixXd::Identity(k, k) + f.K_.transpose() * f.K_);
    return f;
}

Eigen::VectorXd SymFactorization::permute(const Eigen::VectorXd& b) const {
    if (b.size() != dim()) throw UsageError("dimension mismatch in symmetric solve");
    Eigen::VectorXd z(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) z(i) = b(pivots_[static_cast<std::size_t>(i)]);
    return z;
}

SymFactorization::Projection SymFactorization::project(const Eigen::VectorXd& b,
                                                       bool check_consistent) const {
    const Eigen::Index k = rank_;
    const Eigen::VectorXd z = permute(b);
    Eigen::VectorXd wtz = z.head(k);
    if (K_.rows() > 0) wtz.noalias() += K_.transpose() * z.tail(K_.rows());

    Projection out;
    out.u = k > 0 ? gram_.solve(wtz) : Eigen::VectorXd();
    if (check_consistent && K_.rows() > 0) {
        Eigen::VectorXd residual = z;
        residual.head(k) -= out.u;
        residual.tail(K_.rows()) -= K_ * out.u;
        if (residual.norm() > std::sqrt(tol_) * std::max(b.norm(), 1e-300)) {
            std::ostringstream os;
            os << "inconsistent singular system: residual " << residual.norm() << " outside range";
            throw InconsistentSystemError(os.str());
        }
    }
    out.v = out.u;
    if (k > 0) L_.topRows(k).triangularView<Eigen::Lower>().solveInPlace(out.v);
    return out;
}

Eigen::VectorXd SymFactorization::solve_min_norm(const Eigen::VectorXd& b) const {
    const Eigen::Index k = rank_;
    const Eigen::Index n = dim();
    const auto proj = project(b, true);
    Eigen::VectorXd w = proj.v;
    if (k > 0) L_.topRows(k).triangularView<Eigen::Lower>().transpose().solveInPlace(w);
    const Eigen::VectorXd t = k > 0 ? gram_.solve(w) : Eigen::VectorXd();

    Eigen::VectorXd xp(n);
    xp.head(k) = t;
    if (n > k) xp.tail(n - k) = K_ * t;
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(pivots_[static_cast<std::size_t>(i)]) = xp(i);
    return x;
}

double SymFactorization::quad_form(const Eigen::VectorXd& b) const {
    return project(b, true).v.squaredNorm();
}

Eigen::VectorXd SymFactorization::pinv_diagonal() const {
    // diag(M^+)_i = |G^+ e_i|^2 = |L11^-1 (I + K'K)^-1 W' P e_i|^2
    const Eigen::Index n = dim();
    const Eigen::Index k = rank_;
    Eigen::MatrixXd Wt(k, n);  // W' in pivoted coordinates
    Wt.leftCols(k).setIdentity();
    if (n > k) Wt.rightCols(n - k) = K_.transpose();
    Eigen::MatrixXd V = k > 0 ? Eigen::MatrixXd(gram_.solve(Wt)) : Eigen::MatrixXd(0, n);
    if (k > 0) L_.topRows(k).triangularView<Eigen::Lower>().solveInPlace(V);
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i)
        diag(pivots_[static_cast<std::size_t>(i)]) = V.col(i).squaredNorm();
    return diag;
}

Eigen::MatrixXd SymFactorization::reconstruct() const {
    const Eigen::Index n = dim();
    const Eigen::MatrixXd Pm = L_ * L_.transpose();
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            M(pivots_[static_cast<std::size_t>(a)], pivots_[static_cast<std::size_t>(b)]) = Pm(a, b);
    return M;
}

}  // namespace linlasso
