#pragma once

// Discrete Steklov problem on a graph with boundary.
//
// Harmonic extension and the Dirichlet-to-Neumann map are obtained from the
// block split of the combinatorial Laplacian
//
//     L = [ L_II  L_IB ]      DtN = L_BB - L_IB^T L_II^{-1} L_IB
//         [ L_BI  L_BB ]
//
// and the spectrum is that of the symmetric |B| x |B| matrix DtN.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hsteklov/error.hpp"
#include "hsteklov/graph.hpp"

namespace hsteklov {

inline constexpr double kZeroEigenTolerance = 1e-10;
inline constexpr double kResidualTolerance = 1e-8;
inline constexpr int kDenseInteriorLimit = 4000;

using SparseMatrix = Eigen::SparseMatrix<double>;

struct LaplacianBlocks {
    SparseMatrix ii; // interior x interior
    SparseMatrix ib; // interior x boundary
    SparseMatrix bb; // boundary x boundary

    int interiorCount() const { return static_cast<int>(ii.rows()); }
    int boundaryCount() const { return static_cast<int>(bb.rows()); }

    Eigen::MatrixXd full() const
    {
        const int ni = interiorCount(), nb = boundaryCount();
        Eigen::MatrixXd m(ni + nb, ni + nb);
        m.topLeftCorner(ni, ni) = Eigen::MatrixXd(ii);
        m.topRightCorner(ni, nb) = Eigen::MatrixXd(ib);
        m.bottomLeftCorner(nb, ni) = Eigen::MatrixXd(ib).transpose();
        m.bottomRightCorner(nb, nb) = Eigen::MatrixXd(bb);
        return m;
    }
};

inline LaplacianBlocks assembleLaplacian(const GraphWithBoundary& G)
{
    const int ni = G.interiorCount(), nb = G.boundaryCount();
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> tii, tib, tbb;
    for (int v = 0; v < G.size(); ++v) {
        const double deg = G.degree(v);
        if (v < ni)
            tii.emplace_back(v, v, deg);
        else
            tbb.emplace_back(v - ni, v - ni, deg);
    }
    for (const auto& [a, b] : G.edges()) {
        // a < b, and interior indices precede boundary ones.
        if (b < ni) {
            tii.emplace_back(a, b, -1.0);
            tii.emplace_back(b, a, -1.0);
        } else if (a < ni) {
            tib.emplace_back(a, b - ni, -1.0);
        } else {
            tbb.emplace_back(a - ni, b - ni, -1.0);
            tbb.emplace_back(b - ni, a - ni, -1.0);
        }
    }
    LaplacianBlocks L;
    L.ii.resize(ni, ni);
    L.ib.resize(ni, nb);
    L.bb.resize(nb, nb);
    L.ii.setFromTriplets(tii.begin(), tii.end());
    L.ib.setFromTriplets(tib.begin(), tib.end());
    L.bb.setFromTriplets(tbb.begin(), tbb.end());
    return L;
}

enum class InteriorSolver { Auto, DenseCholesky, SparseCholesky, ConjugateGradient };

namespace detail {

/// Jacobi-preconditioned conjugate gradient on a symmetric positive definite
/// sparse matrix; stops at relative residual `tol`.
inline Eigen::VectorXd conjugateGradient(const SparseMatrix& A, const Eigen::VectorXd& b, double tol = 1e-12,
                                         int maxIter = 0)
{
    const int n = static_cast<int>(A.rows());
    if (maxIter <= 0)
        maxIter = 10 * n + 100;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0)
        return x;
    const Eigen::VectorXd diag = A.diagonal();
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = r.cwiseQuotient(diag);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < maxIter; ++it) {
        const Eigen::VectorXd Ap = A * p;
        const double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        if (r.norm() <= tol * bnorm)
            return x;
        z = r.cwiseQuotient(diag);
        const double rzNew = r.dot(z);
        p = z + (rzNew / rz) * p;
        rz = rzNew;
    }
    throw Error(ErrorKind::Numerical, "conjugate gradient did not converge");
}

/// Factorization of L_II chosen by `solver`, reusable across right-hand sides.
class InteriorFactor {
public:
    InteriorFactor(const SparseMatrix& ii, InteriorSolver solver) : ii_(&ii), solver_(solver)
    {
        const int ni = static_cast<int>(ii.rows());
        if (solver_ == InteriorSolver::Auto)
            solver_ = ni <= kDenseInteriorLimit ? InteriorSolver::DenseCholesky : InteriorSolver::SparseCholesky;
        if (ni == 0)
            return;
        if (solver_ == InteriorSolver::DenseCholesky) {
            dense_.compute(Eigen::MatrixXd(ii));
            if (dense_.info() != Eigen::Success)
                throw Error(ErrorKind::Numerical, "interior Laplacian block is not positive definite");
        } else if (solver_ == InteriorSolver::SparseCholesky) {
            sparse_.compute(ii);
            if (sparse_.info() != Eigen::Success)
                throw Error(ErrorKind::Numerical, "interior Laplacian block is not positive definite");
        }
    }

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const
    {
        const Eigen::Index ni = ii_->rows();
        if (ni == 0)
            return Eigen::MatrixXd(0, rhs.cols());
        switch (solver_) {
        case InteriorSolver::DenseCholesky: return dense_.solve(rhs);
        case InteriorSolver::SparseCholesky: return sparse_.solve(rhs);
        case InteriorSolver::ConjugateGradient:
        default: {
            Eigen::MatrixXd out(ni, rhs.cols());
            for (Eigen::Index c = 0; c < rhs.cols(); ++c)
                out.col(c) = conjugateGradient(*ii_, rhs.col(c));
            return out;
        }
        }
    }

private:
    const SparseMatrix* ii_;
    InteriorSolver solver_;
    Eigen::LLT<Eigen::MatrixXd> dense_;
    Eigen::SimplicialLDLT<SparseMatrix> sparse_;
};

inline Eigen::MatrixXd solveInterior(const SparseMatrix& ii, const Eigen::MatrixXd& rhs, InteriorSolver solver)
{
    return InteriorFactor(ii, solver).solve(rhs);
}

} // namespace detail

/// Harmonic extension of boundary data `f`: interior values solve
/// L_II u_I = -L_IB f, boundary values are `f`. Interior first, then boundary.
inline Eigen::VectorXd harmonicExtension(const LaplacianBlocks& L, const Eigen::VectorXd& f,
                                         InteriorSolver solver = InteriorSolver::Auto)
{
    if (f.size() != L.boundaryCount())
        throw Error(ErrorKind::InvalidArgument, "boundary data has the wrong length");
    const int ni = L.interiorCount();
    Eigen::VectorXd u(ni + f.size());
    if (ni > 0) {
        const Eigen::MatrixXd rhs = -(L.ib * f);
        u.head(ni) = detail::solveInterior(L.ii, rhs, solver).col(0);
    }
    u.tail(f.size()) = f;
    return u;
}

/// Schur complement L_BB - L_IB^T L_II^{-1} L_IB, solved in column blocks so
/// large interiors never materialize a dense |I| x |B| matrix.
inline Eigen::MatrixXd dtnMatrix(const LaplacianBlocks& L, InteriorSolver solver = InteriorSolver::Auto)
{
    Eigen::MatrixXd dtn = Eigen::MatrixXd(L.bb);
    if (L.interiorCount() == 0)
        return dtn;
    constexpr Eigen::Index kBlock = 64;
    const detail::InteriorFactor factor(L.ii, solver);
    const SparseMatrix ibT = L.ib.transpose();
    const Eigen::Index nb = L.boundaryCount();
    for (Eigen::Index c0 = 0; c0 < nb; c0 += kBlock) {
        const Eigen::Index w = std::min(kBlock, nb - c0);
        const Eigen::MatrixXd rhs = Eigen::MatrixXd(L.ib.middleCols(c0, w));
        dtn.middleCols(c0, w).noalias() -= ibT * factor.solve(rhs);
    }
    return dtn;
}

struct SteklovSpectrum {
    std::vector<double> eigenvalues;  // ascending; index k is sigma_k
    Eigen::MatrixXd eigenvectors;     // column k belongs to sigma_k
    std::vector<double> residuals;    // ||DtN v - sigma v||_2 with ||v|| = 1
    double asymmetry = 0.0;           // max |DtN - DtN^T| before symmetrization
    double rawSmallest = 0.0;         // smallest eigenvalue before clamping

    int size() const { return static_cast<int>(eigenvalues.size()); }
    double maxResidual() const
    {
        double m = 0.0;
        for (double r : residuals)
            m = std::max(m, r);
        return m;
    }
};

namespace detail {

/// Clamps round-off negatives and the kernel eigenvalue to exact zero.
inline void clampEigenvalues(std::vector<double>& values)
{
    for (double& s : values) {
        if (s < -kZeroEigenTolerance)
            throw Error(ErrorKind::Numerical,
                        "negative Steklov eigenvalue " + std::to_string(s) + " (assembly bug)");
        if (s < 0.0)
            s = 0.0;
    }
    if (!values.empty() && std::abs(values.front()) < kZeroEigenTolerance)
        values.front() = 0.0;
}

} // namespace detail

inline SteklovSpectrum spectrumOfSymmetric(const Eigen::MatrixXd& dtn)
{
    SteklovSpectrum out;
    out.asymmetry = (dtn - dtn.transpose()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd sym = 0.5 * (dtn + dtn.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::Numerical, "symmetric eigensolver did not converge");
    const Eigen::VectorXd& vals = es.eigenvalues();
    out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
    out.rawSmallest = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.front();
    detail::clampEigenvalues(out.eigenvalues);
    out.eigenvectors = es.eigenvectors();
    const Eigen::MatrixXd image = sym * out.eigenvectors;
    for (int k = 0; k < out.size(); ++k) {
        const auto v = out.eigenvectors.col(k);
        out.residuals.push_back((image.col(k) - out.eigenvalues[k] * v).norm() / v.norm());
    }
    return out;
}

inline SteklovSpectrum steklovSpectrum(const GraphWithBoundary& G, InteriorSolver solver = InteriorSolver::Auto)
{
    return spectrumOfSymmetric(dtnMatrix(assembleLaplacian(G), solver));
}

inline constexpr int kOracleBoundaryLimit = 200;

namespace oracle {

/// Harmonic extension by plain conjugate gradient on adjacency lists.
inline std::vector<double> extendByCg(const GraphWithBoundary& G, const std::vector<double>& boundary)
{
    const int ni = G.interiorCount();
    std::vector<double> u(G.size(), 0.0);
    for (int j = 0; j < G.boundaryCount(); ++j)
        u[ni + j] = boundary[j];
    if (ni == 0)
        return u;
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int v = 0; v < ni; ++v) {
            double s = G.degree(v) * x[v];
            for (int w : G.neighbors(v))
                if (w < ni)
                    s -= x[w];
            y[v] = s;
        }
    };
    std::vector<double> b(ni, 0.0), x(ni, 0.0), r(ni), p(ni), Ap(ni);
    for (int v = 0; v < ni; ++v)
        for (int w : G.neighbors(v))
            if (w >= ni)
                b[v] += u[w];
    double bn = 0.0;
    for (double t : b)
        bn += t * t;
    r = b;
    p = r;
    double rr = bn;
    for (int it = 0; it < 20 * ni + 100 && rr > 1e-30 * std::max(bn, 1.0); ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (int v = 0; v < ni; ++v)
            pAp += p[v] * Ap[v];
        const double alpha = rr / pAp;
        double rrNew = 0.0;
        for (int v = 0; v < ni; ++v) {
            x[v] += alpha * p[v];
            r[v] -= alpha * Ap[v];
            rrNew += r[v] * r[v];
        }
        for (int v = 0; v < ni; ++v)
            p[v] = r[v] + (rrNew / rr) * p[v];
        rr = rrNew;
    }
    for (int v = 0; v < ni; ++v)
        u[v] = x[v];
    return u;
}

/// Cyclic Jacobi eigenvalues of a small dense symmetric matrix (row-major).
inline std::vector<double> jacobiEigenvalues(std::vector<double> a, int n)
{
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += at(i, j) * at(i, j);
        if (off < 1e-30)
            break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(at(p, q)) < 1e-300)
                    continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = at(i, i);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace oracle

/// Independent route to the spectrum: assemble the boundary energy form
///   Q(e_j, e_k) = sum over edges of (u_j(v) - u_j(w)) (u_k(v) - u_k(w))
/// from harmonic extensions of the boundary basis, then diagonalize it.
inline SteklovSpectrum rayleighOracle(const GraphWithBoundary& G)
{
    const int nb = G.boundaryCount();
    if (nb > kOracleBoundaryLimit)
        throw Error(ErrorKind::InvalidArgument, "oracle limited to " + std::to_string(kOracleBoundaryLimit) +
                                                    " boundary vertices");
    std::vector<std::vector<double>> ext(nb);
    for (int j = 0; j < nb; ++j) {
        std::vector<double> e(nb, 0.0);
        e[j] = 1.0;
        ext[j] = oracle::extendByCg(G, e);
    }
    std::vector<double> q(static_cast<std::size_t>(nb) * nb, 0.0);
    for (const auto& [v, w] : G.edges()) {
        for (int j = 0; j < nb; ++j) {
            const double dj = ext[j][v] - ext[j][w];
            if (dj == 0.0)
                continue;
            for (int k = 0; k < nb; ++k)
                q[static_cast<std::size_t>(j) * nb + k] += dj * (ext[k][v] - ext[k][w]);
        }
    }
    SteklovSpectrum out;
    out.eigenvalues = oracle::jacobiEigenvalues(std::move(q), nb);
    out.rawSmallest = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.front();
    detail::clampEigenvalues(out.eigenvalues);
    return out;
}

} // namespace hsteklov
