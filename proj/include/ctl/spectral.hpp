#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ctl/matrix.hpp"
#include "ctl/system.hpp"

namespace ctl {

inline constexpr double kDefaultComplexTol = 1e-8;
inline constexpr double kDefaultClusterTol = 1e-8;

// Rank decisions use singular values against this factor times max(1, ||A||_F).
// Numerical Jordan detection is ill-posed; this is an explicit knob, not a
// universally safe constant.
inline constexpr double kRankThresholdFactor = 1e-10;

/// Real spectrum of a square matrix, sorted ascending.
struct RealSpectrum {
    Vector eigenvalues;
    double imag_residual = 0.0; // largest |imag part| seen before rounding to real
};

inline RealSpectrum real_spectrum(const Matrix& a, double complex_tol = kDefaultComplexTol)
{
    require_square(a, "A");
    require_finite(a, "A");
    if (a.rows() > kMaxOrder)
        fail(errc::dimension_unsupported, "matrix order exceeds supported maximum");

    Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        fail(errc::ill_conditioned, "eigenvalue iteration failed to converge");

    const auto& ev = solver.eigenvalues();
    double max_imag = 0.0;
    for (int i = 0; i < ev.size(); ++i)
        max_imag = std::max(max_imag, std::abs(ev(i).imag()));
    if (max_imag > complex_tol)
        fail(errc::complex_spectrum,
             "spectrum has imaginary parts up to " + std::to_string(max_imag));

    RealSpectrum out;
    out.imag_residual = max_imag;
    out.eigenvalues.resize(ev.size());
    for (int i = 0; i < ev.size(); ++i)
        out.eigenvalues(i) = ev(i).real();
    std::sort(out.eigenvalues.data(), out.eigenvalues.data() + out.eigenvalues.size());
    return out;
}

struct JordanBlock {
    double lambda = 0.0;
    int size = 1;
};

/// Jordan decomposition A = P J P^{-1}. Blocks are ordered by ascending
/// eigenvalue (descending size among equal eigenvalues). Columns of P hold the
/// generalized-eigenvector chains in block order, eigenvector first, so that
/// A v_j = lambda v_j + v_{j-1}. Q = P^{-1}; its rows are the left chain
/// covectors q_{i,j}. No normalization is enforced: every quantity computed
/// downstream is invariant under per-chain rescaling.
struct JordanStructure {
    std::vector<JordanBlock> blocks;
    Matrix P;
    Matrix Q;

    int order() const noexcept { return static_cast<int>(P.rows()); }

    /// Column (and Q-row) index where block i starts.
    int block_offset(int i) const
    {
        int off = 0;
        for (int k = 0; k < i; ++k)
            off += blocks[static_cast<size_t>(k)].size;
        return off;
    }

    /// q_{i,j} b for 1-based chain position j within block i.
    double left_dot(int block, int j, const Vector& b) const
    {
        return Q.row(block_offset(block) + j - 1).dot(b);
    }

    /// q_{i,m_i} b, the coupling of block i's last chain row to the input.
    double last_row_dot(int block, const Vector& b) const
    {
        return left_dot(block, blocks[static_cast<size_t>(block)].size, b);
    }
};

/// Block-diagonal Jordan matrix for a block list.
inline Matrix jordan_matrix(const std::vector<JordanBlock>& blocks)
{
    int n = 0;
    for (const auto& b : blocks)
        n += b.size;
    Matrix j = Matrix::Zero(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int k = 0; k < b.size; ++k) {
            j(off + k, off + k) = b.lambda;
            if (k + 1 < b.size)
                j(off + k, off + k + 1) = 1.0;
        }
        off += b.size;
    }
    return j;
}

namespace detail {

// Orthonormal basis of the numerical null space of m.
inline Matrix null_space(const Matrix& m, double threshold)
{
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= threshold)
            ++nullity;
    return svd.matrixV().rightCols(nullity);
}

// Greedy pick of `need` directions from the span of `candidates` that stay
// independent of span(avoid). Prefers coordinate-axis projections so that
// matrices already in Jordan form come back with P = I.
inline std::vector<Vector> pick_complement(const Matrix& candidates, std::vector<Vector> avoid,
                                           int need)
{
    const int n = static_cast<int>(candidates.rows());

    // Orthonormalize the avoid set once.
    std::vector<Vector> basis;
    auto absorb = [&](Vector v) -> double {
        for (const auto& w : basis)
            v -= w.dot(v) * w;
        double norm = v.norm();
        if (norm > 1e-12)
            basis.push_back(v / norm);
        return norm;
    };
    for (auto& v : avoid)
        absorb(std::move(v));

    std::vector<Vector> picked;
    for (int round = 0; round < need; ++round) {
        Vector best;
        double best_res = -1.0;
        for (int i = 0; i < n; ++i) {
            // Projection of axis e_i onto span(candidates).
            Vector c = candidates * (candidates.transpose() * Vector::Unit(n, i));
            Vector r = c;
            for (const auto& w : basis)
                r -= w.dot(r) * w;
            if (r.norm() > best_res) {
                best_res = r.norm();
                best = c;
            }
        }
        if (best_res < 1e-8)
            fail(errc::ill_conditioned, "generalized eigenvector chain construction lost rank");
        picked.push_back(best);
        absorb(best);
    }
    return picked;
}

struct Chain {
    double lambda = 0.0;
    std::vector<Vector> columns; // eigenvector first
};

// Builds the chains of one eigenvalue cluster from the rank staircase of
// (A - lambda I)^k. Rank thresholds rescale with each power's norm, floored
// at one so that near-zero shifted matrices still count as rank deficient.
inline std::vector<Chain> cluster_chains(const Matrix& a, double lambda, int multiplicity)
{
    const int n = static_cast<int>(a.rows());
    const Matrix m = a - lambda * Matrix::Identity(n, n);

    // d[k] = dim ker(M^k), capped at the algebraic multiplicity.
    std::vector<Matrix> kernels(1, Matrix::Zero(n, 0));
    std::vector<int> d(1, 0);
    Matrix power = Matrix::Identity(n, n);
    int height = 0;
    for (int k = 1; k <= multiplicity; ++k) {
        power = power * m;
        double tk = kRankThresholdFactor * std::max(1.0, power.norm());
        kernels.push_back(null_space(power, tk));
        d.push_back(static_cast<int>(kernels.back().cols()));
        if (d.back() > multiplicity)
            fail(errc::ill_conditioned, "kernel dimension exceeds eigenvalue multiplicity");
        height = k;
        if (d.back() == multiplicity)
            break;
    }
    if (d.back() != multiplicity)
        fail(errc::ill_conditioned, "rank staircase did not exhaust the eigenvalue multiplicity");

    // blocks_ge[k] = number of blocks of size >= k.
    std::vector<int> blocks_ge(static_cast<size_t>(height) + 2, 0);
    for (int k = 1; k <= height; ++k)
        blocks_ge[static_cast<size_t>(k)] = d[static_cast<size_t>(k)] - d[static_cast<size_t>(k) - 1];

    std::vector<Chain> chains;
    for (int k = height; k >= 1; --k) {
        int need = blocks_ge[static_cast<size_t>(k)] - blocks_ge[static_cast<size_t>(k) + 1];
        if (need <= 0)
            continue;

        std::vector<Vector> avoid;
        if (k >= 2)
            for (int c = 0; c < kernels[static_cast<size_t>(k) - 1].cols(); ++c)
                avoid.push_back(kernels[static_cast<size_t>(k) - 1].col(c));
        for (const auto& chain : chains) {
            // Grade-k member of every taller chain.
            int h = static_cast<int>(chain.columns.size());
            if (h > k)
                avoid.push_back(chain.columns[static_cast<size_t>(k) - 1]);
        }

        for (auto& top : pick_complement(kernels[static_cast<size_t>(k)], std::move(avoid), need)) {
            Chain chain;
            chain.lambda = lambda;
            top /= top.norm();
            chain.columns.resize(static_cast<size_t>(k));
            chain.columns[static_cast<size_t>(k) - 1] = top;
            for (int j = k - 1; j >= 1; --j)
                chain.columns[static_cast<size_t>(j) - 1] = m * chain.columns[static_cast<size_t>(j)];
            chains.push_back(std::move(chain));
        }
    }

    std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
        return x.columns.size() > y.columns.size();
    });
    return chains;
}

inline JordanStructure assemble(std::vector<Chain> chains, int n)
{
    std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
        if (x.lambda != y.lambda)
            return x.lambda < y.lambda;
        return x.columns.size() > y.columns.size();
    });

    JordanStructure js;
    js.P.resize(n, n);
    int col = 0;
    for (const auto& chain : chains) {
        js.blocks.push_back({chain.lambda, static_cast<int>(chain.columns.size())});
        for (const auto& v : chain.columns)
            js.P.col(col++) = v;
    }
    if (col != n)
        fail(errc::ill_conditioned, "chain columns do not fill the space");
    js.Q = inverse(js.P);
    return js;
}

} // namespace detail

/// Numerical Jordan structure of A. Eigenvalues closer than cluster_tol are
/// merged into one cluster; block sizes come from the rank staircase of
/// (A - lambda I)^k. A defective eigenvalue of chain length m scatters under
/// rounding on the scale eps^{1/m}, in the complex plane as well, so the
/// spectrum gate widens with cluster_tol and each cluster is re-centered at
/// its mean (which tracks the trace and stays accurate) before rank tests.
inline JordanStructure jordan_structure(const Matrix& a, double cluster_tol = kDefaultClusterTol)
{
    const RealSpectrum spec = real_spectrum(a, std::max(kDefaultComplexTol, cluster_tol));
    const int n = static_cast<int>(a.rows());

    std::vector<detail::Chain> chains;
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && spec.eigenvalues(j) - spec.eigenvalues(j - 1) <= cluster_tol)
            ++j;
        const int multiplicity = j - i;
        const double lambda = spec.eigenvalues.segment(i, multiplicity).mean();
        auto cluster = detail::cluster_chains(a, lambda, multiplicity);
        for (auto& c : cluster)
            chains.push_back(std::move(c));
        i = j;
    }
    return detail::assemble(std::move(chains), n);
}

/// Jordan structure declared externally (blocks plus basis P). Used by input
/// files that pin the structure instead of relying on numerical detection.
/// Verifies that P actually reproduces A, i.e. A P = P J.
inline JordanStructure jordan_from_blocks(const Matrix& a, std::vector<JordanBlock> blocks, Matrix p)
{
    require_square(a, "A");
    require_square(p, "P");
    if (p.rows() != a.rows())
        fail(errc::dimension_mismatch, "P order does not match A");
    int total = 0;
    for (const auto& b : blocks) {
        if (b.size < 1)
            fail(errc::dimension_mismatch, "block sizes must be positive");
        total += b.size;
    }
    if (total != a.rows())
        fail(errc::dimension_mismatch, "block sizes do not sum to the system order");

    // Normalize to ascending-eigenvalue block order, moving columns together
    // with their blocks.
    std::vector<int> order(blocks.size());
    for (size_t k = 0; k < order.size(); ++k)
        order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        const auto& bx = blocks[static_cast<size_t>(x)];
        const auto& by = blocks[static_cast<size_t>(y)];
        if (bx.lambda != by.lambda)
            return bx.lambda < by.lambda;
        return bx.size > by.size;
    });

    JordanStructure js;
    js.P.resize(p.rows(), p.cols());
    int col = 0;
    std::vector<int> offsets(blocks.size(), 0);
    for (size_t k = 0, off = 0; k < blocks.size(); ++k) {
        offsets[k] = static_cast<int>(off);
        off += static_cast<size_t>(blocks[k].size);
    }
    for (int idx : order) {
        const auto& b = blocks[static_cast<size_t>(idx)];
        js.blocks.push_back(b);
        js.P.middleCols(col, b.size) = p.middleCols(offsets[static_cast<size_t>(idx)], b.size);
        col += b.size;
    }

    const Matrix j = jordan_matrix(js.blocks);
    const double residual = (a * js.P - js.P * j).norm();
    if (residual > 1e-6 * std::max(1.0, a.norm()))
        fail(errc::ill_conditioned,
             "declared Jordan basis does not reproduce A (residual " + std::to_string(residual) + ")");
    js.Q = inverse(js.P);
    return js;
}

/// Bidiagonal system with diagonal lambda, lambda+delta, ..., lambda+(n-1)delta
/// and unit superdiagonal: a single Jordan block split into n distinct
/// eigenvalues by an arbitrarily small perturbation.
inline LdtSystem perturbed_jordan_system(double lambda, int n, double delta, const Matrix& b)
{
    if (n < 1)
        fail(errc::dimension_mismatch, "order must be at least 1");
    if (delta <= 0.0)
        fail(errc::eigenvalue_out_of_range, "perturbation step must be positive");
    if (lambda < 0.0 || lambda + (n - 1) * delta >= 1.0)
        fail(errc::eigenvalue_out_of_range,
             "perturbed eigenvalues must stay inside [0, 1), top is "
                 + std::to_string(lambda + (n - 1) * delta));

    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = lambda + i * delta;
        if (i + 1 < n)
            a(i, i + 1) = 1.0;
    }
    return LdtSystem(a, b);
}

/// Eigenbasis coordinates of (0, ..., 0, b_n) for the perturbed single-block
/// system: beta_{n-k} = (-1)^k b_n / ((n-k-1)! k! delta^{n-1}).
inline std::vector<double> chain_coefficients(int n, double delta, double b_n)
{
    if (n < 1)
        fail(errc::dimension_mismatch, "order must be at least 1");
    if (delta <= 0.0)
        fail(errc::eigenvalue_out_of_range, "perturbation step must be positive");

    auto factorial = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i)
            f *= i;
        return f;
    };

    const double scale = std::pow(delta, n - 1);
    std::vector<double> beta(static_cast<size_t>(n));
    for (int k = 0; k <= n - 1; ++k) {
        double value = b_n / (factorial(n - k - 1) * factorial(k) * scale);
        if (k % 2 != 0)
            value = -value;
        beta[static_cast<size_t>(n - k) - 1] = value;
    }
    return beta;
}

} // namespace ctl
