#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "ctl/ctl.hpp"

namespace helpers {

inline ctl::Matrix mat2(double a, double b, double c, double d)
{
    ctl::Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline ctl::Matrix diag(std::initializer_list<double> values)
{
    ctl::Matrix m = ctl::Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                                      static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values)
        m(i, i) = v, ++i;
    return m;
}

inline ctl::Matrix col(std::initializer_list<double> values)
{
    ctl::Matrix m(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index i = 0;
    for (double v : values)
        m(i++, 0) = v;
    return m;
}

inline ctl::Vector vec(std::initializer_list<double> values)
{
    ctl::Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values)
        v(i++) = x;
    return v;
}

/// Canonical Jordan block pair (A, b) for one eigenvalue.
inline ctl::Matrix jordan_block(double lambda, int n)
{
    ctl::Matrix a = ctl::Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = lambda;
        if (i + 1 < n)
            a(i, i + 1) = 1.0;
    }
    return a;
}

/// Well-conditioned random transform: orthogonal factor times mild scaling.
inline ctl::Matrix random_similarity(std::mt19937& rng, int n)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.8, 1.25);
    ctl::Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = gauss(rng);
    Eigen::HouseholderQR<ctl::Matrix> qr(g);
    ctl::Matrix q = qr.householderQ();
    for (int j = 0; j < n; ++j)
        q.col(j) *= scale(rng);
    return q;
}

/// Distinct eigenvalues in [lo, hi] with pairwise gap at least min_gap.
inline std::vector<double> random_spectrum(std::mt19937& rng, int n, double lo, double hi,
                                           double min_gap)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> eigs;
    while (static_cast<int>(eigs.size()) < n) {
        double candidate = u(rng);
        bool ok = true;
        for (double e : eigs)
            if (std::abs(e - candidate) < min_gap)
                ok = false;
        if (ok)
            eigs.push_back(candidate);
    }
    return eigs;
}

/// Random single-input system with the given distinct spectrum, conjugated by
/// a well-conditioned transform.
inline ctl::LdtSystem random_distinct_system(std::mt19937& rng, const std::vector<double>& eigs,
                                             double b_lo = 0.5, double b_hi = 1.5)
{
    const int n = static_cast<int>(eigs.size());
    ctl::Matrix d = ctl::Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        d(i, i) = eigs[static_cast<size_t>(i)];
    const ctl::Matrix t = random_similarity(rng, n);
    std::uniform_real_distribution<double> ub(b_lo, b_hi);
    ctl::Matrix b(n, 1);
    for (int i = 0; i < n; ++i)
        b(i, 0) = ub(rng);
    return ctl::LdtSystem(t * d * ctl::inverse(t), b);
}

/// Independent series oracle for the 2x2 single Jordan block with b = (0, 1):
/// sum over generator pairs of lambda^{j+k-1} (k - j).
inline double jordan2_pair_series(double lambda, int horizon)
{
    double sum = 0.0;
    for (int j = 0; j < horizon; ++j)
        for (int k = j + 1; k < horizon; ++k)
            sum += std::pow(lambda, j + k - 1) * (k - j);
    return sum;
}

} // namespace helpers
