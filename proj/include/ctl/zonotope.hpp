#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "ctl/matrix.hpp"
#include "ctl/system.hpp"

namespace ctl {

enum class RegionKind { reach, control };
enum class Convention { unit_cube, symmetric };

inline const char* region_name(RegionKind k) noexcept
{
    return k == RegionKind::reach ? "reach" : "control";
}

inline const char* convention_name(Convention c) noexcept
{
    return c == Convention::unit_cube ? "unit-cube" : "symmetric";
}

/// Zonotope given by an ordered generator list (matrix columns).
/// The coefficient convention is fixed at construction: unit-cube means
/// coefficients in [0,1], symmetric means [-1,1]. Symmetric volumes are
/// 2^dim times the unit-cube ones.
struct Zonotope {
    Matrix generators;
    int horizon = 0;
    RegionKind kind = RegionKind::reach;
    Convention convention = Convention::unit_cube;

    int dim() const noexcept { return static_cast<int>(generators.rows()); }
    int count() const noexcept { return static_cast<int>(generators.cols()); }
};

/// Generator matrix over N steps: reach uses [B, AB, ..., A^{N-1}B],
/// control uses [A^{-1}B, A^{-2}B, ..., A^{-N}B].
inline Zonotope build_generators(const LdtSystem& sys, int horizon, RegionKind kind,
                                 Convention convention = Convention::unit_cube)
{
    if (horizon < 1)
        fail(errc::dimension_mismatch, "horizon must be at least 1");

    const int n = sys.order();
    const int r = sys.inputs();

    Zonotope z;
    z.horizon = horizon;
    z.kind = kind;
    z.convention = convention;
    z.generators.resize(n, static_cast<Eigen::Index>(horizon) * r);

    Matrix step;
    Matrix block;
    if (kind == RegionKind::reach) {
        step = sys.A();
        block = sys.B();
    } else {
        step = inverse(sys.A());
        block = step * sys.B();
    }
    for (int k = 0; k < horizon; ++k) {
        z.generators.middleCols(static_cast<Eigen::Index>(k) * r, r) = block;
        if (k + 1 < horizon)
            block = step * block;
    }
    return z;
}

namespace detail {

/// Compensated accumulator for long sums of mixed-magnitude terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x)
    {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline std::uint64_t binomial(int m, int k)
{
    if (k < 0 || k > m)
        return 0;
    k = std::min(k, m - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result *= (m - k + i) / i, exact integer at every step
        const std::uint64_t num = static_cast<std::uint64_t>(m - k + i);
        const std::uint64_t den = static_cast<std::uint64_t>(i);
        if (result % den == 0) {
            const std::uint64_t g = result / den;
            if (g > std::numeric_limits<std::uint64_t>::max() / num)
                throw std::overflow_error("subset count exceeds 64 bits");
            result = g * num;
        } else {
            if (result > std::numeric_limits<std::uint64_t>::max() / num)
                throw std::overflow_error("subset count exceeds 64 bits");
            result = result * num / den;
        }
    }
    return result;
}

// Lexicographically smallest combination of rank `rank` (combinatorial number
// system over ascending index tuples).
inline void unrank_combination(std::uint64_t rank, int m, int n, std::vector<int>& out)
{
    out.resize(static_cast<size_t>(n));
    int v = 0;
    for (int pos = 0; pos < n; ++pos) {
        while (true) {
            std::uint64_t below = binomial(m - v - 1, n - pos - 1);
            if (rank < below)
                break;
            rank -= below;
            ++v;
        }
        out[static_cast<size_t>(pos)] = v++;
    }
}

inline bool next_combination(std::vector<int>& c, int m)
{
    int n = static_cast<int>(c.size());
    for (int i = n - 1; i >= 0; --i) {
        if (c[static_cast<size_t>(i)] < m - n + i) {
            ++c[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                c[static_cast<size_t>(j)] = c[static_cast<size_t>(j) - 1] + 1;
            return true;
        }
    }
    return false;
}

// |det| of the selected generator columns, in place, partial pivoting.
inline double abs_det_of_columns(const Matrix& g, const std::vector<int>& cols, Matrix& scratch)
{
    const int n = static_cast<int>(cols.size());
    switch (n) {
    case 1:
        return std::abs(g(0, cols[0]));
    case 2:
        return std::abs(g(0, cols[0]) * g(1, cols[1]) - g(0, cols[1]) * g(1, cols[0]));
    case 3: {
        const double a = g(0, cols[0]), b = g(0, cols[1]), c = g(0, cols[2]);
        const double d = g(1, cols[0]), e = g(1, cols[1]), f = g(1, cols[2]);
        const double h = g(2, cols[0]), i = g(2, cols[1]), j = g(2, cols[2]);
        return std::abs(a * (e * j - f * i) - b * (d * j - f * h) + c * (d * i - e * h));
    }
    default:
        break;
    }

    for (int c = 0; c < n; ++c)
        scratch.col(c) = g.col(cols[static_cast<size_t>(c)]);
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(scratch(i, k)) > std::abs(scratch(pivot, k)))
                pivot = i;
        if (scratch(pivot, k) == 0.0)
            return 0.0;
        if (pivot != k)
            scratch.row(pivot).swap(scratch.row(k));
        det *= scratch(k, k);
        for (int i = k + 1; i < n; ++i) {
            double factor = scratch(i, k) / scratch(k, k);
            scratch.row(i).tail(n - k) -= factor * scratch.row(k).tail(n - k);
        }
    }
    return std::abs(det);
}

inline int oracle_thread_count(std::uint64_t total)
{
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    if (const char* env = std::getenv("CTL_THREADS")) {
        char* end = nullptr;
        long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0)
            hw = std::min<unsigned>(hw, static_cast<unsigned>(parsed));
    }
    // Not worth spawning threads for tiny index ranges.
    std::uint64_t by_work = std::max<std::uint64_t>(1, total / 4096);
    return static_cast<int>(std::min<std::uint64_t>(hw, by_work));
}

} // namespace detail

/// Exact zonotope volume by enumerating all dim-subsets of generators and
/// summing absolute determinants. The summation is compensated and the
/// combination index range is partitioned across threads (capped by the
/// CTL_THREADS environment variable). Rank-deficient generator sets sum to
/// zero instead of erroring.
inline double enumerated_volume(const Zonotope& z)
{
    const int n = z.dim();
    const int m = z.count();
    if (m < n)
        fail(errc::dimension_mismatch,
             "need at least " + std::to_string(n) + " generators, have " + std::to_string(m));

    const std::uint64_t total = detail::binomial(m, n);
    const int threads = detail::oracle_thread_count(total);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        detail::KahanSum acc;
        std::vector<int> combo;
        detail::unrank_combination(begin, m, n, combo);
        Matrix scratch(n, n);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            acc.add(detail::abs_det_of_columns(z.generators, combo, scratch));
            detail::next_combination(combo, m);
        }
        return acc.sum;
    };

    double volume = 0.0;
    if (threads <= 1) {
        volume = run_range(0, total);
    } else {
        std::vector<double> partial(static_cast<size_t>(threads), 0.0);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            std::uint64_t begin = total * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(threads);
            std::uint64_t end = total * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(threads);
            pool.emplace_back([&, t, begin, end] { partial[static_cast<size_t>(t)] = run_range(begin, end); });
        }
        for (auto& th : pool)
            th.join();
        detail::KahanSum acc;
        for (double p : partial)
            acc.add(p);
        volume = acc.sum;
    }

    if (z.convention == Convention::symmetric)
        volume *= std::pow(2.0, n);
    return volume;
}

/// Half-widths of the circumscribed box of the symmetric-convention zonotope
/// in the coordinates induced by P: component i is sum_k |(P^{-1} g_k)_i|.
/// With P = I this is the row-wise absolute sum of the generator matrix.
inline Vector eigencoord_halfwidths(const Zonotope& z, const Matrix& p)
{
    if (p.rows() != z.dim() || p.cols() != z.dim())
        fail(errc::dimension_mismatch, "coordinate matrix order does not match zonotope dimension");
    const Matrix transformed = inverse(p) * z.generators;
    return transformed.cwiseAbs().rowwise().sum();
}

} // namespace ctl
