#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "ctl/spectral.hpp"
#include "ctl/system.hpp"
#include "ctl/zonotope.hpp"

namespace ctl {

enum class SpectrumKind { distinct, single_jordan, multi_jordan };

inline const char* spectrum_kind_name(SpectrumKind k) noexcept
{
    switch (k) {
    case SpectrumKind::distinct: return "distinct";
    case SpectrumKind::single_jordan: return "single-jordan";
    case SpectrumKind::multi_jordan: return "multi-jordan";
    }
    return "unknown";
}

/// Infinite-horizon volume result. All analytic volumes use the unit-cube
/// coefficient convention; the symmetric-region value is 2^n times larger.
struct VolumeReport {
    double analytic = 0.0;
    std::optional<double> oracle;
    std::optional<int> horizon_used;
    std::optional<double> rel_gap;
    SpectrumKind kind = SpectrumKind::distinct;
};

namespace detail {

inline void require_unit_interval(double lambda)
{
    if (!(lambda >= 0.0 && lambda < 1.0))
        fail(errc::eigenvalue_out_of_range,
             "eigenvalue " + std::to_string(lambda) + " outside [0, 1)");
}

/// Signed contribution of one Jordan block:
/// coupling^m / ((1 - lambda)^m (1 - lambda^2)^{m(m-1)/2}).
inline double block_gain(double lambda, int m, double coupling)
{
    const double decay = std::pow(1.0 - lambda, m);
    const double pairing = std::pow(1.0 - lambda * lambda, m * (m - 1) / 2);
    return std::pow(coupling, m) / (decay * pairing);
}

/// prod_{i<j} ((lambda_i - lambda_j) / (1 - lambda_i lambda_j))^{m_i m_j}.
inline double cross_evenness(const std::vector<JordanBlock>& blocks)
{
    double prod = 1.0;
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j) {
            const double ratio = (blocks[i].lambda - blocks[j].lambda)
                / (1.0 - blocks[i].lambda * blocks[j].lambda);
            prod *= std::pow(ratio, blocks[i].size * blocks[j].size);
        }
    return prod;
}

inline void require_analytic_spectrum(const std::vector<JordanBlock>& blocks)
{
    for (const auto& b : blocks)
        require_unit_interval(b.lambda);
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks[i].lambda == blocks[j].lambda)
                fail(errc::shared_block_eigenvalue,
                     "two Jordan blocks share eigenvalue " + std::to_string(blocks[i].lambda)
                         + "; the pair is uncontrollable with a single input");
}

/// Shared kernel: infinite-horizon volume from a resolved Jordan structure.
inline double volume_from_structure(const JordanStructure& js, const Vector& b)
{
    require_analytic_spectrum(js.blocks);
    double block_prod = 1.0;
    for (size_t i = 0; i < js.blocks.size(); ++i)
        block_prod *= block_gain(js.blocks[i].lambda, js.blocks[i].size,
                                 js.last_row_dot(static_cast<int>(i), b));
    return std::abs(cross_evenness(js.blocks)) * std::abs(js.P.determinant() * block_prod);
}

inline SpectrumKind classify(const JordanStructure& js)
{
    if (js.blocks.size() == 1 && js.blocks[0].size > 1)
        return SpectrumKind::single_jordan;
    for (const auto& b : js.blocks)
        if (b.size > 1)
            return SpectrumKind::multi_jordan;
    return SpectrumKind::distinct;
}

} // namespace detail

/// Volume for a single Jordan block in canonical form:
/// |b_last|^n / ((1 - lambda)^n (1 - lambda^2)^{n(n-1)/2}).
inline double volume_single_jordan(double lambda, int n, double b_last)
{
    if (n < 1)
        fail(errc::dimension_mismatch, "order must be at least 1");
    detail::require_unit_interval(lambda);
    return std::abs(detail::block_gain(lambda, n, b_last));
}

/// Volume from a resolved Jordan structure and input column b.
inline double volume_jordan(const JordanStructure& js, const Matrix& b)
{
    if (b.rows() != js.order() || b.cols() != 1)
        fail(errc::dimension_mismatch, "input column does not match structure order");
    return detail::volume_from_structure(js, Vector(b.col(0)));
}

/// Volume for a system with n distinct real eigenvalues in [0, 1).
inline double volume_distinct(const LdtSystem& sys)
{
    const Vector b = sys.input_vector();
    const JordanStructure js = jordan_structure(sys.A());
    for (size_t i = 0; i < js.blocks.size(); ++i) {
        if (js.blocks[i].size > 1
            || (i > 0 && js.blocks[i].lambda == js.blocks[i - 1].lambda))
            fail(errc::repeated_eigenvalues,
                 "spectrum has a repeated eigenvalue near " + std::to_string(js.blocks[i].lambda)
                     + "; use the Jordan route");
    }
    return detail::volume_from_structure(js, b);
}

/// Classifies the spectrum and routes to the matching closed form.
inline VolumeReport volume_auto(const LdtSystem& sys, double cluster_tol = kDefaultClusterTol)
{
    const Vector b = sys.input_vector();
    const JordanStructure js = jordan_structure(sys.A(), cluster_tol);
    VolumeReport report;
    report.kind = detail::classify(js);
    report.analytic = detail::volume_from_structure(js, b);
    return report;
}

/// volume_auto against an externally resolved structure.
inline VolumeReport volume_auto(const LdtSystem& sys, const JordanStructure& js)
{
    const Vector b = sys.input_vector();
    VolumeReport report;
    report.kind = detail::classify(js);
    report.analytic = detail::volume_from_structure(js, b);
    return report;
}

/// Volume of the bounded infinite-horizon controllability region of an
/// anti-stable system: |det A|^{-1} times the reach volume of (A^{-1}, B).
inline double volume_controllability(const LdtSystem& sys)
{
    const RealSpectrum spec = real_spectrum(sys.A());
    for (int i = 0; i < spec.eigenvalues.size(); ++i)
        if (std::abs(spec.eigenvalues(i)) <= 1.0)
            fail(errc::not_anti_stable,
                 "eigenvalue " + std::to_string(spec.eigenvalues(i))
                     + " is not outside the unit circle; the region is unbounded");
    const LdtSystem inverse_pair(inverse(sys.A()), sys.B());
    return volume_auto(inverse_pair).analytic / std::abs(sys.A().determinant());
}

/// Evaluates the perturbed-system volume for each step in `deltas`. The
/// sequence approaches the single-block volume as delta shrinks.
inline std::vector<std::pair<double, double>> jordan_limit_sequence(double lambda, int n,
                                                                    double b_last,
                                                                    const std::vector<double>& deltas)
{
    Matrix b = Matrix::Zero(n, 1);
    b(n - 1, 0) = b_last;
    std::vector<std::pair<double, double>> out;
    out.reserve(deltas.size());
    for (double delta : deltas) {
        const LdtSystem sys = perturbed_jordan_system(lambda, n, delta, b);
        out.emplace_back(delta, volume_distinct(sys));
    }
    return out;
}

} // namespace ctl
