#pragma once

#include <cmath>
#include <vector>

#include "ctl/spectral.hpp"
#include "ctl/volume.hpp"

namespace ctl {

enum class FactorKind { distinct, jordan };

inline const char* factor_kind_name(FactorKind k) noexcept
{
    return k == FactorKind::distinct ? "distinct" : "jordan";
}

/// The three factor families deconstructed from the volume formulas.
/// f1 measures eigenvalue evenness (region flattening), f2 holds the
/// circumscribed-box half-widths per eigen-coordinate, f3 the modal
/// controllability per eigenvalue or Jordan block.
struct ShapeFactors {
    double f1 = 0.0;
    std::vector<double> f2;
    std::vector<double> f3;
    FactorKind kind = FactorKind::distinct;
    bool same_sign_ok = true;
};

/// Eigenvalue evenness for Jordan blocks:
/// |prod_{i<j} ((l_i - l_j)/(1 - l_i l_j))^{m_i m_j}| x prod_i (1 - l_i^2)^{-m_i(m_i-1)/2}.
inline double evenness_factor(const std::vector<JordanBlock>& blocks)
{
    for (const auto& b : blocks)
        detail::require_unit_interval(b.lambda);
    double within = 1.0;
    for (const auto& b : blocks)
        within /= std::pow(1.0 - b.lambda * b.lambda, b.size * (b.size - 1) / 2);
    return std::abs(detail::cross_evenness(blocks)) * within;
}

/// Eigenvalue evenness for a distinct spectrum; always in [0, 1], zero when
/// two eigenvalues coincide.
inline double evenness_factor(const std::vector<double>& eigenvalues)
{
    std::vector<JordanBlock> blocks;
    blocks.reserve(eigenvalues.size());
    for (double lambda : eigenvalues)
        blocks.push_back({lambda, 1});
    return evenness_factor(blocks);
}

/// Modal controllability per block: |q_{i,m_i} b|^{m_i} (plain |q_i b| for
/// size-1 blocks).
inline std::vector<double> modal_controllability(const JordanStructure& js, const Vector& b)
{
    std::vector<double> out;
    out.reserve(js.blocks.size());
    for (size_t i = 0; i < js.blocks.size(); ++i)
        out.push_back(std::pow(std::abs(js.last_row_dot(static_cast<int>(i), b)),
                               js.blocks[i].size));
    return out;
}

inline std::vector<double> modal_controllability(const LdtSystem& sys)
{
    return modal_controllability(jordan_structure(sys.A()), sys.input_vector());
}

namespace detail {

/// Box half-widths by the signed backward recursion within each block:
/// s_{m} = q_{i,m} b / (1-l), s_{j} = (q_{i,j} b + s_{j+1}) / (1-l), reported
/// as |s_j|. The box reading degrades when q_{i,j} b and the running tail
/// disagree in sign; that case is flagged rather than rejected.
inline std::vector<double> box_halfwidths_impl(const JordanStructure& js, const Vector& b,
                                               bool& same_sign_ok)
{
    same_sign_ok = true;
    std::vector<double> out(static_cast<size_t>(js.order()), 0.0);
    int offset = 0;
    for (size_t i = 0; i < js.blocks.size(); ++i) {
        const auto& blk = js.blocks[i];
        detail::require_unit_interval(blk.lambda);
        const double decay = 1.0 - blk.lambda;
        double tail = 0.0;
        for (int j = blk.size; j >= 1; --j) {
            const double coupling = js.left_dot(static_cast<int>(i), j, b);
            if (j < blk.size && coupling * tail < 0.0)
                same_sign_ok = false;
            tail = (j == blk.size ? coupling : coupling + tail) / decay;
            out[static_cast<size_t>(offset + j - 1)] = std::abs(tail);
        }
        // Report magnitudes; the recursion itself stays signed.
        offset += blk.size;
    }
    return out;
}

} // namespace detail

/// Half-widths for a distinct spectrum: |q_i b| / (1 - lambda_i) per
/// eigen-coordinate, ascending eigenvalue order.
inline std::vector<double> box_halfwidths(const LdtSystem& sys)
{
    const Vector b = sys.input_vector();
    const JordanStructure js = jordan_structure(sys.A());
    for (const auto& blk : js.blocks)
        if (blk.size > 1)
            fail(errc::repeated_eigenvalues, "spectrum is not distinct; use the Jordan route");
    bool ok = true;
    return detail::box_halfwidths_impl(js, b, ok);
}

/// Half-widths for a Jordan structure, flattened in block order, plus the
/// same-sign flag for the box interpretation.
inline std::pair<std::vector<double>, bool> box_halfwidths(const JordanStructure& js,
                                                           const Vector& b)
{
    bool ok = true;
    auto values = detail::box_halfwidths_impl(js, b, ok);
    return {std::move(values), ok};
}

/// Full factor deconstruction with the exact identity residual:
/// the eigen-space volume V / |det P| against f1 times the product of the
/// last-row factors (|q_{i,m_i} b| / (1 - lambda_i))^{m_i}. The recursive f2
/// half-widths are reported alongside but do not enter the identity; for
/// repeated eigenvalues their product is not the volume-to-f1 ratio.
struct Decomposition {
    ShapeFactors factors;
    double volume = 0.0;          // unit-cube convention
    double volume_eigen = 0.0;    // volume / |det P|
    std::vector<double> last_row_factors;
    double identity_residual = 0.0;
};

inline Decomposition decompose(const JordanStructure& js, const Vector& b)
{
    Decomposition d;
    bool jordan_case = false;
    for (const auto& blk : js.blocks)
        if (blk.size > 1)
            jordan_case = true;

    d.factors.kind = jordan_case ? FactorKind::jordan : FactorKind::distinct;
    d.factors.f1 = evenness_factor(js.blocks);
    d.factors.f2 = detail::box_halfwidths_impl(js, b, d.factors.same_sign_ok);
    d.factors.f3 = modal_controllability(js, b);

    d.volume = detail::volume_from_structure(js, b);
    d.volume_eigen = d.volume / std::abs(js.P.determinant());

    d.last_row_factors.reserve(js.blocks.size());
    double product = d.factors.f1;
    for (size_t i = 0; i < js.blocks.size(); ++i) {
        const auto& blk = js.blocks[i];
        const double width = std::abs(js.last_row_dot(static_cast<int>(i), b)) / (1.0 - blk.lambda);
        const double factor = std::pow(width, blk.size);
        d.last_row_factors.push_back(factor);
        product *= factor;
    }
    if (d.volume_eigen == 0.0 && product == 0.0)
        d.identity_residual = 0.0;
    else
        d.identity_residual = std::abs(d.volume_eigen - product) / d.volume_eigen;
    return d;
}

inline Decomposition decompose(const LdtSystem& sys, double cluster_tol = kDefaultClusterTol)
{
    return decompose(jordan_structure(sys.A(), cluster_tol), sys.input_vector());
}

} // namespace ctl
