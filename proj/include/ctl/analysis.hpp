#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctl/factors.hpp"
#include "ctl/polygon.hpp"
#include "ctl/system_io.hpp"
#include "ctl/volume.hpp"
#include "ctl/zonotope.hpp"

namespace ctl {

// Spectra whose closest eigenvalue pair sits below this gap get a
// near-repeated warning: the distinct-case formula starts cancelling there.
inline constexpr double kNearRepeatedGap = 1e-4;

struct AnalyzeOptions {
    int horizon = 200;
    RegionKind region = RegionKind::reach;
    double cluster_tol = kDefaultClusterTol;
    bool with_oracle = true;
};

/// Everything one analysis run produces: the analytic volume in both
/// conventions, the enumeration oracle at the requested horizon, the factor
/// deconstruction and advisory warnings.
struct AnalysisReport {
    SpectrumKind kind = SpectrumKind::distinct;
    RegionKind region = RegionKind::reach;
    int horizon = 0;
    double analytic_unit = 0.0;
    double analytic_symmetric = 0.0;
    std::optional<double> oracle;
    std::optional<double> rel_gap;
    Decomposition decomposition;
    std::vector<std::string> warnings;
    nlohmann::json system_echo;
};

inline AnalysisReport analyze_system(const SystemFile& sf, const AnalyzeOptions& opt)
{
    const LdtSystem& original = sf.system;

    // Control-region analysis runs on the transformed pair (A^{-1}, A^{-1}B),
    // whose reach generators coincide with the control generators of (A, B).
    std::optional<LdtSystem> transformed;
    if (opt.region == RegionKind::control) {
        const RealSpectrum spec = real_spectrum(original.A());
        for (int i = 0; i < spec.eigenvalues.size(); ++i)
            if (std::abs(spec.eigenvalues(i)) <= 1.0)
                fail(errc::not_anti_stable,
                     "eigenvalue " + std::to_string(spec.eigenvalues(i))
                         + " is not outside the unit circle; the control region is unbounded");
        const Matrix ai = inverse(original.A());
        transformed.emplace(ai, ai * original.B());
    }
    const LdtSystem& work = transformed ? *transformed : original;

    const Vector b = work.input_vector();

    // A declared Jordan structure describes A itself, not A^{-1}; under the
    // control transform the structure is re-detected numerically.
    const JordanStructure js = (sf.jordan && opt.region == RegionKind::reach)
        ? jordan_from_blocks(work.A(), sf.jordan->blocks, sf.jordan->P)
        : jordan_structure(work.A(), opt.cluster_tol);

    AnalysisReport report;
    report.kind = detail::classify(js);
    report.region = opt.region;
    report.horizon = opt.horizon;
    report.decomposition = decompose(js, b);
    report.analytic_unit = report.decomposition.volume;
    report.analytic_symmetric = std::ldexp(report.analytic_unit, work.order());
    report.system_echo = system_to_json(sf);

    if (opt.with_oracle) {
        const Zonotope z = build_generators(original, opt.horizon,
                                            opt.region == RegionKind::control ? RegionKind::control
                                                                              : RegionKind::reach);
        report.oracle = enumerated_volume(z);
        if (report.analytic_unit > 0.0)
            report.rel_gap = std::abs(report.analytic_unit - *report.oracle) / report.analytic_unit;
    }

    for (double f3 : report.decomposition.factors.f3)
        if (f3 == 0.0) {
            report.warnings.push_back("Uncontrollable");
            break;
        }
    double min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < js.blocks.size(); ++i)
        for (size_t j = i + 1; j < js.blocks.size(); ++j)
            min_gap = std::min(min_gap, std::abs(js.blocks[i].lambda - js.blocks[j].lambda));
    if (min_gap < kNearRepeatedGap)
        report.warnings.push_back("NearRepeatedSpectrum");

    return report;
}

namespace io_detail {

inline nlohmann::json factors_to_json(const Decomposition& d)
{
    nlohmann::json f;
    f["f1"] = d.factors.f1;
    f["f2"] = d.factors.f2;
    f["f3"] = d.factors.f3;
    f["same_sign_ok"] = d.factors.same_sign_ok;
    f["kind"] = factor_kind_name(d.factors.kind);
    f["last_row_factors"] = d.last_row_factors;
    f["identity_residual"] = d.identity_residual;
    return f;
}

inline std::string fmt4(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

inline std::string join4(const std::vector<double>& xs)
{
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += ", ";
        out += fmt4(xs[i]);
    }
    return out;
}

} // namespace io_detail

inline nlohmann::json report_to_json(const AnalysisReport& r)
{
    nlohmann::json j;
    j["case"] = spectrum_kind_name(r.kind);
    j["region"] = region_name(r.region);
    j["horizon"] = r.horizon;
    j["volume"]["analytic_unit"] = r.analytic_unit;
    j["volume"]["analytic_symmetric"] = r.analytic_symmetric;
    j["volume"]["oracle"] = r.oracle ? nlohmann::json(*r.oracle) : nlohmann::json();
    j["volume"]["rel_gap"] = r.rel_gap ? nlohmann::json(*r.rel_gap) : nlohmann::json();
    j["factors"] = io_detail::factors_to_json(r.decomposition);
    j["warnings"] = r.warnings;
    j["system"] = r.system_echo;
    return j;
}

/// The analyze report restricted to classification and factors.
inline nlohmann::json factors_report_to_json(const AnalysisReport& r)
{
    nlohmann::json j;
    j["case"] = spectrum_kind_name(r.kind);
    j["factors"] = io_detail::factors_to_json(r.decomposition);
    j["warnings"] = r.warnings;
    return j;
}

inline std::string report_to_table(const AnalysisReport& r, bool factors_only = false)
{
    using io_detail::fmt4;
    using io_detail::join4;
    std::ostringstream out;
    out << "case                       " << spectrum_kind_name(r.kind) << "\n";
    if (!factors_only) {
        out << "region                     " << region_name(r.region) << "\n";
        out << "horizon                    " << r.horizon << "\n";
        out << "volume.analytic_unit       " << fmt4(r.analytic_unit) << "\n";
        out << "volume.analytic_symmetric  " << fmt4(r.analytic_symmetric) << "\n";
        out << "volume.oracle              " << (r.oracle ? fmt4(*r.oracle) : "-") << "\n";
        out << "volume.rel_gap             " << (r.rel_gap ? fmt4(*r.rel_gap) : "-") << "\n";
    }
    out << "factors.f1                 " << fmt4(r.decomposition.factors.f1) << "\n";
    out << "factors.f2                 " << join4(r.decomposition.factors.f2) << "\n";
    out << "factors.f3                 " << join4(r.decomposition.factors.f3) << "\n";
    out << "factors.same_sign_ok       " << (r.decomposition.factors.same_sign_ok ? "true" : "false")
        << "\n";
    out << "factors.identity_residual  " << fmt4(r.decomposition.identity_residual) << "\n";
    out << "warnings                   ";
    if (r.warnings.empty()) {
        out << "(none)";
    } else {
        for (size_t i = 0; i < r.warnings.size(); ++i)
            out << (i ? ", " : "") << r.warnings[i];
    }
    out << "\n";
    return out.str();
}

} // namespace ctl
