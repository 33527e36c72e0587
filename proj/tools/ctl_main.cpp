// ctl: control-ability analysis for linear discrete-time systems.
//
// Subcommands: analyze, factors, region, converge, limit.
// Exit codes: 0 success, 1 I/O or parse failure, 2 structural failure
// (eigenvalue range, singularity, bad declared structure), 3 unsupported
// request (multi-input analytic path, region export for order != 2).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctl/ctl.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitStructural = 2;
constexpr int kExitUnsupported = 3;

std::string fmt17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt4(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

ctl::RegionKind parse_region(const std::string& name)
{
    return name == "control" ? ctl::RegionKind::control : ctl::RegionKind::reach;
}

struct AnalyzeArgs {
    std::string system_path;
    int horizon = 200;
    std::string region = "reach";
    std::string format = "json";
};

int run_analyze(const AnalyzeArgs& args, bool factors_only)
{
    const ctl::SystemFile sf = ctl::load_system_file(args.system_path);
    ctl::AnalyzeOptions opt;
    opt.horizon = args.horizon;
    opt.region = parse_region(args.region);
    opt.with_oracle = !factors_only;
    const ctl::AnalysisReport report = ctl::analyze_system(sf, opt);

    if (args.format == "table") {
        std::cout << ctl::report_to_table(report, factors_only);
    } else {
        const auto j = factors_only ? ctl::factors_report_to_json(report)
                                    : ctl::report_to_json(report);
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

struct RegionArgs {
    std::string system_path;
    int horizon = 0;
    std::string out_path;
    std::string convention = "symmetric";
};

int run_region(const RegionArgs& args)
{
    const ctl::SystemFile sf = ctl::load_system_file(args.system_path);
    if (sf.system.order() != 2)
        ctl::fail(ctl::errc::dimension_unsupported,
                  "region export needs a 2-dimensional system, got order "
                      + std::to_string(sf.system.order()));

    const ctl::Zonotope z = ctl::build_generators(sf.system, args.horizon, ctl::RegionKind::reach,
                                                  ctl::Convention::symmetric);
    ctl::Polygon2D poly = ctl::boundary_polygon(z);

    if (args.convention == "unit-cube") {
        // Same shape at half scale, recentered at half the generator sum.
        Eigen::Vector2d center = Eigen::Vector2d::Zero();
        for (int k = 0; k < z.count(); ++k)
            center += z.generators.col(k);
        for (auto& v : poly.vertices)
            v = (v + center) / 2.0;
    }

    std::ofstream out(args.out_path);
    if (!out)
        throw ctl::ParseError("cannot write " + args.out_path);
    out << "x,y\n";
    for (const auto& v : poly.vertices)
        out << fmt17(v.x()) << "," << fmt17(v.y()) << "\n";
    std::cout << "wrote " << poly.vertices.size() << " vertices to " << args.out_path << "\n";
    return 0;
}

struct ConvergeArgs {
    std::string system_path;
    int max_horizon = 0;
    int step = 0;
    std::string region = "reach";
    std::string format = "table";
};

int run_converge(const ConvergeArgs& args)
{
    const ctl::SystemFile sf = ctl::load_system_file(args.system_path);
    if (args.step < 1 || args.max_horizon < args.step)
        throw ctl::ParseError("--step must be >= 1 and --max-horizon >= --step");

    ctl::AnalyzeOptions opt;
    opt.region = parse_region(args.region);
    opt.with_oracle = false;
    const ctl::AnalysisReport base = ctl::analyze_system(sf, opt);
    const double analytic = base.analytic_unit;

    const bool csv = args.format == "csv";
    if (csv)
        std::cout << "N,oracle,analytic,rel_gap\n";
    else
        std::cout << "N        oracle       analytic     rel_gap\n";
    for (int n = args.step; n <= args.max_horizon; n += args.step) {
        const ctl::Zonotope z = ctl::build_generators(sf.system, n, opt.region);
        const double oracle = ctl::enumerated_volume(z);
        const double gap = analytic > 0.0 ? std::abs(analytic - oracle) / analytic
                                          : std::abs(analytic - oracle);
        if (csv) {
            std::cout << n << "," << fmt17(oracle) << "," << fmt17(analytic) << "," << fmt17(gap)
                      << "\n";
        } else {
            char line[160];
            std::snprintf(line, sizeof(line), "%-8d %-12s %-12s %s\n", n, fmt4(oracle).c_str(),
                          fmt4(analytic).c_str(), fmt4(gap).c_str());
            std::cout << line;
        }
    }
    return 0;
}

struct LimitArgs {
    double lambda = 0.0;
    int size = 0;
    std::vector<double> deltas;
};

int run_limit(const LimitArgs& args)
{
    const double target = ctl::volume_single_jordan(args.lambda, args.size, 1.0);
    const auto sequence = ctl::jordan_limit_sequence(args.lambda, args.size, 1.0, args.deltas);
    std::cout << "delta        volume       jordan_volume\n";
    for (const auto& [delta, volume] : sequence) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-12s %-12s %s\n", fmt4(delta).c_str(),
                      fmt4(volume).c_str(), fmt4(target).c_str());
        std::cout << line;
    }
    return 0;
}

void print_error(const std::string& code, const std::string& message)
{
    nlohmann::json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Control-ability analysis for linear discrete-time systems"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand(
        "analyze", "Analytic volume, shape factors and enumeration cross-check");
    analyze->add_option("--system", analyze_args.system_path, "system JSON file")->required();
    analyze->add_option("--horizon", analyze_args.horizon, "oracle horizon (default 200)");
    analyze->add_option("--region", analyze_args.region, "reach or control")
        ->check(CLI::IsMember({"reach", "control"}));
    analyze->add_option("--format", analyze_args.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));

    AnalyzeArgs factors_args;
    auto* factors = app.add_subcommand("factors", "Shape factors only");
    factors->add_option("--system", factors_args.system_path, "system JSON file")->required();
    factors->add_option("--region", factors_args.region, "reach or control")
        ->check(CLI::IsMember({"reach", "control"}));
    factors->add_option("--format", factors_args.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));

    RegionArgs region_args;
    auto* region = app.add_subcommand("region", "Export the 2-D region boundary as CSV");
    region->add_option("--system", region_args.system_path, "system JSON file")->required();
    region->add_option("--horizon", region_args.horizon, "generator horizon")->required();
    region->add_option("--out", region_args.out_path, "output CSV path")->required();
    region->add_option("--convention", region_args.convention, "symmetric or unit-cube")
        ->check(CLI::IsMember({"symmetric", "unit-cube"}));

    ConvergeArgs converge_args;
    auto* converge = app.add_subcommand("converge", "Oracle volume vs analytic value over horizons");
    converge->add_option("--system", converge_args.system_path, "system JSON file")->required();
    converge->add_option("--max-horizon", converge_args.max_horizon, "largest horizon")->required();
    converge->add_option("--step", converge_args.step, "horizon step")->required();
    converge->add_option("--region", converge_args.region, "reach or control")
        ->check(CLI::IsMember({"reach", "control"}));
    converge->add_option("--format", converge_args.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}));

    LimitArgs limit_args;
    auto* limit = app.add_subcommand("limit", "Perturbed-spectrum volumes against the Jordan value");
    limit->add_option("--lambda", limit_args.lambda, "block eigenvalue")->required();
    limit->add_option("--size", limit_args.size, "block size")->required();
    limit->add_option("--deltas", limit_args.deltas, "perturbation steps")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (analyze->parsed())
            return run_analyze(analyze_args, /*factors_only=*/false);
        if (factors->parsed())
            return run_analyze(factors_args, /*factors_only=*/true);
        if (region->parsed())
            return run_region(region_args);
        if (converge->parsed())
            return run_converge(converge_args);
        if (limit->parsed())
            return run_limit(limit_args);
    } catch (const ctl::ParseError& e) {
        print_error("Parse", e.what());
        return kExitParse;
    } catch (const ctl::Error& e) {
        print_error(ctl::errc_name(e.code()), e.what());
        return (e.code() == ctl::errc::multi_input_unsupported
                || e.code() == ctl::errc::dimension_unsupported)
            ? kExitUnsupported
            : kExitStructural;
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return kExitParse;
    }
    return 0;
}
