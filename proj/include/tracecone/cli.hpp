#pragma once

// The tracecone command-line surface. run() takes the arguments after the
// program name and writes only to the given streams, so tests can drive it
// in-process.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracecone/circumcenter.hpp"
#include "tracecone/fuzz.hpp"
#include "tracecone/geometry.hpp"
#include "tracecone/io.hpp"
#include "tracecone/synth.hpp"
#include "tracecone/unitarization.hpp"

namespace tracecone::cli {

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_invalid_input = 2, exit_unbounded = 3, exit_property = 4 };

inline int exit_code_for(Errc code) noexcept {
    switch (code) {
        case Errc::order_exceeded:
        case Errc::budget_exceeded: return exit_unbounded;
        case Errc::non_convergence: return exit_property;
        default: return exit_invalid_input;
    }
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

inline std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) {
            throw Error(Errc::invalid_argument, std::string("bad entry '") + item + "' in " + what);
        }
        out.push_back(value);
    }
    if (out.empty()) throw Error(Errc::invalid_argument, std::string(what) + " is empty");
    return out;
}

inline PositiveElement positive_named(const Instance& instance, const std::string& name) {
    return positivize(instance.get(name).value);
}

/// Points of a circumcenter instance: the "point" elements, or every element
/// when none is tagged.
inline std::vector<PositiveElement> point_set(const Instance& instance) {
    std::vector<AlgebraElement> raw = instance.with_role(Role::point);
    if (raw.empty()) {
        for (const auto& e : instance.elements) raw.push_back(e.value);
    }
    std::vector<PositiveElement> out;
    for (const auto& x : raw) out.push_back(positivize(x));
    return out;
}

inline FixedPointMethod parse_method(const std::string& text) {
    if (text == "circumcenter") return FixedPointMethod::circumcenter;
    if (text == "karcher") return FixedPointMethod::karcher;
    throw Error(Errc::invalid_argument, "unknown method '" + text + "'");
}

inline void write_report(const std::string& path, const Report& report) {
    if (!path.empty()) write_json_file(path, report.to_json());
}

}  // namespace detail

struct DistanceArgs {
    std::string instance, a, b, out;
};

inline int cmd_distance(const DistanceArgs& args, std::ostream& out) {
    const auto start = detail::Clock::now();
    const Instance instance = read_instance(args.instance);
    const double d = distance(detail::positive_named(instance, args.a), detail::positive_named(instance, args.b));
    out << std::fixed << std::setprecision(12) << d << '\n' << std::defaultfloat;

    Report report{"distance", {{"instance", args.instance}, {"a", args.a}, {"b", args.b}}};
    report.payload = {{"distance", d}};
    report.seconds = detail::seconds_since(start);
    detail::write_report(args.out, report);
    return exit_ok;
}

struct GeodesicArgs {
    std::string instance, a, b, out;
    double t = 0.5;
};

inline int cmd_geodesic(const GeodesicArgs& args, std::ostream& out) {
    const auto start = detail::Clock::now();
    const Instance instance = read_instance(args.instance);
    const GeodesicSegment segment(detail::positive_named(instance, args.a), detail::positive_named(instance, args.b));
    const PositiveElement point = segment(args.t);
    print_element(out, point.element());

    Report report{"geodesic", {{"instance", args.instance}, {"a", args.a}, {"b", args.b}, {"t", args.t}}};
    report.payload = {{"point", element_to_json(point.element())}};
    report.seconds = detail::seconds_since(start);
    detail::write_report(args.out, report);
    return exit_ok;
}

struct CircumcenterArgs {
    std::string instance, out;
    std::string method = "circumcenter";
    double tol = 1e-8;
    int max_iter = 0;
};

inline int cmd_circumcenter(const CircumcenterArgs& args, std::ostream& out) {
    const auto start = detail::Clock::now();
    const Instance instance = read_instance(args.instance);
    const auto points = detail::point_set(instance);
    const FixedPointMethod method = detail::parse_method(args.method);

    Report report{"circumcenter",
                  {{"instance", args.instance}, {"method", args.method}, {"tol", args.tol}, {"max_iter", args.max_iter}}};
    PositiveElement center = PositiveElement::identity(instance.algebra);
    bool converged = false;
    if (method == FixedPointMethod::circumcenter) {
        CircumcenterOptions options;
        options.tol = args.tol;
        options.max_iter = args.max_iter;
        const EnclosingBall ball = circumcenter(points, options);
        center = ball.center;
        converged = ball.converged;
        out << "radius " << std::setprecision(12) << ball.radius << '\n';
        report.payload = {{"radius", ball.radius}, {"iterations", ball.iterations}};
        double farthest = 0.0;
        for (const auto& p : points) farthest = std::max(farthest, distance(ball.center, p));
        report.checks.push_back(make_check("radius_consistency", std::abs(farthest - ball.radius), 1e-9));
    } else {
        KarcherOptions options;
        options.tol = args.tol;
        if (args.max_iter > 0) options.max_iter = args.max_iter;
        const KarcherMean mean = karcher_mean(points, options);
        center = mean.mean;
        converged = mean.converged;
        out << "gradient " << std::setprecision(12) << mean.gradient_norm << '\n';
        report.payload = {{"gradient_norm", mean.gradient_norm}, {"iterations", mean.iterations}};
    }
    report.checks.push_back(make_check("converged", converged ? 0.0 : 1.0, 0.0));
    report.payload["center"] = element_to_json(center.element());
    print_element(out, center.element());
    report.seconds = detail::seconds_since(start);
    detail::write_report(args.out, report);
    return report.all_pass() ? exit_ok : exit_property;
}

struct UnitarizeArgs {
    std::string instance, out;
    std::string method = "circumcenter";
    double tol = 1e-8;
    int max_iter = 0;
    std::size_t max_order = 10000;
};

inline int cmd_unitarize(const UnitarizeArgs& args, std::ostream& out, std::ostream& err) {
    const auto start = detail::Clock::now();
    const Instance instance = read_instance(args.instance);
    const auto generators = instance.with_role(Role::generator);

    UnitarizeOptions options;
    options.tol = args.tol;
    options.max_iter = args.max_iter;
    options.max_order = args.max_order;
    options.method = detail::parse_method(args.method);

    Report report{"unitarize",
                  {{"instance", args.instance},
                   {"method", args.method},
                   {"tol", args.tol},
                   {"max_iter", args.max_iter},
                   {"max_order", args.max_order}}};

    const GroupTable table = close_group(instance.algebra, generators, args.max_order);
    report.payload = {{"group_order", table.order()}, {"closure", std::string(to_string(table.status))}};
    if (!table.closed) {
        report.checks.push_back(make_check("closure", 1.0, 0.0));
        report.seconds = detail::seconds_since(start);
        detail::write_report(args.out, report);
        err << "error: " << to_string(table.status) << " after " << table.order()
            << " elements; the generated group is not uniformly bounded or exceeds --max-order\n";
        return exit_unbounded;
    }

    const UnitarizationCertificate cert = unitarize(table, options);
    const CertificateResiduals fresh = recompute_residuals(cert, table);
    const bool verified = verify_certificate(cert, table, args.tol);

    UnitarizationCertificate reported = cert;
    reported.residual_unitarity = fresh.unitarity;
    reported.residual_fixed_point = fresh.fixed_point;
    reported.orbit_band_ok = fresh.orbit_band_ok;
    reported.unitarizer_band_ok = fresh.unitarizer_band_ok;

    report.checks.push_back(make_check("residual_unitarity", fresh.unitarity, args.tol));
    report.checks.push_back(make_check("residual_fixed_point", fresh.fixed_point, args.tol));
    report.checks.push_back(make_check("orbit_band", fresh.orbit_band_ok ? 0.0 : 1.0, 0.0));
    report.checks.push_back(make_check("unitarizer_band", fresh.unitarizer_band_ok ? 0.0 : 1.0, 0.0));
    report.checks.push_back(cert.converged ? make_check("converged", 0.0, 0.0)
                                           : CheckRecord{"converged", CheckStatus::warn, 1.0, 0.0});
    report.certificate = certificate_to_json(reported);
    report.seconds = detail::seconds_since(start);
    detail::write_report(args.out, report);

    out << "group order " << table.order() << ", M = " << std::setprecision(12) << table.uniform_bound << '\n';
    out << "residual_unitarity " << fresh.unitarity << '\n';
    out << "residual_fixed_point " << fresh.fixed_point << '\n';
    out << "unitarizer s:\n";
    print_element(out, cert.unitarizer);
    out << (verified ? "certificate verified" : "certificate FAILED verification") << '\n';
    return verified ? exit_ok : exit_property;
}

struct SynthArgs {
    std::string blocks = "2";
    std::string weights;
    std::string group = "cyclic-4";
    double cond = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_synth(const SynthArgs& args, std::ostream& out) {
    std::vector<Index> dims;
    for (double d : detail::parse_list(args.blocks, "--blocks")) {
        if (d < 1 || d != std::floor(d)) throw Error(Errc::invalid_argument, "--blocks needs positive integers");
        dims.push_back(static_cast<Index>(d));
    }
    std::vector<double> weights;
    if (args.weights.empty()) {
        weights.assign(dims.size(), 1.0 / static_cast<double>(dims.size()));
    } else {
        weights = detail::parse_list(args.weights, "--weights");
        if (weights.size() != dims.size()) throw Error(Errc::invalid_argument, "--weights and --blocks differ in length");
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(std::abs(total - 1.0) <= 1e-9)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trace not normalized: weights sum to " << total;
            throw Error(Errc::invalid_algebra, msg.str());
        }
    }
    const AlgebraPtr algebra = BlockAlgebra::make(dims, weights);
    const SynthInstance synth = synthesize(algebra, parse_group_spec(args.group), args.cond, args.seed);

    Instance instance{algebra, {}};
    for (std::size_t i = 0; i < synth.generators.size(); ++i) {
        instance.elements.push_back({"g" + std::to_string(i), Role::generator, synth.generators[i]});
    }
    const Json doc = instance_to_json(instance);
    if (args.out.empty()) {
        out << doc.dump(2) << '\n';
        return exit_ok;
    }
    write_json_file(args.out, doc);

    Json hidden{{"schema", schema_version},
                {"group", synth.group.name()},
                {"realized", synth.realized.name()},
                {"cond", args.cond},
                {"seed", args.seed},
                {"conjugator", element_to_json(synth.conjugator)}};
    Json unitaries = Json::array();
    for (const auto& u : synth.unitary_generators) unitaries.push_back(element_to_json(u));
    hidden["unitary_generators"] = std::move(unitaries);
    write_json_file(args.out + ".hidden.json", hidden);
    out << "wrote " << args.out << " (" << synth.realized.name() << ", " << synth.generators.size() << " generators)\n";
    return exit_ok;
}

struct FuzzArgs {
    std::string suite = "all";
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_fuzz(const FuzzArgs& args, std::ostream& out) {
    const auto start = detail::Clock::now();
    const fuzz::Suite suite = fuzz::parse_suite(args.suite);
    Report report{"fuzz", {{"suite", args.suite}, {"trials", args.trials}}, args.seed};
    report.checks = fuzz::run_suite(suite, args.trials, args.seed);
    report.seconds = detail::seconds_since(start);
    detail::write_report(args.out, report);

    out << std::setprecision(6);
    for (const auto& c : report.checks) {
        out << std::left << std::setw(5) << to_string(c.status) << ' ' << std::setw(44) << c.name << std::right
            << " measured " << c.measured;
        if (c.tolerance) out << " tol " << *c.tolerance;
        out << '\n';
    }
    out << (report.all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
    return report.all_pass() ? exit_ok : exit_property;
}

inline int run(const std::vector<std::string>& arguments, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed points and unitarizers on the positive cone of a finite block algebra", "tracecone"};
    app.require_subcommand(1);

    DistanceArgs distance_args;
    auto* distance_cmd = app.add_subcommand("distance", "d2 distance between two named positive elements");
    distance_cmd->add_option("instance", distance_args.instance, "instance file")->required();
    distance_cmd->add_option("a", distance_args.a, "element name")->required();
    distance_cmd->add_option("b", distance_args.b, "element name")->required();
    distance_cmd->add_option("--out", distance_args.out, "report file");

    GeodesicArgs geodesic_args;
    auto* geodesic_cmd = app.add_subcommand("geodesic", "point at parameter t on the geodesic from a to b");
    geodesic_cmd->add_option("instance", geodesic_args.instance, "instance file")->required();
    geodesic_cmd->add_option("a", geodesic_args.a, "element name")->required();
    geodesic_cmd->add_option("b", geodesic_args.b, "element name")->required();
    geodesic_cmd->add_option("--t", geodesic_args.t, "geodesic parameter")->capture_default_str();
    geodesic_cmd->add_option("--out", geodesic_args.out, "report file");

    CircumcenterArgs circ_args;
    auto* circ_cmd = app.add_subcommand("circumcenter", "minimal enclosing ball of the instance's points");
    circ_cmd->add_option("instance", circ_args.instance, "instance file")->required();
    circ_cmd->add_option("--tol", circ_args.tol, "solver tolerance")->capture_default_str();
    circ_cmd->add_option("--max-iter", circ_args.max_iter, "iteration cap (0: automatic)")->capture_default_str();
    circ_cmd->add_option("--method", circ_args.method, "circumcenter or karcher")->capture_default_str();
    circ_cmd->add_option("--out", circ_args.out, "report file");

    UnitarizeArgs unit_args;
    auto* unit_cmd = app.add_subcommand("unitarize", "unitarizer for the group generated by the instance's generators");
    unit_cmd->add_option("instance", unit_args.instance, "instance file")->required();
    unit_cmd->add_option("--tol", unit_args.tol, "solver and verification tolerance")->capture_default_str();
    unit_cmd->add_option("--max-iter", unit_args.max_iter, "iteration cap (0: automatic)")->capture_default_str();
    unit_cmd->add_option("--max-order", unit_args.max_order, "group order cap")->capture_default_str();
    unit_cmd->add_option("--method", unit_args.method, "circumcenter or karcher")->capture_default_str();
    unit_cmd->add_option("--out", unit_args.out, "report file");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "random instance with a hidden unitarizable ground truth");
    synth_cmd->add_option("--blocks", synth_args.blocks, "comma-separated block sizes")->capture_default_str();
    synth_cmd->add_option("--weights", synth_args.weights, "comma-separated trace weights (default: equal)");
    synth_cmd->add_option("--group", synth_args.group, "cyclic-k, dihedral-k, perm-k or random-unitary-order-n")
        ->capture_default_str();
    synth_cmd->add_option("--cond", synth_args.cond, "condition number of the hidden conjugator")->capture_default_str();
    synth_cmd->add_option("--seed", synth_args.seed, "random seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_args.out, "instance file (stdout if omitted)");

    FuzzArgs fuzz_args;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded property suites");
    fuzz_cmd->add_option("--suite", fuzz_args.suite, "algebra, metric, band, hull, circumcenter, unitarize or all")
        ->capture_default_str();
    fuzz_cmd->add_option("--trials", fuzz_args.trials, "trials per suite")->capture_default_str();
    fuzz_cmd->add_option("--seed", fuzz_args.seed, "base seed; trial i uses seed + i")->capture_default_str();
    fuzz_cmd->add_option("--out", fuzz_args.out, "report file");

    std::vector<std::string> reversed(arguments.rbegin(), arguments.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    try {
        if (*distance_cmd) return cmd_distance(distance_args, out);
        if (*geodesic_cmd) return cmd_geodesic(geodesic_args, out);
        if (*circ_cmd) return cmd_circumcenter(circ_args, out);
        if (*unit_cmd) return cmd_unitarize(unit_args, out, err);
        if (*synth_cmd) return cmd_synth(synth_args, out);
        if (*fuzz_cmd) return cmd_fuzz(fuzz_args, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}

}  // namespace tracecone::cli
