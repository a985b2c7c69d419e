#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "repot/bounds.hpp"
#include "repot/classes.hpp"
#include "repot/concentration.hpp"
#include "repot/cost.hpp"
#include "repot/driver.hpp"
#include "repot/errors.hpp"
#include "repot/solvers.hpp"

using namespace repot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DiscreteMeasure discrete_or_throw(const Measure& m) {
    if (const auto* d = std::get_if<DiscreteMeasure>(&m)) return *d;
    throw ValidationError("this command needs a discrete measure");
}

RadialMeasure parse_profile(const std::string& spec, std::size_t dim) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const double param = colon == std::string::npos ? 1.0 : std::stod(spec.substr(colon + 1));
    if (name == "gaussian") return RadialMeasure(dim, GaussianProfile{param});
    if (name == "cauchy" || name == "student") return RadialMeasure(dim, CauchyProfile{param});
    if (name == "uniform") return RadialMeasure(dim, UniformProfile{param});
    if (name == "laplace") return RadialMeasure(dim, ExpGProfile{{0.0, 60.0 * param}, {0.0, 60.0}});
    throw ValidationError("unknown profile '" + name + "'");
}

std::string coupling_json(const Coupling& c) {
    nlohmann::ordered_json j;
    j["N"] = c.N();
    auto support = nlohmann::ordered_json::array();
    for (const auto& p : c.support()) support.push_back(p.coords());
    j["support"] = support;
    if (c.has_exact_weights()) {
        auto w = nlohmann::ordered_json::array();
        for (const auto& x : c.exact_weights()) w.push_back(rational_to_string(x));
        j["weights_flat"] = w;
    } else {
        j["weights_flat"] = c.weights();
    }
    j["shape"] = std::vector<std::size_t>(c.N(), c.M());
    return j.dump();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
        throw ValidationError("grid must be a:b:step with a <= b and step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
}

std::vector<Cell> parse_cells(const std::string& spec) {
    std::vector<Cell> cells;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Cell c;
        char sep1 = 0;
        char sep2 = 0;
        char sep3 = 0;
        std::stringstream is(item);
        if (!(is >> c.N >> sep1 >> c.M >> sep2 >> c.d >> sep3 >> c.count) || sep1 != ':' || sep2 != ':' ||
            sep3 != ':') {
            throw ValidationError("cell must be N:M:d:count, got '" + item + "'");
        }
        cells.push_back(c);
    }
    return cells;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Repulsive optimal transport costs and lower bounds"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    bool rational = false;
    double tol = 1e-12;
    std::string out_path;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_flag("--rational", rational, "Exact rational arithmetic");
    app.add_option("--tol", tol, "Feasibility slack for floating-point max-flow")->capture_default_str();
    app.add_option("--out", out_path, "Output file (default stdout)");

    std::string measure_path;
    std::string h_spec = "power:1";
    std::size_t N = 2;

    auto* solve = app.add_subcommand("solve", "Compute the integral or supremal cost");
    std::string which;
    solve->add_option("kind", which, "integral | supremal")->required()->check(CLI::IsMember({"integral", "supremal"}));
    solve->add_option("--measure", measure_path, "Measure JSON")->required();
    solve->add_option("--h", h_spec, "power:p | expdecay | table:file.csv")->capture_default_str();
    solve->add_option("--N", N, "Number of marginals")->capture_default_str();
    solve->add_option("--out", out_path, "Coupling JSON output");
    solve->add_flag("--rational", rational, "Exact rational arithmetic");

    auto* kap = app.add_subcommand("kappa", "Concentration function");
    std::string profile;
    std::size_t dim = 1;
    double alpha = 0.0;
    std::string grid;
    bool open = false;
    auto* kmeasure = kap->add_option("--measure", measure_path, "Measure JSON");
    auto* kprofile = kap->add_option("--profile", profile, "gaussian:s | cauchy:nu | uniform:a | laplace:s");
    kmeasure->excludes(kprofile);
    kap->add_option("--dim", dim, "Dimension for --profile")->capture_default_str();
    auto* kalpha = kap->add_option("--alpha", alpha, "Radius");
    auto* kgrid = kap->add_option("--grid", grid, "a:b:step");
    kalpha->excludes(kgrid);
    kap->add_flag("--open", open, "Open balls");
    kap->add_option("--out", out_path, "CSV output");

    auto* verify = app.add_subcommand("verify", "Check the main lower bounds on one instance");
    verify->add_option("--measure", measure_path, "Measure JSON")->required();
    verify->add_option("--h", h_spec, "Cost profile")->capture_default_str();
    verify->add_option("--N", N, "Number of marginals")->capture_default_str();
    verify->add_option("--out", out_path, "CSV report");
    verify->add_flag("--rational", rational, "Exact rational arithmetic");

    auto* classify = app.add_subcommand("classify", "Class constants of a measure");
    classify->add_option("--measure", measure_path, "Measure JSON");
    classify->add_option("--profile", profile, "Radial profile instead of --measure");
    classify->add_option("--dim", dim, "Dimension for --profile")->capture_default_str();
    classify->add_option("--out", out_path, "JSON output");

    auto* radial = app.add_subcommand("radial", "Radial CDF and optimal map");
    std::string radial_what;
    double r = 0.0;
    radial->add_option("what", radial_what, "tau | cdf | map")->required()->check(CLI::IsMember({"tau", "cdf", "map"}));
    radial->add_option("--profile", profile, "gaussian:s | cauchy:nu | uniform:a | laplace:s")->required();
    radial->add_option("--dim", dim, "Dimension")->capture_default_str();
    radial->add_option("--r", r, "Radius")->required();

    auto* examples = app.add_subcommand("examples", "Reproduce every worked example");

    auto* sweep = app.add_subcommand("sweep", "Random-instance verification sweep");
    std::string cells_spec = "2:4:1:10";
    bool no_condition = false;
    sweep->add_option("--cells", cells_spec, "Comma-separated N:M:d:count")->capture_default_str();
    sweep->add_option("--h", h_spec, "Cost profile")->capture_default_str();
    sweep->add_flag("--no-condition", no_condition, "Allow atoms of mass >= 1/N");
    sweep->add_option("--seed", seed, "Random seed");
    sweep->add_option("--out", out_path, "CSV output");
    sweep->add_flag("--rational", rational, "Exact rational arithmetic");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    SolverOptions opts;
    opts.rational = rational;
    opts.feasibility_slack = tol;

    try {
        if (*solve) {
            const auto rho = discrete_or_throw(parse_measure(read_file(measure_path)));
            const auto h = HFunction::parse(h_spec);
            const auto report = which == "integral" ? solve_integral(rho, h, N, opts) : solve_supremal(rho, h, N, opts);
            std::cout << which << ' ' << report.value << ' ' << to_string(report.status) << '\n';
            if (!out_path.empty() && report.coupling) write_output(out_path, coupling_json(*report.coupling) + "\n");
            return kExitOk;
        }
        if (*kap) {
            std::optional<Measure> m;
            if (!measure_path.empty()) {
                m = parse_measure(read_file(measure_path));
            } else if (!profile.empty()) {
                m = parse_profile(profile, dim);
            } else {
                throw ValidationError("kappa needs --measure or --profile");
            }
            const auto alphas = grid.empty() ? std::vector<double>{alpha} : parse_grid(grid);
            std::ostringstream csv;
            csv << "alpha,kappa\n";
            const auto* d = std::get_if<DiscreteMeasure>(&*m);
            for (double a : alphas) {
                const double k = d ? kappa_discrete(*d, a, open ? BallKind::open : BallKind::closed) : kappa(*m, a);
                csv << format_real(a) << ',' << format_real(k) << '\n';
            }
            write_output(out_path, csv.str());
            return kExitOk;
        }
        if (*verify) {
            const auto rho = discrete_or_throw(parse_measure(read_file(measure_path)));
            const auto h = HFunction::parse(h_spec);
            const auto v = verify_main(rho, h, N, opts);
            const bool holds = v.holds() && v.positivity;
            std::ostringstream csv;
            csv << "instance_id,N,h,C_integral,C_sup,bound_main,bound_2,holds,slack\n";
            csv << "0," << N << ',' << h.name() << ',' << v.C_integral << ',' << v.C_sup << ','
                << v.main.bound_value << ',';
            if (v.two_marginal) csv << v.two_marginal->bound_value;
            csv << ',' << (holds ? "true" : "false") << ',' << v.main.slack << '\n';
            write_output(out_path, csv.str());
            return holds ? kExitOk : kExitVerification;
        }
        if (*classify) {
            std::optional<Measure> m;
            if (!measure_path.empty()) {
                m = parse_measure(read_file(measure_path));
            } else if (!profile.empty()) {
                m = parse_profile(profile, dim);
            } else {
                throw ValidationError("classify needs --measure or --profile");
            }
            std::vector<ClassConstantReport> reports;
            if (const auto* d = std::get_if<DiscreteMeasure>(&*m)) {
                if (d->max_weight() < 0.5) reports.push_back(discrete_class_constant(*d));
                reports.push_back(tail_control_constant(*m, 0.25));
            } else {
                const auto& rm = std::get<RadialMeasure>(*m);
                reports.push_back(unimodal_constant(rm));
                try {
                    reports.push_back(log_concave_check(rm));
                } catch (const NotLogConcave&) {
                    reports.push_back(tail_control_constant(*m, 0.25));
                }
            }
            std::string text = "[\n";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                text += to_json(reports[i]) + (i + 1 < reports.size() ? ",\n" : "\n");
            }
            text += "]\n";
            write_output(out_path, text);
            return kExitOk;
        }
        if (*radial) {
            const auto rho = parse_profile(profile, dim);
            const RadialCDF cdf(rho);
            if (radial_what == "cdf") {
                std::cout << format_real(cdf.cdf(r)) << '\n';
            } else if (radial_what == "tau") {
                std::cout << format_real(tau(cdf, r)) << '\n';
            } else {
                std::vector<double> x(dim, 0.0);
                x[0] = r;
                const auto y = radial_map(cdf, Point(x));
                for (std::size_t i = 0; i < y.dim(); ++i) std::cout << (i ? " " : "") << format_real(y[i]);
                std::cout << '\n';
            }
            return kExitOk;
        }
        if (*examples) {
            const auto results = run_paper_examples();
            print_examples(results, std::cout);
            const bool all = std::all_of(results.begin(), results.end(), [](const auto& x) { return x.pass; });
            return all ? kExitOk : kExitVerification;
        }
        if (*sweep) {
            RunConfig cfg;
            cfg.seed = seed;
            cfg.cells = parse_cells(cells_spec);
            cfg.h = h_spec;
            cfg.condition_kappa = !no_condition;
            cfg.rational = rational;
            std::ostringstream csv;
            const auto summary = run_sweep(cfg, csv);
            write_output(out_path, csv.str());
            std::cerr << "rows " << summary.rows << ", failures " << summary.failures << ", errors " << summary.errors
                      << '\n';
            return summary.failures == 0 ? kExitOk : kExitVerification;
        }
    } catch (const InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
