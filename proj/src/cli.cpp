#include "lattice_heat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lattice_heat/analysis.hpp"
#include "lattice_heat/io.hpp"
#include "lattice_heat/kernel.hpp"
#include "lattice_heat/moments.hpp"
#include "lattice_heat/solver.hpp"

namespace lattice_heat::cli {

namespace {

namespace fs = std::filesystem;

/// Raised for argument combinations that violate a precondition.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    double eps = 1e-12;
    std::optional<double> t;
    std::string grid = "dyadic:16:1024";
    std::string p = "2";
    std::string f_path;
    std::string g_path;
    int kmax = 6;
    int order = 1;
    int points = 64;
    std::string quantity = "G";
    bool roots = false;
    bool plot = false;
    std::string out;
};

struct Output {
    fs::path path;
    std::string text;
};

std::vector<double> parse_grid(const std::string& spec) {
    const std::string prefix = "dyadic:";
    if (spec.rfind(prefix, 0) != 0) throw UsageError("--grid must look like dyadic:A:B");
    const std::string rest = spec.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw UsageError("--grid must look like dyadic:A:B");
    double a = 0.0, b = 0.0;
    try {
        std::size_t used_a = 0, used_b = 0;
        a = std::stod(rest.substr(0, colon), &used_a);
        b = std::stod(rest.substr(colon + 1), &used_b);
        if (used_a != colon || used_b != rest.size() - colon - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        throw UsageError("--grid bounds must be numbers: " + spec);
    }
    if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) throw UsageError("--grid needs 0 < A <= B");
    return dyadic_grid(a, b);
}

LpExponent parse_p(const std::string& text) {
    try {
        return LpExponent::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--p: ") + e.what());
    }
}

KernelQuantity parse_quantity(const std::string& text) {
    if (text == "G") return KernelQuantity::kernel;
    if (text == "grad") return KernelQuantity::gradient;
    if (text == "laplacian") return KernelQuantity::laplacian;
    throw UsageError("--quantity must be G, grad or laplacian");
}

double require_t(const RunConfig& cfg, bool positive) {
    if (!cfg.t) throw UsageError(cfg.subcommand + " needs --t");
    const double t = *cfg.t;
    if (!std::isfinite(t) || t < 0.0 || (positive && t == 0.0)) {
        throw UsageError(std::string("--t must be finite and ") + (positive ? "positive" : "nonnegative"));
    }
    return t;
}

LatticeSequence load_f(const RunConfig& cfg) {
    try {
        return read_sequence_csv(cfg.f_path);
    } catch (const std::exception& e) {
        throw UsageError("--f: " + std::string(e.what()));
    }
}

ForcingSpec load_g(const RunConfig& cfg) {
    try {
        return read_forcing_json(cfg.g_path);
    } catch (const std::exception& e) {
        throw UsageError("--g: " + std::string(e.what()));
    }
}

void add_report(std::vector<Output>& outputs, const RunConfig& cfg, const DecayReport& report) {
    const fs::path out = cfg.out;
    outputs.push_back({out, report_to_csv(report)});
    outputs.push_back({sidecar_path(out), report_sidecar(report)});
    if (cfg.plot) outputs.push_back({plot_path(out), report_to_svg(report)});
}

void add_snapshot(std::vector<Output>& outputs, const RunConfig& cfg, const SolutionSnapshot& snap) {
    outputs.push_back({cfg.out, sequence_to_csv(snap.u)});
    outputs.push_back({sidecar_path(cfg.out), snapshot_sidecar(snap)});
}

std::string summary(const DecayReport& r) {
    return r.label + ": slope " + format_double(r.slope) + ", max residual " + format_double(r.max_residual);
}

/// Validates the configuration and computes every output. Nothing is
/// written here.
std::vector<Output> execute(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw UsageError("--eps must lie in (0, 1)");
    std::vector<Output> outputs;
    const std::string& cmd = cfg.subcommand;

    if (cmd == "kernel") {
        const double t = require_t(cfg, false);
        const KernelSlice g = heat_kernel(t, cfg.eps);
        outputs.push_back({cfg.out, sequence_to_csv(g.sequence())});
        nlohmann::json side = {{"t", t}, {"eps", cfg.eps}, {"window", g.window}, {"tail_mass", g.tail_mass}};
        outputs.push_back({sidecar_path(cfg.out), side.dump(2) + "\n"});
        out << "G(" << format_double(t) << ", 0) = " << format_double(g.at(0)) << ", window " << g.window << "\n";
    } else if (cmd == "evolve") {
        const double t = require_t(cfg, false);
        if (cfg.f_path.empty()) throw UsageError("evolve needs --f");
        const LatticeSequence f = load_f(cfg);
        const ForcingSpec g = cfg.g_path.empty() ? ForcingSpec::none() : load_g(cfg);
        const SolutionSnapshot snap = solve(f, g, t, cfg.eps);
        add_snapshot(outputs, cfg, snap);
        const auto q = conserved_quantities(snap);
        out << "mass " << format_double(q.mass) << ", first moment " << format_double(q.first_moment)
            << ", second moment " << format_double(q.second_moment) << "\n";
    } else if (cmd == "duhamel") {
        const double t = require_t(cfg, true);
        if (cfg.g_path.empty()) throw UsageError("duhamel needs --g");
        const ForcingSpec g = load_g(cfg);
        if (g.kind != ForcingSpec::Kind::separable) throw UsageError("duhamel needs separable forcing");
        const SolutionSnapshot snap = duhamel(g, t, cfg.eps);
        add_snapshot(outputs, cfg, snap);
        out << "mass " << format_double(snap.u.sum()) << ", error bound " << format_double(snap.total_error())
            << "\n";
    } else if (cmd == "moments") {
        const double t = require_t(cfg, false);
        if (cfg.kmax < 0 || cfg.kmax > 12) throw UsageError("moments --kmax must lie in [0, 12]");
        const auto polys = moment_polynomials(cfg.kmax);
        std::string csv = "order,moment,predicted,tail_bound\n";
        for (int order = 0; order <= 2 * cfg.kmax + 1; ++order) {
            const double predicted =
                order % 2 == 0 ? poly_eval(polys[static_cast<std::size_t>(order / 2)], 2.0 * t) : 0.0;
            const MomentValue m = certified_kernel_moment(t, order, 1e-12 * std::max(1.0, predicted));
            csv += std::to_string(order) + "," + format_double(m.value) + "," + format_double(predicted) + "," +
                   format_double(m.tail_bound) + "\n";
        }
        outputs.push_back({cfg.out, csv});
    } else if (cmd == "poly") {
        const int limit = cfg.roots ? kMaxRootDegree : kMaxMomentOrder;
        if (cfg.kmax < 0 || cfg.kmax > limit) {
            throw UsageError("poly --kmax must lie in [0, " + std::to_string(limit) + "]");
        }
        const auto polys = moment_polynomials(cfg.kmax);
        std::string csv;
        if (cfg.roots) {
            csv = "k,root_index,root\n";
            for (int k = 1; k <= cfg.kmax; ++k) {
                const auto roots = poly_real_roots(polys[static_cast<std::size_t>(k)], 1e-12);
                // Descending order: 0 first, as tabulated t_0 > t_1 > ...
                for (std::size_t i = 0; i < roots.size(); ++i) {
                    csv += std::to_string(k) + "," + std::to_string(i) + "," +
                           format_double(roots[roots.size() - 1 - i]) + "\n";
                }
            }
        } else {
            csv = "k,degree,coeffs\n";
            for (int k = 0; k <= cfg.kmax; ++k) {
                const auto& p = polys[static_cast<std::size_t>(k)];
                csv += std::to_string(k) + "," + std::to_string(p.degree());
                for (const auto& c : p.coeffs()) csv += "," + c.str();
                csv += "\n";
            }
        }
        outputs.push_back({cfg.out, csv});
    } else if (cmd == "decay") {
        const auto grid = parse_grid(cfg.grid);
        if (!cfg.f_path.empty()) {
            const LatticeSequence f = load_f(cfg);
            if (std::abs(f.sum()) <= 1e-14) throw UsageError("decay --f needs data with nonzero mass");
            const L2OptimalityReport r = l2_optimality(f, grid);
            add_report(outputs, cfg, r.decay);
            out << summary(r.decay) << "\n";
        } else {
            if (grid.size() < 6 || grid.front() < 1.0 || grid.back() > 1e4) {
                throw UsageError("decay needs at least 6 grid points inside [1, 1e4]");
            }
            const DecayReport r = kernel_decay(parse_p(cfg.p), parse_quantity(cfg.quantity), grid);
            add_report(outputs, cfg, r);
            out << summary(r) << "\n";
        }
    } else if (cmd == "converge") {
        const auto grid = parse_grid(cfg.grid);
        const LpExponent p = parse_p(cfg.p);
        const LatticeSequence f = cfg.f_path.empty() ? LatticeSequence{} : load_f(cfg);
        const ForcingSpec g = cfg.g_path.empty() ? ForcingSpec::none() : load_g(cfg);
        if (cfg.f_path.empty() && cfg.g_path.empty()) throw UsageError("converge needs --f and/or --g");
        if (g.kind == ForcingSpec::Kind::separable && !(g.gamma > 1.0)) {
            throw UsageError("converge with forcing needs gamma > 1");
        }
        const double mass = f.sum() + (g.kind == ForcingSpec::Kind::separable ? g.total_mass() : 0.0);
        if (mass == 0.0) throw UsageError("converge needs nonzero total mass");
        const DecayReport r = large_time_profile(f, g, p, grid, cfg.eps);
        add_report(outputs, cfg, r);
        out << summary(r) << "\n";
    } else if (cmd == "fourier") {
        const double t = require_t(cfg, true);
        if (cfg.points < 16) throw UsageError("fourier --points must be >= 16");
        const auto table = fourier_symbol_table(t, cfg.points, cfg.eps);
        std::string csv = "theta,transform,symbol,abs_error\n";
        double worst = 0.0;
        for (const auto& row : table) {
            const double e = std::abs(row.transform - row.symbol);
            worst = std::max(worst, e);
            csv += format_double(row.theta) + "," + format_double(row.transform) + "," + format_double(row.symbol) +
                   "," + format_double(e) + "\n";
        }
        outputs.push_back({cfg.out, csv});
        const KernelSlice g = heat_kernel(t, cfg.eps);
        nlohmann::json side = {{"t", t}, {"points", cfg.points}, {"max_abs_error", worst}, {"tail_mass", g.tail_mass}};
        outputs.push_back({sidecar_path(cfg.out), side.dump(2) + "\n"});
        out << "max |transform - symbol| = " << format_double(worst) << "\n";
    } else if (cmd == "diffdecay") {
        const auto grid = parse_grid(cfg.grid);
        if (cfg.order < 1 || cfg.order > 6) throw UsageError("diffdecay --order must lie in [1, 6]");
        if (grid.size() < 6 || grid.front() < 1.0 || grid.back() > 1e4) {
            throw UsageError("diffdecay needs at least 6 grid points inside [1, 1e4]");
        }
        const DecayReport r = higher_difference_decay(cfg.order, parse_p(cfg.p), grid);
        add_report(outputs, cfg, r);
        out << summary(r) << "\n";
    }
    return outputs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Discrete heat semigroup on the integer lattice", "lattice-heat"};
    app.require_subcommand(1);

    struct Flags {
        bool t = false, grid = false, p = false, f = false, g = false, kmax = false, order = false, roots = false,
             quantity = false, points = false;
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--eps", cfg.eps, "Truncation tolerance (default 1e-12)");
        sub->add_option("--out", cfg.out, "Output path")->required();
        sub->add_flag("--plot", cfg.plot, "Also write an SVG plot");
    };
    auto add = [&](const std::string& name, const std::string& help, Flags flags) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub);
        if (flags.t) sub->add_option("--t", cfg.t, "Time");
        if (flags.grid) sub->add_option("--grid", cfg.grid, "Time grid dyadic:A:B (default dyadic:16:1024)");
        if (flags.p) sub->add_option("--p", cfg.p, "Norm exponent: 1, 2, inf or a number >= 1");
        if (flags.f) sub->add_option("--f", cfg.f_path, "Initial data CSV (n,value)");
        if (flags.g) sub->add_option("--g", cfg.g_path, "Forcing JSON");
        if (flags.kmax) sub->add_option("--kmax", cfg.kmax, "Largest moment index k");
        if (flags.order) sub->add_option("--order", cfg.order, "Difference order");
        if (flags.roots) sub->add_flag("--roots", cfg.roots, "Emit the root table instead of coefficients");
        if (flags.quantity) sub->add_option("--quantity", cfg.quantity, "G, grad or laplacian");
        if (flags.points) sub->add_option("--points", cfg.points, "Number of theta grid points (default 64)");
        sub->callback([&cfg, name] { cfg.subcommand = name; });
    };
    add("kernel", "Heat kernel G(t, .) as a sequence", {.t = true});
    add("evolve", "Mild solution from initial data, optionally forced", {.t = true, .f = true, .g = true});
    add("duhamel", "Forced part of the mild solution", {.t = true, .g = true});
    add("moments", "Kernel moments against the moment polynomials", {.t = true, .kmax = true});
    add("poly", "Moment polynomial coefficients or roots", {.kmax = true, .roots = true});
    add("decay", "Kernel (or W_t f with --f) decay report", {.grid = true, .p = true, .f = true, .quantity = true});
    add("converge", "Large-time profile t^a ||u - M G||_p", {.grid = true, .p = true, .f = true, .g = true});
    add("fourier", "Fourier transform of G against its symbol", {.t = true, .points = true});
    add("diffdecay", "Decay of iterated forward differences of G", {.grid = true, .p = true, .order = true});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "lattice-heat: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    std::vector<Output> outputs;
    try {
        outputs = execute(cfg, out);
    } catch (const UsageError& e) {
        err << "lattice-heat " << cfg.subcommand << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "lattice-heat " << cfg.subcommand << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "lattice-heat " << cfg.subcommand << ": computation failed: " << e.what() << "\n";
        return kExitComputation;
    }

    try {
        for (const auto& o : outputs) write_text_atomic(o.path, o.text);
    } catch (const std::exception& e) {
        err << "lattice-heat " << cfg.subcommand << ": " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace lattice_heat::cli
