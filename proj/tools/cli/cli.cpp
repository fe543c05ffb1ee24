#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "potapov/catalog.hpp"
#include "potapov/io.hpp"
#include "potapov/network.hpp"
#include "potapov/pade.hpp"
#include "potapov/potapov.hpp"
#include "potapov/roots.hpp"
#include "potapov/separation.hpp"
#include "potapov/statespace.hpp"

namespace potapov::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Raised by commands that refuse to run on a network with a nontrivial singular term.
struct SingularGuard {
    std::string message;
};

/// Raised for invalid flag combinations detected after parsing.
struct UsageError {
    std::string message;
};

constexpr double kRationalGrid = 1e-3;

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') {
            out << '\n';
        }
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        throw Error(ErrorKind::MalformedInput, "cannot write '" + cfg.out_path + "'");
    }
    file << text;
    if (!text.empty() && text.back() != '\n') {
        file << '\n';
    }
}

DelayNetwork load_network(const std::string& path) {
    if (path.empty()) {
        throw UsageError{"--net is required"};
    }
    return parse_network(read_text_file(path));
}

/// Accepts a bare state-space document or an approx report carrying one under "statespace".
StateSpace load_statespace(const std::string& path) {
    const std::string text = read_text_file(path);
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("statespace")) {
        return parse_statespace(doc.at("statespace").dump());
    }
    return parse_statespace(text);
}

ordered_json embed(const std::string& text) {
    return ordered_json::parse(text);
}

std::string format_or(const RunConfig& cfg, const std::string& fallback) {
    return cfg.format.empty() ? fallback : cfg.format;
}

void require_format(const RunConfig& cfg, const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (format == a) {
            return;
        }
    }
    throw UsageError{"format '" + format + "' is not supported by '" + cfg.command + "'"};
}

ContourRegion region_for(const RunConfig& cfg, const DelayNetwork& net) {
    double im_min = -2.0 * cfg.omega_max;
    double im_max = 2.0 * cfg.omega_max;
    if (cfg.im_bounds) {
        im_min = (*cfg.im_bounds)[0];
        im_max = (*cfg.im_bounds)[1];
    }
    ContourRegion region = default_pole_strip(net, im_min, im_max);
    if (cfg.re_bounds) {
        region.re_min = (*cfg.re_bounds)[0];
        region.re_max = (*cfg.re_bounds)[1];
    }
    region.validate();
    return region;
}

/// Poles ordered as interpolate extracts them, truncated to the mode budget.
RootSet budgeted(const RootSet& poles, const std::optional<int>& modes) {
    RootSet out = poles;
    std::stable_sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        const double ia = std::abs(a.location.imag());
        const double ib = std::abs(b.location.imag());
        return ia != ib ? ia < ib : a.location.imag() < b.location.imag();
    });
    if (modes) {
        if (*modes < 0) {
            throw UsageError{"--modes must be nonnegative"};
        }
        if (static_cast<std::size_t>(*modes) < out.roots.size()) {
            out.roots.resize(static_cast<std::size_t>(*modes));
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        return a.location.imag() != b.location.imag() ? a.location.imag() < b.location.imag()
                                                       : a.location.real() < b.location.real();
    });
    return out;
}

void guard_singular(const RunConfig& cfg, const DelayNetwork& net) {
    if (!cfg.allow_singular && !cfg.separate_first && !singular_is_trivial(net)) {
        throw SingularGuard{
            "M1 is singular, so the transfer function carries a nontrivial singular term that zero-pole "
            "interpolation cannot reproduce; rerun with --separate-first or --allow-singular"};
    }
}

ordered_json realizability_json(const RealizabilityReport& r) {
    ordered_json j;
    j["pass"] = r.pass;
    j["d_unitary"] = r.d_unitary;
    j["passivity"] = r.passivity;
    j["coupling"] = r.coupling;
    j["max_real_eig"] = r.max_real_eig;
    return j;
}

std::vector<double> frequency_grid(const RunConfig& cfg) {
    if (cfg.grid_points < 2) {
        throw UsageError{"--points must be at least 2"};
    }
    const double lo = cfg.omega_min.value_or(-cfg.omega_max);
    const double hi = cfg.omega_max;
    if (!(hi > lo)) {
        throw UsageError{"frequency range is empty"};
    }
    std::vector<double> grid(static_cast<std::size_t>(cfg.grid_points));
    for (int k = 0; k < cfg.grid_points; ++k) {
        grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (cfg.grid_points - 1);
    }
    return grid;
}

struct Approximation {
    RootSet poles;
    PotapovProduct product;
    StateSpace statespace;
    /// Product error against the function it interpolates.
    double error = 0.0;
    /// Present when the network was separated first.
    std::optional<SeparationResult> separation;
    double t0 = 0.0;
    double max_shift = 0.0;
    /// Error of product * feedforward against the original network.
    std::optional<double> composed_error;
    MatrixFunction model;
};

Approximation approximate(const RunConfig& cfg, const DelayNetwork& net, std::ostream& err) {
    guard_singular(cfg, net);
    Approximation a;
    const ContourRegion region = region_for(cfg, net);
    if (!cfg.separate_first) {
        a.poles = budgeted(find_poles(net, region), cfg.modes);
        const MatrixFunction t = transfer_function(net);
        a.product = interpolate(t, a.poles);
        a.statespace = product_to_statespace(a.product);
        a.error = approximation_error(t, a.product, cfg.omega_max, cfg.grid_points);
        a.model = product_function(a.product);
        return a;
    }
    const RationalizedNetwork rn = rationalize_delays(net, kRationalGrid);
    if (rn.max_shift > 0.0) {
        err << "warning: delays rounded to multiples of " << kRationalGrid << " (largest shift " << rn.max_shift
            << ")\n";
    }
    const DelayNetwork comm = to_commensurate(rn.network, rn.t0);
    err << "note: commensurate expansion with step " << rn.t0 << " has " << comm.internal_size()
        << " internal nodes\n";
    SeparationResult sep = separate(comm);
    a.t0 = rn.t0;
    a.max_shift = rn.max_shift;
    // The feedforward chain is entire, so the core shares the poles of the rationalized network.
    a.poles = budgeted(find_poles(rn.network, region), cfg.modes);
    const MatrixFunction core_t = transfer_function(sep.core);
    a.product = interpolate(core_t, a.poles);
    a.statespace = product_to_statespace(a.product);
    a.error = approximation_error(core_t, a.product, cfg.omega_max, cfg.grid_points);
    const FeedforwardChain chain = sep.feedforward;
    const PotapovProduct prod = a.product;
    a.model = [prod, chain](Complex z) { return CMatrix(eval_product(prod, z) * eval_feedforward(chain, z)); };
    a.composed_error = sup_error(transfer_function(net), a.model, cfg.omega_max, cfg.grid_points);
    a.separation = std::move(sep);
    return a;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const DelayNetwork net = load_network(cfg.net_path);
    ordered_json j;
    j["valid"] = true;
    j["internal_nodes"] = net.internal_size();
    j["ports"] = net.port_count();
    j["unitarity_defect"] = unitarity_defect(net.stacked());
    j["spectral_radius_m1"] = spectral_radius(net.m1());
    j["total_delay"] = net.total_delay();
    j["singular_term_trivial"] = singular_is_trivial(net);
    const std::optional<CMatrix> lim = limit_neg_infinity(net);
    j["limit_neg_infinity"] = lim ? embed(statespace_to_json(static_statespace(*lim)))["d"] : ordered_json("divergent");
    emit(cfg, out, j.dump(2));
    return kSuccess;
}

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
    const DelayNetwork net = load_network(cfg.net_path);
    const std::string format = format_or(cfg, "json");
    require_format(cfg, format, {"json", "csv"});
    const RootSet poles = budgeted(find_poles(net, region_for(cfg, net)), cfg.modes);
    if (format == "json") {
        emit(cfg, out, roots_to_json(poles));
        return kSuccess;
    }
    std::ostringstream os;
    os << "re_pole,im_pole,residual\n";
    for (const Root& r : poles.roots) {
        os << format_double(r.location.real()) << "," << format_double(r.location.imag()) << ","
           << format_double(r.residual) << "\n";
    }
    emit(cfg, out, os.str());
    return kSuccess;
}

int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const DelayNetwork net = load_network(cfg.net_path);
    require_format(cfg, format_or(cfg, "json"), {"json"});
    const Approximation a = approximate(cfg, net, err);
    ordered_json j;
    j["modes"] = a.product.factors.size();
    j["omega_max"] = cfg.omega_max;
    j["grid_points"] = cfg.grid_points;
    j["approximation_error"] = a.error;
    if (a.composed_error) {
        j["composed_error"] = *a.composed_error;
        j["t0"] = a.t0;
        j["max_delay_shift"] = a.max_shift;
    }
    j["realizability"] = realizability_json(realizability_check(a.statespace, 1e-9));
    j["poles"] = embed(roots_to_json(a.poles));
    j["product"] = embed(product_to_json(a.product));
    j["statespace"] = embed(statespace_to_json(a.statespace));
    if (a.separation) {
        const ordered_json sep = embed(separation_to_json(*a.separation));
        j["feedforward"] = sep["stages"];
    }
    emit(cfg, out, j.dump(2));
    return kSuccess;
}

int cmd_separate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const DelayNetwork net = load_network(cfg.net_path);
    require_format(cfg, format_or(cfg, "json"), {"json"});
    const RationalizedNetwork rn = rationalize_delays(net, kRationalGrid);
    if (rn.max_shift > 0.0) {
        err << "warning: delays rounded to multiples of " << kRationalGrid << " (largest shift " << rn.max_shift
            << ")\n";
    }
    const DelayNetwork comm = to_commensurate(rn.network, rn.t0);
    err << "note: commensurate expansion with step " << rn.t0 << " has " << comm.internal_size()
        << " internal nodes\n";
    const SeparationResult sep = separate(comm);
    ordered_json j;
    j["t0"] = rn.t0;
    j["max_delay_shift"] = rn.max_shift;
    j["commensurate_nodes"] = comm.internal_size();
    j["core_nodes"] = sep.core.internal_size();
    j["stage_count"] = sep.feedforward.stages.size();
    j["feedforward_delay"] = sep.feedforward.total_delay();
    const ordered_json doc = embed(separation_to_json(sep));
    j["stages"] = doc["stages"];
    j["core"] = doc["core"];
    emit(cfg, out, j.dump(2));
    return kSuccess;
}

/// Named transfer functions evaluated on the frequency grid.
struct Source {
    std::string name;
    MatrixFunction f;
};

std::vector<std::vector<CMatrix>> sample(const std::vector<Source>& sources, const std::vector<double>& grid) {
    std::vector<std::vector<CMatrix>> values(sources.size());
    for (std::size_t s = 0; s < sources.size(); ++s) {
        values[s].reserve(grid.size());
        for (double w : grid) {
            values[s].push_back(sources[s].f(Complex(0.0, w)));
        }
    }
    return values;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
    const std::string format = format_or(cfg, "csv");
    require_format(cfg, format, {"csv", "json"});
    MatrixFunction f;
    if (!cfg.ss_path.empty()) {
        const StateSpace ss = load_statespace(cfg.ss_path);
        f = [ss](Complex z) { return tf_of_statespace(ss, z); };
    } else {
        const DelayNetwork net = load_network(cfg.net_path);
        f = transfer_function(net);
    }
    const std::vector<double> grid = frequency_grid(cfg);
    const std::vector<CMatrix> values = sample({{"T", f}}, grid).front();
    const Eigen::Index rows = values.front().rows();
    const Eigen::Index cols = values.front().cols();
    if (format == "json") {
        ordered_json j;
        j["omega"] = grid;
        ordered_json samples = ordered_json::array();
        for (const CMatrix& m : values) {
            samples.push_back(embed(statespace_to_json(static_statespace(m)))["d"]);
        }
        j["values"] = std::move(samples);
        emit(cfg, out, j.dump(2));
        return kSuccess;
    }
    std::ostringstream os;
    os << "omega";
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index k = 0; k < cols; ++k) {
            os << ",re_T_" << i << "_" << k << ",im_T_" << i << "_" << k;
        }
    }
    os << "\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
        os << format_double(grid[g]);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index k = 0; k < cols; ++k) {
                const Complex v = values[g](i, k);
                os << "," << format_double(v.real()) << "," << format_double(v.imag());
            }
        }
        os << "\n";
    }
    emit(cfg, out, os.str());
    return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_format(cfg, format_or(cfg, "csv"), {"csv"});
    const DelayNetwork net = load_network(cfg.net_path);
    std::vector<Source> sources{{"exact", transfer_function(net)}};
    if (!cfg.ref_path.empty()) {
        sources.push_back({"ref", transfer_function(load_network(cfg.ref_path))});
    }
    if (!cfg.ss_path.empty()) {
        const StateSpace ss = load_statespace(cfg.ss_path);
        sources.push_back({"ss", [ss](Complex z) { return tf_of_statespace(ss, z); }});
    }
    if (cfg.ref_path.empty() && cfg.ss_path.empty()) {
        sources.push_back({"potapov", approximate(cfg, net, err).model});
    }
    if (cfg.pade_base) {
        sources.push_back({"pade", pade_network_tf(net, pade_orders(net, *cfg.pade_base))});
    }
    const std::vector<double> grid = frequency_grid(cfg);
    const std::vector<std::vector<CMatrix>> values = sample(sources, grid);
    const Eigen::Index rows = net.port_count();
    std::ostringstream os;
    os << "omega";
    for (const Source& s : sources) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index k = 0; k < rows; ++k) {
                os << ",mag_" << s.name << "_" << i << "_" << k << ",phase_" << s.name << "_" << i << "_" << k;
            }
        }
    }
    os << "\n";
    std::vector<double> sup(sources.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        os << format_double(grid[g]);
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const CMatrix& m = values[s][g];
            for (Eigen::Index i = 0; i < rows; ++i) {
                for (Eigen::Index k = 0; k < rows; ++k) {
                    os << "," << format_double(std::abs(m(i, k))) << "," << format_double(std::arg(m(i, k)));
                }
            }
            sup[s] = std::max(sup[s], spectral_norm(m - values[0][g]));
        }
        os << "\n";
    }
    os << "# sup_error";
    for (std::size_t s = 1; s < sources.size(); ++s) {
        os << " " << sources[s].name << "=" << format_double(sup[s]);
    }
    os << "\n";
    emit(cfg, out, os.str());
    return kSuccess;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_format(cfg, format_or(cfg, "csv"), {"csv"});
    if (cfg.ss_path.empty()) {
        throw UsageError{"--ss is required"};
    }
    const StateSpace ss = load_statespace(cfg.ss_path);
    const RealizabilityReport report = realizability_check(ss, 1e-9);
    if (!report.pass) {
        std::ostringstream os;
        os << "state-space model is not physically realizable (D defect " << report.d_unitary << ", passivity "
           << report.passivity << ", coupling " << report.coupling << ", max Re eig " << report.max_real_eig << ")";
        throw Error(ErrorKind::NotRealizable, os.str());
    }
    if (cfg.drive_port < 0 || cfg.drive_port >= ss.ports()) {
        throw UsageError{"--drive-port is out of range"};
    }
    CVector u = CVector::Zero(ss.ports());
    u(cfg.drive_port) = cfg.drive_amplitude;
    const std::vector<double> t = uniform_time_grid(cfg.t_end, cfg.steps);
    const Signal input = cfg.drive_omega == 0.0 ? constant_drive(t, u) : sinusoidal_drive(t, u, cfg.drive_omega);
    const Signal output = simulate(ss, input, CVector::Zero(ss.modes()));
    err << "note: simulated " << ss.modes() << " modes over " << t.size() << " samples\n";
    emit(cfg, out, signal_to_csv(output));
    return kSuccess;
}

int cmd_pade(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, format_or(cfg, "json"), {"json"});
    const DelayNetwork net = load_network(cfg.net_path);
    const int base = cfg.pade_base.value_or(4);
    const std::vector<int> orders = pade_orders(net, base);
    ordered_json j;
    j["pade_base"] = base;
    j["orders"] = orders;
    int modes = 0;
    ordered_json approximants = ordered_json::array();
    for (std::size_t k = 0; k < orders.size(); ++k) {
        const PadeApproximant p = pade_exp(orders[k], net.delays()[k]);
        modes += p.order;
        ordered_json a;
        a["delay"] = p.delay;
        a["order"] = p.order;
        a["coefficients"] = p.coefficients;
        ordered_json poles = ordered_json::array();
        for (Complex z : p.poles()) {
            poles.push_back({z.real(), z.imag()});
        }
        a["poles"] = std::move(poles);
        approximants.push_back(std::move(a));
    }
    j["modes"] = modes;
    j["approximants"] = std::move(approximants);
    j["omega_max"] = cfg.omega_max;
    j["sup_error"] = sup_error(transfer_function(net), pade_network_tf(net, orders), cfg.omega_max, cfg.grid_points);
    emit(cfg, out, j.dump(2));
    return kSuccess;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, format_or(cfg, "json"), {"json"});
    DelayNetwork net = [&] {
        if (cfg.catalog_name == "cavity") {
            return build_cavity(cfg.reflectivity, cfg.round_trip);
        }
        if (cfg.catalog_name == "example1") {
            return catalog::example1();
        }
        if (cfg.catalog_name == "example2") {
            return catalog::example2();
        }
        if (cfg.catalog_name == "fabry_perot") {
            return catalog::fabry_perot(cfg.reflectivity, cfg.round_trip);
        }
        return catalog::feedforward_chain(cfg.round_trip);
    }();
    emit(cfg, out, network_to_json(net));
    return kSuccess;
}

void add_network_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--net", cfg.net_path, "Network JSON file");
}

void add_region_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--re", cfg.re_bounds, "Real-part bounds MIN MAX of the pole search (default: derived strip)")
        ->expected(2);
    sub->add_option("--im", cfg.im_bounds, "Imaginary-part bounds MIN MAX (default: +-2 omega_max)")->expected(2);
    sub->add_option("--modes", cfg.modes, "Keep at most M poles, smallest |Im| first");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--omega-max", cfg.omega_max, "Upper end of the frequency grid");
    sub->add_option("--omega-min", cfg.omega_min, "Lower end of the frequency grid (default: -omega_max)");
    sub->add_option("--points", cfg.grid_points, "Number of frequency samples");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--out", cfg.out_path, "Write the result to a file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_singular_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_flag("--separate-first", cfg.separate_first,
                  "Split off the feedforward (singular) part before interpolating");
    sub->add_flag("--allow-singular", cfg.allow_singular, "Interpolate even when M1 is singular");
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput:
        case ErrorKind::NotUnitary:
        case ErrorKind::Unstable:
        case ErrorKind::NonpositiveDelay:
        case ErrorKind::DomainError:
        case ErrorKind::NotCommensurate:
        case ErrorKind::PortMismatch:
        case ErrorKind::NonuniformGrid:
        case ErrorKind::NotRealizable:
        case ErrorKind::NotEqualDelays:
            return kInputError;
        default:
            return kNumericalError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Zero-pole interpolation of passive delay networks"};
    app.require_subcommand(1, 1);

    CLI::App* validate = app.add_subcommand("validate", "Check a network file and report its diagnostics");
    add_network_options(validate, cfg);
    add_output_options(validate, cfg);

    CLI::App* roots = app.add_subcommand("roots", "Find transfer-function poles in a region");
    add_network_options(roots, cfg);
    add_region_options(roots, cfg);
    add_grid_options(roots, cfg);
    add_output_options(roots, cfg);

    CLI::App* approx = app.add_subcommand("approx", "Build a Potapov product and its state-space model");
    add_network_options(approx, cfg);
    add_region_options(approx, cfg);
    add_grid_options(approx, cfg);
    add_output_options(approx, cfg);
    add_singular_options(approx, cfg);

    CLI::App* separate_cmd = app.add_subcommand("separate", "Split a network into feedforward chain and core");
    add_network_options(separate_cmd, cfg);
    add_output_options(separate_cmd, cfg);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a transfer function on a frequency grid");
    add_network_options(eval, cfg);
    eval->add_option("--ss", cfg.ss_path, "State-space JSON file (instead of --net)");
    add_grid_options(eval, cfg);
    add_output_options(eval, cfg);

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Simulate a state-space model in the time domain");
    simulate_cmd->add_option("--ss", cfg.ss_path, "State-space JSON file");
    simulate_cmd->add_option("--t-end", cfg.t_end, "Simulation horizon");
    simulate_cmd->add_option("--steps", cfg.steps, "Number of time steps");
    simulate_cmd->add_option("--drive-port", cfg.drive_port, "Input port carrying the drive");
    simulate_cmd->add_option("--drive-amplitude", cfg.drive_amplitude, "Drive amplitude (0 for no drive)");
    simulate_cmd->add_option("--drive-omega", cfg.drive_omega, "Drive frequency (0 for a constant drive)");
    add_output_options(simulate_cmd, cfg);

    CLI::App* pade = app.add_subcommand("pade", "Pade-per-delay baseline");
    add_network_options(pade, cfg);
    pade->add_option("--pade-base", cfg.pade_base, "Order given to the longest delay");
    add_grid_options(pade, cfg);
    add_output_options(pade, cfg);

    CLI::App* compare = app.add_subcommand("compare", "Compare exact, Potapov, Pade or stored models");
    add_network_options(compare, cfg);
    compare->add_option("--ss", cfg.ss_path, "State-space JSON file to compare against");
    compare->add_option("--ref", cfg.ref_path, "Second network file to compare against");
    compare->add_option("--pade-base", cfg.pade_base, "Include the Pade baseline with this base order");
    add_region_options(compare, cfg);
    add_grid_options(compare, cfg);
    add_output_options(compare, cfg);
    add_singular_options(compare, cfg);

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Write a built-in network as JSON");
    catalog_cmd->add_option("name", cfg.catalog_name, "Network name")
        ->required()
        ->check(CLI::IsMember({"cavity", "example1", "example2", "fabry_perot", "feedforward_chain"}));
    catalog_cmd->add_option("--r", cfg.reflectivity, "Mirror reflectivity (cavity, fabry_perot)");
    catalog_cmd->add_option("--delay", cfg.round_trip,
                            "Loop delay (cavity), round trip (fabry_perot) or stage delay (feedforward_chain)");
    add_output_options(catalog_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    const std::vector<std::pair<CLI::App*, std::function<int()>>> commands = {
        {validate, [&] { return cmd_validate(cfg, out); }},
        {roots, [&] { return cmd_roots(cfg, out); }},
        {approx, [&] { return cmd_approx(cfg, out, err); }},
        {separate_cmd, [&] { return cmd_separate(cfg, out, err); }},
        {eval, [&] { return cmd_eval(cfg, out); }},
        {simulate_cmd, [&] { return cmd_simulate(cfg, out, err); }},
        {pade, [&] { return cmd_pade(cfg, out); }},
        {compare, [&] { return cmd_compare(cfg, out, err); }},
        {catalog_cmd, [&] { return cmd_catalog(cfg, out); }},
    };
    try {
        for (const auto& [sub, action] : commands) {
            if (sub->parsed()) {
                cfg.command = sub->get_name();
                return action();
            }
        }
        return kInputError;
    } catch (const UsageError& e) {
        err << "error: " << e.message << "\n";
        return kInputError;
    } catch (const SingularGuard& e) {
        err << "error: " << e.message << "\n";
        return kSingularGuard;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::ContourThroughZero) {
            err << "hint: a pole lies on or near the contour; shift --re or --im slightly\n";
        }
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace potapov::cli
