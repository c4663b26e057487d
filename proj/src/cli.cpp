#include "bohl/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bohl/parallel.hpp"
#include "bohl/theoremcheck.hpp"

namespace bohl {

using nlohmann::json;

namespace {

struct CommonOpts {
    // system source
    std::string spec_path;
    std::string gen;
    std::string matrix;
    std::string matrices;
    std::string entries;
    std::string file_path;
    int dim = 3;
    std::uint64_t seed = 42;
    std::vector<double> range{0.5, 2.0};
    // numerics
    long horizon = 100000;
    double grid_tol = 1e-2;
    double alpha_min = 1e-2;
    long n_last = 0;  // 0 = default grid
    int sample = 64;
    int threads = 0;
    std::string out;
};

void add_system_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--spec", o.spec_path, "system spec JSON file");
    cmd->add_option("--gen", o.gen,
                    "inline generator: constant|periodic|diag|upper-triangular|dyadic|qdq|file");
    cmd->add_option("--matrix", o.matrix, "constant matrix, rows ';'-separated: \"2,1;0,0.5\"");
    cmd->add_option("--matrices", o.matrices, "periodic matrices, '|'-separated");
    cmd->add_option("--entries", o.entries,
                    "diagonal entries, ','-separated; ':' cycles one entry: \"1:4,0.5\"");
    cmd->add_option("--path", o.file_path, "matrix file for --gen file");
    cmd->add_option("--dim", o.dim, "dimension for --gen qdq");
    cmd->add_option("--seed", o.seed, "seed for --gen qdq and the check roster");
    cmd->add_option("--range", o.range, "diagonal magnitude range for --gen qdq")->expected(2);
}

void add_numeric_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--horizon", o.horizon, "analysis horizon n_max");
    cmd->add_option("--grid-tol", o.grid_tol, "gamma grid resolution");
    cmd->add_option("--alpha-min", o.alpha_min, "margin floor for dichotomy verdicts");
    cmd->add_option("--nlast", o.n_last, "largest window threshold N (default horizon-derived)");
    cmd->add_option("--sample", o.sample, "sphere-lattice directions per dimension");
    cmd->add_option("--threads", o.threads, "worker threads (default: machine parallelism)");
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

Matrix parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream row_stream(text);
    std::string row;
    while (std::getline(row_stream, row, ';')) {
        std::vector<double> vals;
        std::stringstream cell_stream(row);
        std::string cell;
        while (std::getline(cell_stream, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (...) {
                throw SpecError("cannot parse matrix entry '" + cell + "'");
            }
        }
        if (vals.empty()) throw SpecError("empty matrix row in '" + text + "'");
        rows.push_back(vals);
    }
    if (rows.empty()) throw SpecError("empty matrix '" + text + "'");
    const std::size_t d = rows.size();
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw SpecError("matrix '" + text + "' is not square");
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

SystemSpec build_spec(const CommonOpts& o) {
    if (!o.spec_path.empty()) {
        std::ifstream in(o.spec_path);
        if (!in) throw SpecError("cannot open spec file '" + o.spec_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw SpecError("spec file '" + o.spec_path + "': " + e.what());
        }
        auto spec = SystemSpec::from_json(j);
        spec.horizon_hint = o.horizon;
        return spec;
    }
    if (o.gen == "constant") {
        if (o.matrix.empty()) throw SpecError("--gen constant needs --matrix");
        return SystemSpec::constant(parse_matrix(o.matrix), o.horizon);
    }
    if (o.gen == "periodic" || o.gen == "upper-triangular") {
        if (o.matrices.empty()) throw SpecError("--gen " + o.gen + " needs --matrices");
        std::vector<Matrix> mats;
        std::stringstream s(o.matrices);
        std::string one;
        while (std::getline(s, one, '|')) mats.push_back(parse_matrix(one));
        return o.gen == "periodic" ? SystemSpec::periodic(mats, o.horizon)
                                   : SystemSpec::upper_triangular(mats, o.horizon);
    }
    if (o.gen == "diag") {
        if (o.entries.empty()) throw SpecError("--gen diag needs --entries");
        std::vector<std::vector<double>> cycles;
        std::stringstream s(o.entries);
        std::string entry;
        while (std::getline(s, entry, ',')) {
            std::vector<double> cycle;
            std::stringstream c(entry);
            std::string v;
            while (std::getline(c, v, ':')) {
                try {
                    cycle.push_back(std::stod(v));
                } catch (...) {
                    throw SpecError("cannot parse diagonal entry '" + v + "'");
                }
            }
            cycles.push_back(cycle);
        }
        return SystemSpec::diagonal(cycles, o.horizon);
    }
    if (o.gen == "dyadic") return SystemSpec::dyadic_switching(o.horizon);
    if (o.gen == "qdq")
        return SystemSpec::random_qdq(o.dim, o.seed, o.range[0], o.range[1], o.horizon);
    if (o.gen == "file") {
        if (o.file_path.empty()) throw SpecError("--gen file needs --path");
        return SystemSpec::from_file(o.file_path, o.horizon);
    }
    if (o.gen.empty()) throw SpecError("no system given: use --spec or --gen");
    throw SpecError("unknown generator '" + o.gen + "'");
}

SpectraConfig build_config(const CommonOpts& o, long horizon) {
    SpectraConfig cfg = SpectraConfig::defaults(horizon);
    cfg.grid_tol = o.grid_tol;
    cfg.alpha_min = o.alpha_min;
    cfg.sphere_per_dim = o.sample;
    if (o.n_last > 0) {
        std::vector<long> grid;
        for (long t = 16; t < o.n_last; t *= 2) grid.push_back(t);
        grid.push_back(o.n_last);
        cfg.window.n_grid = grid;
    }
    return cfg;
}

void apply_threads(const CommonOpts& o) {
    if (o.threads > 0) set_thread_count(o.threads);
}

void write_output(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ComputeError("cannot write output file '" + out + "'");
    f << content;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_spectrum(const CommonOpts& o, const std::string& kind, const std::string& trace_path) {
    apply_threads(o);
    auto seq = load_system(build_spec(o));
    auto cfg = build_config(o, o.horizon);
    SpectrumEngine engine(seq, cfg);
    SpectrumResult result;
    if (kind == "ed")
        result = engine.ed_spectrum();
    else if (kind == "bd")
        result = engine.bd_spectrum();
    else if (kind == "bohl")
        result = engine.bohl_spectrum();
    else
        throw SpecError("unknown spectrum kind '" + kind + "'");
    write_output(o.out, result.to_json().dump(2) + "\n");

    if (!trace_path.empty()) {
        if (kind == "bohl") throw SpecError("--gamma-trace needs --kind ed or bd");
        const auto mode = kind == "ed" ? SpectrumKind::exponential_dichotomy
                                       : SpectrumKind::bohl_dichotomy;
        const Interval box = engine.search_box();
        std::string csv = "gamma,verdict,margin\n";
        const double lo = box.lo - cfg.grid_tol, hi = box.hi + cfg.grid_tol;
        const long n_pts = std::max(2L, static_cast<long>(std::ceil((hi - lo) / cfg.grid_tol)) + 1);
        for (long i = 0; i < n_pts; ++i) {
            const double g = lo + (hi - lo) * static_cast<double>(i) / (n_pts - 1);
            const auto v = engine.classify(g, mode);
            csv += fmt_double(g) + "," + to_string(v.verdict) + "," + fmt_double(v.margin) + "\n";
        }
        write_output(trace_path, csv);
    }
    return 0;
}

int cmd_exponents(const CommonOpts& o, const std::string& direction,
                  const std::string& representation, const std::string& format) {
    apply_threads(o);
    auto seq = load_system(build_spec(o));
    auto cfg = build_config(o, o.horizon);
    if (representation == "m-beyond-n")
        cfg.window.representation = Representation::m_beyond_n;
    else if (representation != "all-m")
        throw SpecError("unknown representation '" + representation + "'");

    BohlEstimate est;
    if (direction.empty()) {
        est = bohl_exponents_fullspace(seq, cfg.window);
    } else {
        std::vector<double> vals;
        std::stringstream s(direction);
        std::string v;
        while (std::getline(s, v, ',')) vals.push_back(std::stod(v));
        if (static_cast<int>(vals.size()) != seq.dim())
            throw SpecError("--direction length does not match system dimension");
        Vector x0(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) x0(i) = vals[i];
        const auto sol = propagate_direction(seq, x0, cfg.window.n_max);
        est = bohl_exponents_direction(sol, cfg.window);
    }

    if (format == "csv") {
        std::string csv = "N,sup,inf\n";
        for (std::size_t i = 0; i < est.trace.thresholds.size(); ++i)
            csv += std::to_string(est.trace.thresholds[i]) + "," +
                   fmt_double(est.trace.sup_values[i]) + "," +
                   fmt_double(est.trace.inf_values[i]) + "\n";
        write_output(o.out, csv);
    } else if (format == "json") {
        write_output(o.out, est.to_json().dump(2) + "\n");
    } else {
        throw SpecError("unknown output format '" + format + "'");
    }
    return 0;
}

int cmd_triangularize(const CommonOpts& o, const std::string& out_b, const std::string& out_t) {
    apply_threads(o);
    auto seq = load_system(build_spec(o));
    const auto tri = qr_normal_form(seq, o.horizon);
    write_matrix_file(out_b, *tri.b);
    if (!out_t.empty()) write_matrix_file(out_t, all_frames(tri));
    json summary{{"horizon", tri.n_max},
                 {"residual", tri.residual},
                 {"orthogonality_defect", tri.orthogonality_defect},
                 {"b_path", out_b}};
    if (!out_t.empty()) summary["t_path"] = out_t;
    write_output(o.out, summary.dump(2) + "\n");
    return 0;
}

int cmd_classify(const CommonOpts& o, double gamma, const std::string& mode) {
    apply_threads(o);
    auto seq = load_system(build_spec(o));
    auto cfg = build_config(o, o.horizon);
    const auto kind = mode == "bd" ? SpectrumKind::bohl_dichotomy
                    : mode == "ed" ? SpectrumKind::exponential_dichotomy
                                   : throw SpecError("classify mode must be bd or ed");
    const auto verdict = classify_gamma(seq, gamma, kind, cfg);
    write_output(o.out, verdict.to_json().dump(2) + "\n");
    return 0;
}

int cmd_check(const CommonOpts& o, const std::string& suite) {
    apply_threads(o);
    // the reproducible roster runs at {1e4, horizon}; smaller horizons run alone
    std::vector<long> horizons;
    if (o.horizon > 10000)
        horizons = {10000, std::min(o.horizon, 100000L)};
    else
        horizons = {o.horizon};

    CheckReport report;
    if (suite == "all") {
        report = run_all_checks(horizons, o.seed);
    } else {
        for (long h : horizons) {
            SpectraConfig cfg = SpectraConfig::defaults(h);
            cfg.grid_tol = o.grid_tol;
            cfg.alpha_min = o.alpha_min;
            if (suite == "exponents")
                report.append(run_exponent_properties(builtin_roster(h, o.seed), cfg));
            else if (suite == "relations")
                report.append(run_spectrum_relations(builtin_roster(h, o.seed), cfg));
            else if (suite == "triangular")
                report.append(run_triangular_relations(builtin_triangular_roster(h), cfg));
            else if (suite == "invariance") {
                const long inv_h = std::min(20000L, h);
                report.append(run_invariance_checks(builtin_invariance_cases(inv_h, o.seed),
                                                    SpectraConfig::defaults(inv_h)));
                break;
            } else {
                throw SpecError("unknown suite '" + suite + "'");
            }
        }
        report.sort_canonical();
    }
    write_output(o.out, report.to_json().dump(2) + "\n");
    return report.all_ok() ? 0 : 1;
}

int cmd_validate(const CommonOpts& o) {
    apply_threads(o);
    auto seq = load_system(build_spec(o));
    const auto report = validate_lyapunov(seq, o.horizon);
    write_output(o.out, report.to_json().dump(2) + "\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Finite-horizon Bohl, Bohl dichotomy and exponential dichotomy spectra "
                 "of nonautonomous linear difference equations"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* spectrum = app.add_subcommand("spectrum", "compute a spectrum as interval union");
    std::string kind = "ed";
    std::string trace_path;
    spectrum->add_option("--kind", kind, "ed | bd | bohl")->required();
    spectrum->add_option("--gamma-trace", trace_path, "write gamma grid verdicts as CSV");
    add_system_options(spectrum, o);
    add_numeric_options(spectrum, o);

    auto* exponents = app.add_subcommand("exponents", "Bohl exponent estimates");
    std::string direction;
    std::string representation = "all-m";
    std::string format = "json";
    exponents->add_option("--direction", direction, "initial direction, comma separated");
    exponents->add_option("--representation", representation, "all-m | m-beyond-n");
    exponents->add_option("--format", format, "json | csv");
    add_system_options(exponents, o);
    add_numeric_options(exponents, o);

    auto* triangularize = app.add_subcommand("triangularize", "QR upper triangular normal form");
    std::string out_b, out_t;
    triangularize->add_option("--out-b", out_b, "write B matrices here")->required();
    triangularize->add_option("--out-t", out_t, "write T frames here");
    add_system_options(triangularize, o);
    add_numeric_options(triangularize, o);

    auto* classify = app.add_subcommand("classify", "spectrum/resolvent verdict for one gamma");
    double gamma = 0.0;
    std::string mode = "bd";
    classify->add_option("--gamma", gamma, "shift to classify")->required();
    classify->add_option("--mode", mode, "bd | ed")->required();
    add_system_options(classify, o);
    add_numeric_options(classify, o);

    auto* check = app.add_subcommand("check", "run the property suites on the builtin roster");
    std::string suite = "all";
    check->add_option("--suite", suite, "exponents | relations | invariance | triangular | all")
        ->required();
    add_system_options(check, o);
    add_numeric_options(check, o);

    auto* validate = app.add_subcommand("validate", "Lyapunov sequence validation report");
    add_system_options(validate, o);
    add_numeric_options(validate, o);

    std::vector<const char*> argv;
    argv.push_back("bohl-spectra");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(o, kind, trace_path);
        if (exponents->parsed()) return cmd_exponents(o, direction, representation, format);
        if (triangularize->parsed()) return cmd_triangularize(o, out_b, out_t);
        if (classify->parsed()) return cmd_classify(o, gamma, mode);
        if (check->parsed()) return cmd_check(o, suite);
        if (validate->parsed()) return cmd_validate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace bohl
