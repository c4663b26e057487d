// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "bohl/cli.hpp"
#include "bohl/theoremcheck.hpp"

using namespace bohl;

namespace {

const double kLn2 = std::log(2.0);

struct Gate {
    int failures = 0;

    void report(int id, bool ok, const std::string& what, const std::string& detail) {
        std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

// all three spectra of one system under one configuration
struct ThreeSpectra {
    SpectrumResult bohl, bd, ed;
};

ThreeSpectra spectra_of(const MatrixSequence& seq, const SpectraConfig& cfg) {
    SpectrumEngine engine(seq, cfg);
    return {engine.bohl_spectrum(), engine.bd_spectrum(), engine.ed_spectrum()};
}

void criterion_1(Gate& gate) {
    const auto t0 = std::chrono::steady_clock::now();
    const long horizon = 20000;
    auto seq = load_system(SystemSpec::constant(Matrix::Constant(1, 1, 2.0), horizon));
    auto s = spectra_of(seq, SpectraConfig::defaults(horizon));
    const double elapsed = seconds_since(t0);
    bool ok = elapsed < 1.0;
    double worst = 0.0;
    for (const auto* res : {&s.bohl, &s.bd, &s.ed}) {
        ok = ok && res->intervals.size() == 1;
        if (!res->intervals.empty()) {
            worst = std::max({worst, std::abs(res->intervals[0].lo - kLn2),
                              std::abs(res->intervals[0].hi - kLn2)});
        }
    }
    ok = ok && worst <= 1e-3;
    gate.report(1, ok, "constant scalar a=2: three singleton spectra at ln 2",
                "max deviation " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_2(Gate& gate) {
    const long horizon = 20000;
    auto cfg = SpectraConfig::defaults(horizon);
    auto seq = load_system(SystemSpec::periodic(
        {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 4.0)}, horizon));
    bool ok = cfg.window.n_last() >= 1000;
    auto s = spectra_of(seq, cfg);
    double worst = 0.0;
    for (const auto* res : {&s.bohl, &s.bd, &s.ed}) {
        ok = ok && res->intervals.size() == 1;
        if (!res->intervals.empty())
            worst = std::max({worst, std::abs(res->intervals[0].lo - kLn2),
                              std::abs(res->intervals[0].hi - kLn2)});
    }
    ok = ok && worst <= 5e-3;

    // per-threshold monotonicity of the direction estimate
    auto sol = propagate_direction(seq, Vector::Constant(1, 1.0), horizon);
    auto est = bohl_exponents_direction(sol, cfg.window);
    for (std::size_t i = 0; i + 1 < est.trace.thresholds.size(); ++i) {
        if (est.trace.sup_values[i + 1] > est.trace.sup_values[i] + 1e-12) ok = false;
        if (est.trace.inf_values[i + 1] < est.trace.inf_values[i] - 1e-12) ok = false;
    }
    gate.report(2, ok, "periodic scalar (1,4): spectra within 5e-3 of ln 2, monotone traces",
                "max deviation " + fmt(worst) + ", N_last " +
                    std::to_string(cfg.window.n_last()));
}

void criterion_3(Gate& gate) {
    const long horizon = 100000;
    auto cfg = SpectraConfig::defaults(horizon);
    auto seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, horizon));
    SpectrumEngine engine(seq, cfg);
    auto ed = engine.ed_spectrum();
    bool ok = ed.intervals.size() == 2;
    double worst = 0.0;
    if (ok) {
        worst = std::max({std::abs(ed.intervals[0].lo + kLn2), std::abs(ed.intervals[0].hi + kLn2),
                          std::abs(ed.intervals[1].lo - kLn2), std::abs(ed.intervals[1].hi - kLn2)});
        ok = worst <= 1e-2;
    }
    ok = ok && ed.filtration_dims == std::vector<int>{0, 1, 2};
    const auto& full = engine.fullspace_estimate();
    const double dev = std::max(std::abs(ed.min() - full.lower), std::abs(ed.max() - full.upper));
    ok = ok && dev <= 1e-2;
    gate.report(3, ok, "diag(2,1/2): ED spectrum at +-ln 2, filtration [0,1,2], endpoint identity",
                "interval deviation " + fmt(worst) + ", endpoint deviation " + fmt(dev));
}

void criterion_4(Gate& gate) {
    const auto t0 = std::chrono::steady_clock::now();
    const long horizon = 1L << 18;
    SpectraConfig cfg = SpectraConfig::defaults(horizon);
    cfg.window.n_grid = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};  // N_last = 2^12
    auto seq = load_system(SystemSpec::dyadic_switching(horizon));

    const auto interval = scalar_ed_spectrum(seq, cfg);
    bool ok = interval.lo <= -0.9 && interval.hi >= 0.9 && interval.lo >= -1.05 &&
              interval.hi <= 1.05;

    auto sol = propagate_direction(seq, Vector::Constant(1, 1.0), horizon);
    auto rep = accumulation_interval_check(sol, cfg.window, 5);
    const double nominal[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    double worst_probe = 0.0;
    for (int i = 0; i < 5; ++i) {
        worst_probe = std::max(worst_probe, std::abs(rep.probes[i].realized - nominal[i]));
    }
    ok = ok && worst_probe <= 0.05;
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 30.0;
    gate.report(4, ok, "dyadic switching at 2^18: ED interval and realized probes",
                "I = [" + fmt(interval.lo) + ", " + fmt(interval.hi) + "], worst probe " +
                    fmt(worst_probe) + ", " + fmt(elapsed) + " s");
}

void criterion_5(Gate& gate) {
    const long horizon = 100000;
    auto cfg = SpectraConfig::defaults(horizon);
    Matrix m(2, 2);
    m << 2.0, 1.0, 0.0, 0.5;
    auto seq = load_system(SystemSpec::upper_triangular({m}, horizon));
    auto diag_seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, horizon));
    SpectrumEngine ea(seq, cfg);
    SpectrumEngine ed_diag(diag_seq, cfg);
    auto res_a = ea.ed_spectrum();
    auto res_d = ed_diag.ed_spectrum();
    const double dist = hausdorff(res_a.intervals, res_d.intervals);
    const bool ok = dist <= 2e-2 && res_a.filtration_dims == std::vector<int>{0, 1, 2};
    gate.report(5, ok, "upper triangular [[2,1],[0,1/2]]: ED equals diagonal ED",
                "hausdorff " + fmt(dist));
}

void criterion_6(Gate& gate) {
    const long horizon = 100000;
    bool ok = true;
    double worst_res = 0.0, worst_orth = 0.0;
    for (const auto& item : builtin_roster(horizon)) {
        auto seq = load_system(item.spec);
        auto tri = qr_normal_form(seq, horizon);
        const double res_bound = 1e-9 * (1.0 + seq.norm_bound());
        worst_res = std::max(worst_res, tri.residual / res_bound);
        worst_orth = std::max(worst_orth, tri.orthogonality_defect);
        if (tri.residual > res_bound || tri.orthogonality_defect > 1e-10) ok = false;
    }
    gate.report(6, ok, "QR residual and orthogonality over the builtin roster at 1e5",
                "residual/bound " + fmt(worst_res) + ", orthogonality " + fmt(worst_orth));
}

void criterion_7(Gate& gate) {
    const long horizon = 20000;
    auto report =
        run_invariance_checks(builtin_invariance_cases(horizon), SpectraConfig::defaults(horizon));
    const bool ok = report.all_ok() && report.count(CheckStatus::pass) == 20;
    gate.report(7, ok, "invariance of the three spectra over 5 seeded (system, T) pairs",
                std::to_string(report.count(CheckStatus::pass)) + " pass, " +
                    std::to_string(report.count(CheckStatus::fail)) + " fail");
}

void criterion_8(Gate& gate) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string out = "/tmp/bohl_acceptance_check_all.json";
    const int rc = run_cli({"check", "--suite", "all", "--horizon", "100000", "--seed", "42",
                            "--out", out});
    const double elapsed = seconds_since(t0);

    // inclusion entries inside the report must all pass
    bool chain_ok = rc == 0;
    long chain_entries = 0;
    try {
        auto j = nlohmann::json::parse(slurp(out));
        for (const auto& entry : j.at("checks")) {
            if (entry.at("name") == "spectrum_inclusion_chain") {
                ++chain_entries;
                if (entry.at("status") != "pass") chain_ok = false;
            }
        }
    } catch (...) {
        chain_ok = false;
    }
    chain_ok = chain_ok && chain_entries == 14;  // 7 systems x 2 horizons
    const bool ok = chain_ok && elapsed < 300.0;
    std::remove(out.c_str());
    gate.report(8, ok, "inclusion chain over 7 systems x {1e4, 1e5}; check --suite all exits 0",
                std::to_string(chain_entries) + " chain entries, rc " + std::to_string(rc) +
                    ", " + fmt(elapsed) + " s");
}

void criterion_9(Gate& gate) {
    bool ok = true;
    double worst = 0.0;
    int windows = 0;
    CounterRng rng(2024, 1);
    for (std::uint64_t seed : {101ULL, 102ULL}) {
        auto seq = load_system(SystemSpec::random_qdq(3, seed, 0.5, 2.0, 2400));
        for (int trial = 0; trial < 100; ++trial) {
            const long m = static_cast<long>(rng.next_uniform() * 2300);
            const long w = 1 + static_cast<long>(rng.next_uniform() * 12);
            const auto [hi, lo] = extreme_window_growth(seq, m + w, m);
            Matrix p = Matrix::Identity(3, 3);
            for (long t = m; t < m + w; ++t) p = seq.eval(t) * p;
            const auto [smax, smin] = extreme_singular_values(p);
            const double dev =
                std::max(std::abs(hi - std::log(smax)), std::abs(lo - std::log(smin)));
            worst = std::max(worst, dev);
            if (dev > 1e-8) ok = false;
            ++windows;
        }
    }
    gate.report(9, ok, "windowed growth matches brute-force singular values to 1e-8",
                std::to_string(windows) + " windows, worst deviation " + fmt(worst));
}

void criterion_10(Gate& gate) {
    const std::string p1 = "/tmp/bohl_acc_det1.json";
    const std::string p2 = "/tmp/bohl_acc_det2.json";
    const std::string p3 = "/tmp/bohl_acc_det3.json";
    std::vector<std::string> base{"spectrum", "--kind",    "bd",    "--gen",
                                  "qdq",      "--dim",     "3",     "--seed",
                                  "42",       "--horizon", "20000"};
    auto with = [&](const std::string& out, const std::string& threads) {
        auto args = base;
        args.insert(args.end(), {"--threads", threads, "--out", out});
        return run_cli(args);
    };
    bool ok = with(p1, "1") == 0 && with(p2, "1") == 0 && with(p3, "4") == 0;
    const auto b1 = slurp(p1), b2 = slurp(p2), b3 = slurp(p3);
    ok = ok && !b1.empty() && b1 == b2 && b1 == b3;
    for (const auto* p : {&p1, &p2, &p3}) std::remove(p->c_str());
    gate.report(10, ok, "byte-identical output for repeated runs and across --threads",
                std::to_string(b1.size()) + " bytes");
}

}  // namespace

int main() {
    Gate gate;
    criterion_1(gate);
    criterion_2(gate);
    criterion_3(gate);
    criterion_4(gate);
    criterion_5(gate);
    criterion_6(gate);
    criterion_7(gate);
    criterion_8(gate);
    criterion_9(gate);
    criterion_10(gate);
    if (gate.failures == 0)
        std::printf("acceptance: all criteria pass\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", gate.failures);
    return gate.failures;
}
