#include "bohl/theoremcheck.hpp"

#include <algorithm>
#include <cmath>

namespace bohl {

using nlohmann::json;

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

int CheckReport::count(CheckStatus s) const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == s) ++n;
    return n;
}

void CheckReport::append(CheckReport other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
}

void CheckReport::sort_canonical() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckEntry& a, const CheckEntry& b) {
        return a.name < b.name || (a.name == b.name && a.system < b.system);
    });
}

json CheckReport::to_json() const {
    json entries = json::array();
    for (const auto& c : checks)
        entries.push_back(json{{"name", c.name},
                               {"system", c.system},
                               {"status", bohl::to_string(c.status)},
                               {"measured", c.measured},
                               {"tolerance", c.tolerance},
                               {"witness", c.witness}});
    return json{{"checks", entries},
                {"summary", json{{"pass", count(CheckStatus::pass)},
                                 {"fail", count(CheckStatus::fail)},
                                 {"skipped", count(CheckStatus::skipped)}}}};
}

// ---------------------------------------------------------------------------
// Builtin roster

std::vector<BuiltinSystem> builtin_roster(long horizon, std::uint64_t qdq_seed) {
    std::vector<BuiltinSystem> roster;
    roster.push_back({"constant_scalar_2",
                      SystemSpec::constant(Matrix::Constant(1, 1, 2.0), horizon)});
    roster.push_back({"periodic_scalar_1_4",
                      SystemSpec::periodic({Matrix::Constant(1, 1, 1.0),
                                            Matrix::Constant(1, 1, 4.0)}, horizon)});
    roster.push_back({"diag_2_half", SystemSpec::diagonal({{2.0}, {0.5}}, horizon)});
    roster.push_back({"rotation_scale_1_5",
                      SystemSpec::constant(1.5 * rotation2(1.0), horizon)});
    {
        Matrix m(2, 2);
        m << 2.0, 1.0, 0.0, 0.5;
        roster.push_back({"upper_triangular_2_1_half",
                          SystemSpec::upper_triangular({m}, horizon)});
    }
    roster.push_back({"dyadic_switching", SystemSpec::dyadic_switching(horizon)});
    roster.push_back({"random_qdq_3_42", SystemSpec::random_qdq(3, qdq_seed, 0.5, 2.0, horizon)});
    return roster;
}

std::vector<BuiltinSystem> builtin_triangular_roster(long horizon) {
    std::vector<BuiltinSystem> roster;
    {
        Matrix m(2, 2);
        m << 2.0, 1.0, 0.0, 0.5;
        roster.push_back({"upper_triangular_2_1_half",
                          SystemSpec::upper_triangular({m}, horizon)});
    }
    {
        Matrix m(2, 2);
        m << -2.0, 1.0, 0.0, 0.5;
        roster.push_back({"upper_triangular_negative",
                          SystemSpec::upper_triangular({m}, horizon)});
    }
    {
        Matrix m1(2, 2), m2(2, 2);
        m1 << 1.0, 0.5, 0.0, 3.0;
        m2 << 4.0, -0.25, 0.0, 3.0;
        roster.push_back({"periodic_triangular_1_4_3_3",
                          SystemSpec::upper_triangular({m1, m2}, horizon)});
    }
    roster.push_back({"diag_2_half", SystemSpec::diagonal({{2.0}, {0.5}}, horizon)});
    return roster;
}

TransformSequence builtin_transform(int id, int dim, long horizon) {
    switch (id) {
        case 0: {
            if (dim != 2) throw ComputeError("builtin_transform 0 needs dim 2");
            const Matrix t = rotation2(0.7);
            const Matrix ti = t.transpose();
            auto gen = [t, ti](long, Matrix& a, Matrix& a_inv) {
                a = t;
                a_inv = ti;
            };
            return MatrixSequence(2, gen, 1.0, 1.0, horizon, "T_rotation");
        }
        case 1: {
            if (dim != 2) throw ComputeError("builtin_transform 1 needs dim 2");
            auto gen = [](long n, Matrix& a, Matrix& a_inv) {
                const double v = 1.0 + 0.5 * std::sin(static_cast<double>(n));
                a = Matrix::Identity(2, 2);
                a(0, 0) = v;
                a_inv = Matrix::Identity(2, 2);
                a_inv(0, 0) = 1.0 / v;
            };
            return MatrixSequence(2, gen, 1.5, 2.0, horizon, "T_breathing_diag");
        }
        case 2: {
            if (dim != 2) throw ComputeError("builtin_transform 2 needs dim 2");
            Matrix t = Matrix::Identity(2, 2);
            t(0, 0) = 2.0;
            const Matrix ti = t.inverse();
            auto gen = [t, ti](long, Matrix& a, Matrix& a_inv) {
                a = t;
                a_inv = ti;
            };
            return MatrixSequence(2, gen, 2.0, 1.0, horizon, "T_axis_scale");
        }
        case 3: {
            CounterRng rng(7, 0);
            const Matrix t = random_orthogonal(dim, rng);
            const Matrix ti = t.transpose();
            auto gen = [t, ti](long, Matrix& a, Matrix& a_inv) {
                a = t;
                a_inv = ti;
            };
            return MatrixSequence(dim, gen, 1.0, 1.0, horizon, "T_random_orthogonal");
        }
        case 4: {
            if (dim != 1) throw ComputeError("builtin_transform 4 needs dim 1");
            auto gen = [](long n, Matrix& a, Matrix& a_inv) {
                const double v = 1.0 + 0.5 * std::sin(static_cast<double>(n));
                a = Matrix::Constant(1, 1, v);
                a_inv = Matrix::Constant(1, 1, 1.0 / v);
            };
            return MatrixSequence(1, gen, 1.5, 2.0, horizon, "T_breathing_scalar");
        }
        default:
            throw ComputeError("unknown builtin transform id");
    }
}

std::vector<InvarianceCase> builtin_invariance_cases(long horizon, std::uint64_t qdq_seed) {
    // Sampled Bohl/BD spectra are inner approximations; a stable line that is
    // exactly a coordinate axis survives forward propagation only while it
    // stays one. Pair axis-preserving transforms with systems that have such
    // axes, and generic transforms with systems that do not.
    std::vector<InvarianceCase> cases;
    cases.push_back({"diag_2_half+breathing",
                     SystemSpec::diagonal({{2.0}, {0.5}}, horizon), 1, 3.0});
    {
        Matrix m(2, 2);
        m << 2.0, 1.0, 0.0, 0.5;
        cases.push_back({"upper_triangular+rotation",
                         SystemSpec::upper_triangular({m}, horizon), 0, 1.0});
    }
    cases.push_back({"rotation_scale+axis_scale",
                     SystemSpec::constant(1.5 * rotation2(1.0), horizon), 2, 2.0});
    cases.push_back({"random_qdq+orthogonal",
                     SystemSpec::random_qdq(3, qdq_seed, 0.5, 2.0, horizon), 3, 1.0});
    cases.push_back({"periodic_scalar+breathing",
                     SystemSpec::periodic({Matrix::Constant(1, 1, 1.0),
                                           Matrix::Constant(1, 1, 4.0)}, horizon), 4, 3.0});
    return cases;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

json interval_json(const std::vector<Interval>& ivs) {
    json out = json::array();
    for (const auto& iv : ivs) out.push_back(json::array({iv.lo, iv.hi}));
    return out;
}

CheckEntry make_entry(std::string name, std::string system, bool ok, json measured,
                      double tolerance, json witness = json::object()) {
    CheckEntry e;
    e.name = std::move(name);
    e.system = std::move(system);
    e.status = ok ? CheckStatus::pass : CheckStatus::fail;
    e.measured = std::move(measured);
    e.tolerance = tolerance;
    e.witness = std::move(witness);
    return e;
}

CheckEntry make_skipped(std::string name, std::string system, json reason) {
    CheckEntry e;
    e.name = std::move(name);
    e.system = std::move(system);
    e.status = CheckStatus::skipped;
    e.measured = std::move(reason);
    return e;
}

double representation_tolerance(const MatrixSequence& seq, const WindowConfig& cfg) {
    const double c = std::max({seq.norm_bound(), seq.inv_norm_bound(), 1.0});
    return std::max(1e-2, 2.0 * std::log(c) / static_cast<double>(cfg.n_last()));
}

BohlEstimate estimate_of_direction(const MatrixSequence& seq, const Vector& x0,
                                   const WindowConfig& cfg) {
    const auto logs = propagate_log_norms(seq, x0, cfg.n_max);
    return bohl_exponents_cumlog(logs[0], cfg);
}

}  // namespace

CheckReport run_exponent_properties(const std::vector<BuiltinSystem>& roster,
                                    const SpectraConfig& cfg) {
    if (roster.empty()) throw ComputeError("run_exponent_properties: empty roster");
    CheckReport report;
    for (const auto& item : roster) {
        const std::string sys = item.id + "@" + std::to_string(cfg.window.n_max);
        auto seq = load_system(item.spec);
        SpectrumEngine engine(seq, cfg);
        const int d = seq.dim();
        const auto& dirs = engine.direction_sample();
        const auto& ests = engine.direction_estimates();
        const auto& full = engine.fullspace_estimate();

        // (i) bounds
        {
            const double lo_bound = -std::log(seq.inv_norm_bound()) - 1e-6;
            const double hi_bound = std::log(seq.norm_bound()) + 1e-6;
            double worst_lo = full.lower, worst_hi = full.upper;
            for (const auto& est : ests) {
                worst_lo = std::min(worst_lo, est.lower);
                worst_hi = std::max(worst_hi, est.upper);
            }
            const bool ok = worst_lo >= lo_bound && worst_hi <= hi_bound;
            report.checks.push_back(make_entry(
                "exponent_bounds", sys, ok,
                json{{"min_lower", worst_lo}, {"max_upper", worst_hi},
                     {"box", json::array({lo_bound, hi_bound})}},
                1e-6));
        }

        // (ii) monotonicity along a nested chain of subspaces. All four
        // estimates go through the frame scan so they see identical window
        // sets; per window the sup/inf over a subspace encloses any smaller
        // one exactly, so the inclusions hold up to roundoff.
        if (d >= 2) {
            auto frame_est = [&](const Matrix& frame) {
                BohlEstimate est;
                est.trace = scan_subspace_growth(seq, frame, cfg.window);
                est.lower = est.trace.inf_last();
                est.upper = est.trace.sup_last();
                return est;
            };
            const auto e1 = frame_est(Matrix::Identity(d, 1));
            const auto mid = frame_est(Matrix::Identity(d, 2));
            Vector combo(d);
            combo.setZero();
            combo(0) = 0.6;
            combo(1) = -0.8;
            const auto inner = frame_est(combo);
            const double tol = representation_tolerance(seq, cfg.window);
            const bool ok = e1.lower >= mid.lower - tol && e1.upper <= mid.upper + tol &&
                            mid.lower >= full.lower - tol && mid.upper <= full.upper + tol &&
                            inner.lower >= mid.lower - tol && inner.upper <= mid.upper + tol;
            report.checks.push_back(make_entry(
                "exponent_monotonicity", sys, ok,
                json{{"direction", json::array({e1.lower, e1.upper})},
                     {"subspace_frame", json::array({mid.lower, mid.upper})},
                     {"subspace_direction", json::array({inner.lower, inner.upper})},
                     {"fullspace", json::array({full.lower, full.upper})}},
                tol));
        } else {
            report.checks.push_back(
                make_skipped("exponent_monotonicity", sys, json{{"reason", "dim 1"}}));
        }

        // (iii) growth estimates: smallest constant found by window scan
        {
            const auto logs = propagate_log_norms(seq, Matrix::Identity(d, d), cfg.window.n_max);
            auto fit_k = [&](double gamma) {
                double worst = -std::numeric_limits<double>::infinity();
                for (const auto& cum : logs) {
                    for_each_window_above(cfg.window, 0, [&](long m, long w) {
                        worst = std::max(worst, cum[m + w] - cum[m] - gamma * w);
                    });
                }
                return std::exp(worst);
            };
            const double k1 = fit_k(full.upper + 0.1);
            const double k2 = fit_k(full.upper + 0.5);
            const bool ok = std::isfinite(k1) && std::isfinite(k2) && k2 <= k1 * (1.0 + 1e-12);
            report.checks.push_back(make_entry(
                "exponent_growth_constant", sys, ok,
                json{{"gamma_1", full.upper + 0.1}, {"K_1", k1},
                     {"gamma_2", full.upper + 0.5}, {"K_2", k2}},
                0.0));
        }

        // (iv) scaling invariance: estimates for x0 and alpha*x0 are bit-identical
        {
            const Vector x0 = dirs.col(dirs.cols() - 1);
            const auto a = estimate_of_direction(seq, x0, cfg.window);
            const auto b = estimate_of_direction(seq, Vector(-2.7 * x0), cfg.window);
            const bool ok = a.lower == b.lower && a.upper == b.upper;
            report.checks.push_back(make_entry(
                "exponent_scaling_invariance", sys, ok,
                json{{"base", json::array({a.lower, a.upper})},
                     {"scaled", json::array({b.lower, b.upper})}},
                0.0));
        }

        // (v) sums of decaying solutions cannot grow
        {
            std::vector<long> decaying;
            for (long i = 0; i < dirs.cols(); ++i)
                if (ests[i].upper < -0.1) decaying.push_back(i);
            if (decaying.empty()) {
                report.checks.push_back(make_skipped(
                    "exponent_decaying_sum", sys,
                    json{{"reason", "no sampled direction with upper exponent < -0.1"}}));
            } else {
                const Vector x0 = dirs.col(decaying[0]);
                const Vector x1 = decaying.size() > 1
                                      ? Vector(dirs.col(decaying[1]))
                                      : Vector(-0.5 * x0);
                const auto sum_est = estimate_of_direction(seq, x0 + x1, cfg.window);
                const bool ok = sum_est.lower <= 0.0 + 1e-2;
                report.checks.push_back(make_entry(
                    "exponent_decaying_sum", sys, ok,
                    json{{"upper_x0", ests[decaying[0]].upper},
                         {"upper_x1", decaying.size() > 1 ? ests[decaying[1]].upper
                                                          : ests[decaying[0]].upper},
                         {"lower_sum", sum_est.lower}},
                    1e-2));
            }
        }

        // (vi) decaying perturbations do not lower the exponent
        {
            long grow = -1, decay = -1;
            for (long i = 0; i < dirs.cols(); ++i) {
                if (grow < 0 && ests[i].lower > 0.1) grow = i;
                if (decay < 0 && ests[i].upper < -0.1) decay = i;
            }
            if (grow < 0 || decay < 0) {
                report.checks.push_back(make_skipped(
                    "exponent_decaying_perturbation", sys,
                    json{{"reason", "no (growing, decaying) direction pair in the sample"}}));
            } else {
                const auto sum_est = estimate_of_direction(
                    seq, Vector(dirs.col(grow) + dirs.col(decay)), cfg.window);
                const bool ok = sum_est.lower >= ests[grow].lower - 1e-2;
                report.checks.push_back(make_entry(
                    "exponent_decaying_perturbation", sys, ok,
                    json{{"lower_x0", ests[grow].lower},
                         {"upper_x1", ests[decay].upper},
                         {"lower_sum", sum_est.lower}},
                    1e-2));
            }
        }

        // alternative representations agree up to ln C / N
        {
            WindowConfig alt = cfg.window;
            alt.representation = Representation::m_beyond_n;
            const double tol = representation_tolerance(seq, cfg.window);
            double worst = 0.0;
            for (int k = 0; k < d; ++k) {
                const auto base = estimate_of_direction(seq, Vector::Unit(d, k), cfg.window);
                const auto other = estimate_of_direction(seq, Vector::Unit(d, k), alt);
                worst = std::max({worst, std::abs(base.lower - other.lower),
                                  std::abs(base.upper - other.upper)});
            }
            report.checks.push_back(make_entry("exponent_representation_equivalence", sys,
                                               worst <= tol,
                                               json{{"worst_deviation", worst}}, tol));
        }

        // per-threshold traces are monotone
        {
            bool ok = true;
            for (const auto& est : ests) {
                for (std::size_t i = 0; i + 1 < est.trace.thresholds.size(); ++i) {
                    if (est.trace.sup_values[i + 1] > est.trace.sup_values[i] + 1e-12) ok = false;
                    if (est.trace.inf_values[i + 1] < est.trace.inf_values[i] - 1e-12) ok = false;
                }
                if (!(est.lower <= est.upper + 1e-9)) ok = false;
            }
            report.checks.push_back(make_entry(
                "exponent_trace_monotonicity", sys, ok,
                json{{"directions", static_cast<long>(ests.size())}}, 1e-12));
        }

        // every point of the Bohl interval is an accumulation point
        {
            const auto logs = propagate_log_norms(seq, Matrix::Identity(d, d), cfg.window.n_max);
            bool ok = true;
            double worst_probe = 0.0;
            for (const auto& cum : logs) {
                const auto rep = accumulation_interval_check(
                    std::span<const double>(cum), cfg.window, 5);
                if (!rep.pass()) ok = false;
                for (const auto& p : rep.probes) worst_probe = std::max(worst_probe, p.distance);
            }
            report.checks.push_back(make_entry(
                "exponent_accumulation_interval", sys, ok,
                json{{"worst_probe_distance", worst_probe}}, 0.0));
        }
    }
    report.sort_canonical();
    return report;
}

CheckReport run_spectrum_relations(const std::vector<BuiltinSystem>& roster,
                                   const SpectraConfig& cfg) {
    if (roster.empty()) throw ComputeError("run_spectrum_relations: empty roster");
    CheckReport report;
    const double tol = 2.0 * cfg.grid_tol;
    for (const auto& item : roster) {
        const std::string sys = item.id + "@" + std::to_string(cfg.window.n_max);
        auto seq = load_system(item.spec);
        SpectrumEngine engine(seq, cfg);
        const auto bohl = engine.bohl_spectrum();
        const auto bd = engine.bd_spectrum();
        const auto ed = engine.ed_spectrum();
        const int d = seq.dim();

        {
            const bool ok = !bohl.intervals.empty() && !bd.intervals.empty() &&
                            !ed.intervals.empty() &&
                            static_cast<int>(bohl.intervals.size()) <= d &&
                            static_cast<int>(bd.intervals.size()) <= d &&
                            static_cast<int>(ed.intervals.size()) <= d;
            report.checks.push_back(make_entry(
                "spectrum_interval_count", sys, ok,
                json{{"bohl", static_cast<long>(bohl.intervals.size())},
                     {"bd", static_cast<long>(bd.intervals.size())},
                     {"ed", static_cast<long>(ed.intervals.size())},
                     {"dim", d}},
                0.0));
        }
        {
            const double d1 = directed_hausdorff(bohl.intervals, bd.intervals);
            const double d2 = directed_hausdorff(bd.intervals, ed.intervals);
            report.checks.push_back(make_entry(
                "spectrum_inclusion_chain", sys, d1 <= tol && d2 <= tol,
                json{{"bohl_into_bd", d1}, {"bd_into_ed", d2},
                     {"bohl", interval_json(bohl.intervals)},
                     {"bd", interval_json(bd.intervals)},
                     {"ed", interval_json(ed.intervals)}},
                tol));
        }
        {
            // closure route vs gamma-classification route of the BD spectrum
            const double dist = bd.method.value("route_hausdorff", 0.0);
            report.checks.push_back(make_entry("spectrum_closure_identity", sys, dist <= tol,
                                               json{{"route_hausdorff", dist}}, tol));
        }
        {
            const auto& full = engine.fullspace_estimate();
            const double dev = std::max(std::abs(ed.min() - full.lower),
                                        std::abs(ed.max() - full.upper));
            report.checks.push_back(make_entry(
                "spectrum_ed_endpoints", sys, dev <= tol,
                json{{"ed_min", ed.min()}, {"ed_max", ed.max()},
                     {"fullspace_lower", full.lower}, {"fullspace_upper", full.upper}},
                tol));
        }
        {
            auto structure_ok = [d](const SpectrumResult& s) {
                if (s.filtration_dims.size() != s.intervals.size() + 1) return false;
                if (s.filtration_dims.front() != 0 || s.filtration_dims.back() != d) return false;
                for (std::size_t i = 0; i + 1 < s.filtration_dims.size(); ++i)
                    if (s.filtration_dims[i] >= s.filtration_dims[i + 1]) return false;
                return true;
            };
            const bool ok = structure_ok(bohl) && structure_ok(bd) && structure_ok(ed);
            report.checks.push_back(make_entry(
                "spectrum_filtration_structure", sys, ok,
                json{{"bohl", bohl.filtration_dims}, {"bd", bd.filtration_dims},
                     {"ed", ed.filtration_dims}},
                0.0));
        }
        {
            const Interval box = engine.search_box();
            auto inside = [&](const SpectrumResult& s) {
                return s.min() >= box.lo - tol && s.max() <= box.hi + tol;
            };
            report.checks.push_back(make_entry(
                "spectrum_search_box", sys, inside(bohl) && inside(bd) && inside(ed),
                json{{"box", json::array({box.lo, box.hi})},
                     {"ed", interval_json(ed.intervals)}},
                tol));
        }
    }
    report.sort_canonical();
    return report;
}

CheckReport run_invariance_checks(const std::vector<InvarianceCase>& cases,
                                  const SpectraConfig& cfg) {
    CheckReport report;
    for (const auto& c : cases) {
        const std::string sys = c.id + "@" + std::to_string(cfg.window.n_max);
        auto seq = load_system(c.system);
        auto t = builtin_transform(c.transform_id, seq.dim(), cfg.window.n_max + 2);
        auto conj = transform(seq, t);
        const double tol = 2.0 * cfg.grid_tol +
                           2.0 * std::log(c.kappa_bound < 1.0 ? 4.0 : c.kappa_bound) /
                               static_cast<double>(cfg.window.n_last());

        SpectrumEngine ea(seq, cfg);
        SpectrumEngine eb(conj, cfg);
        // sampled spectra compare corresponding directions: x0 maps to
        // T(0)^-1 x0 between the two systems, so push the sample through
        eb.set_direction_sample(t.eval_inv(0) * ea.direction_sample());

        struct Pair {
            const char* name;
            SpectrumResult a, b;
        };
        std::vector<Pair> pairs;
        pairs.push_back({"invariance_ed", ea.ed_spectrum(), eb.ed_spectrum()});
        pairs.push_back({"invariance_bd", ea.bd_spectrum(), eb.bd_spectrum()});
        pairs.push_back({"invariance_bohl", ea.bohl_spectrum(), eb.bohl_spectrum()});
        for (const auto& p : pairs) {
            const double dist = hausdorff(p.a.intervals, p.b.intervals);
            report.checks.push_back(make_entry(
                p.name, sys, dist <= tol,
                json{{"hausdorff", dist}, {"original", interval_json(p.a.intervals)},
                     {"transformed", interval_json(p.b.intervals)}},
                tol, json{{"kappa_bound", c.kappa_bound}}));
        }

        // direction exponents match under x0 -> T(0)^-1 x0
        {
            const Vector x0 = Vector::Ones(seq.dim()).normalized();
            const Vector y0 = t.eval_inv(0) * x0;
            const auto est_a = estimate_of_direction(seq, x0, cfg.window);
            const auto est_b = estimate_of_direction(conj, y0, cfg.window);
            const double dev = std::max(std::abs(est_a.lower - est_b.lower),
                                        std::abs(est_a.upper - est_b.upper));
            report.checks.push_back(make_entry(
                "invariance_direction", sys, dev <= tol,
                json{{"original", json::array({est_a.lower, est_a.upper})},
                     {"transformed", json::array({est_b.lower, est_b.upper})},
                     {"deviation", dev}},
                tol));
        }
    }
    report.sort_canonical();
    return report;
}

CheckReport run_triangular_relations(const std::vector<BuiltinSystem>& roster,
                                     const SpectraConfig& cfg) {
    CheckReport report;
    const double tol = 2.0 * cfg.grid_tol;
    for (const auto& item : roster) {
        const std::string sys = item.id + "@" + std::to_string(cfg.window.n_max);
        auto seq = load_system(item.spec);
        const int d = seq.dim();

        // diagonal part of the triangular coefficients themselves
        auto base = seq;
        auto data = seq.ensure(cfg.window.n_max + 1);
        double nb = 0.0, ib = 0.0;
        for (long n = 0; n <= cfg.window.n_max; ++n)
            for (int k = 0; k < d; ++k) {
                nb = std::max(nb, std::abs(data->a[n](k, k)));
                ib = std::max(ib, 1.0 / std::abs(data->a[n](k, k)));
            }
        auto gen = [base, d](long n, Matrix& a, Matrix& a_inv) {
            a = Matrix::Zero(d, d);
            a_inv = Matrix::Zero(d, d);
            const Matrix full = base.eval(n);
            for (int k = 0; k < d; ++k) {
                a(k, k) = full(k, k);
                a_inv(k, k) = 1.0 / full(k, k);
            }
        };
        MatrixSequence diag_seq(d, gen, nb, ib, seq.horizon_hint(), item.id + "_diag");

        SpectrumEngine ea(seq, cfg);
        SpectrumEngine ed_diag(diag_seq, cfg);

        const auto bohl_a = ea.bohl_spectrum();
        const auto bd_a = ea.bd_spectrum();
        const auto ed_a = ea.ed_spectrum();
        const auto bohl_d = ed_diag.bohl_spectrum();
        const auto bd_d = ed_diag.bd_spectrum();
        const auto ed_d = ed_diag.ed_spectrum();

        const double incl_bohl = directed_hausdorff(bohl_a.intervals, bohl_d.intervals);
        report.checks.push_back(make_entry(
            "triangular_bohl_inclusion", sys, incl_bohl <= tol,
            json{{"distance", incl_bohl}, {"full", interval_json(bohl_a.intervals)},
                 {"diagonal", interval_json(bohl_d.intervals)}},
            tol));

        const double incl_bd = directed_hausdorff(bd_a.intervals, bd_d.intervals);
        report.checks.push_back(make_entry(
            "triangular_bd_inclusion", sys, incl_bd <= tol,
            json{{"distance", incl_bd}, {"full", interval_json(bd_a.intervals)},
                 {"diagonal", interval_json(bd_d.intervals)}},
            tol));

        const double eq_ed = hausdorff(ed_a.intervals, ed_d.intervals);
        report.checks.push_back(make_entry(
            "triangular_ed_equality", sys, eq_ed <= tol,
            json{{"distance", eq_ed}, {"full", interval_json(ed_a.intervals)},
                 {"diagonal", interval_json(ed_d.intervals)}},
            tol));
    }
    report.sort_canonical();
    return report;
}

CheckReport run_all_checks(const std::vector<long>& horizons, std::uint64_t qdq_seed) {
    CheckReport report;
    for (long h : horizons) {
        SpectraConfig cfg = SpectraConfig::defaults(h);
        report.append(run_exponent_properties(builtin_roster(h, qdq_seed), cfg));
        report.append(run_spectrum_relations(builtin_roster(h, qdq_seed), cfg));
        report.append(run_triangular_relations(builtin_triangular_roster(h), cfg));
    }
    const long inv_h = std::min(20000L, *std::min_element(horizons.begin(), horizons.end()));
    report.append(
        run_invariance_checks(builtin_invariance_cases(inv_h, qdq_seed), SpectraConfig::defaults(inv_h)));
    report.sort_canonical();
    return report;
}

}  // namespace bohl
