#include <cmath>
#include <cstdlib>

#include "bohl/parallel.hpp"
#include "bohl/propagation.hpp"
#include "doctest.h"

using namespace bohl;

namespace {
const double kLn2 = std::log(2.0);
const double kLn4 = std::log(4.0);

MatrixSequence constant_scalar(double a, long horizon = 1000) {
    return load_system(SystemSpec::constant(Matrix::Constant(1, 1, a), horizon));
}

MatrixSequence periodic_1_4(long horizon = 1000) {
    return load_system(SystemSpec::periodic(
        {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 4.0)}, horizon));
}

MatrixSequence diag_2_half(long horizon = 1000) {
    return load_system(SystemSpec::diagonal({{2.0}, {0.5}}, horizon));
}

// brute-force reference: multiply the window product and take its singular values
std::pair<double, double> brute_window(const MatrixSequence& seq, long n, long m) {
    Matrix p = Matrix::Identity(seq.dim(), seq.dim());
    for (long t = m; t < n; ++t) p = seq.eval(t) * p;
    const auto [smax, smin] = extreme_singular_values(p);
    return {std::log(smax), std::log(smin)};
}
}  // namespace

TEST_CASE("propagate_direction on the constant scalar system") {
    auto sol = propagate_direction(constant_scalar(2.0), Vector::Constant(1, 1.0), 10);
    for (long n = 0; n <= 10; ++n) {
        CHECK(sol.logn[n] == doctest::Approx(n * kLn2).epsilon(1e-12));
        CHECK(sol.dirs[n](0) == doctest::Approx(1.0));
    }
}

TEST_CASE("propagate_direction decays along the second axis of diag(2, 1/2)") {
    auto sol = propagate_direction(diag_2_half(), Vector::Unit(2, 1), 10);
    for (long n = 0; n <= 10; ++n)
        CHECK(sol.logn[n] == doctest::Approx(-static_cast<double>(n) * kLn2).epsilon(1e-12));
}

TEST_CASE("propagate_direction matches the scalar product oracle for the periodic system") {
    auto seq = periodic_1_4();
    auto sol = propagate_direction(seq, Vector::Constant(1, 1.0), 6);
    // oracle: L(n) = sum of ln |a(k)| over k < n
    std::vector<double> expected{0.0};
    for (long k = 0; k < 6; ++k)
        expected.push_back(expected.back() + std::log(std::abs(seq.eval(k)(0, 0))));
    for (long n = 0; n <= 6; ++n)
        CHECK(sol.logn[n] == doctest::Approx(expected[n]).epsilon(1e-12));
    CHECK(expected[2] == doctest::Approx(kLn4));
    CHECK(expected[6] == doctest::Approx(3 * kLn4));
}

TEST_CASE("propagate_direction rejects degenerate input") {
    CHECK_THROWS_AS(propagate_direction(constant_scalar(2.0), Vector::Zero(1), 10),
                    ComputeError);
    CHECK_THROWS_AS(propagate_direction(constant_scalar(2.0), Vector::Constant(1, 1.0), 0),
                    ComputeError);
}

TEST_CASE("log solution invariants: unit directions and step reconstruction") {
    auto seq = load_system(SystemSpec::random_qdq(3, 13, 0.5, 2.0, 200));
    Vector x0(3);
    x0 << 0.3, -1.2, 0.77;
    auto sol = propagate_direction(seq, x0, 200);
    for (long n = 0; n <= 200; n += 7) CHECK(std::abs(sol.dirs[n].norm() - 1.0) <= 1e-10);
    for (long n = 0; n < 200; n += 11) {
        const Vector lhs = seq.eval(n) * sol.dirs[n];
        const Vector rhs = std::exp(sol.logn[n + 1] - sol.logn[n]) * sol.dirs[n + 1];
        CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());
    }
}

TEST_CASE("window_log_ratio examples and failure modes") {
    auto sol2 = propagate_direction(constant_scalar(2.0), Vector::Constant(1, 1.0), 20);
    CHECK(window_log_ratio(sol2, 10, 3) == doctest::Approx(kLn2).epsilon(1e-12));

    auto solp = propagate_direction(periodic_1_4(), Vector::Constant(1, 1.0), 20);
    CHECK(window_log_ratio(solp, 2, 1) == doctest::Approx(kLn4).epsilon(1e-12));
    CHECK(window_log_ratio(solp, 3, 0) == doctest::Approx(kLn4 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(window_log_ratio(solp, 3, 3), ComputeError);
    CHECK_THROWS_AS(window_log_ratio(solp, 2, 5), ComputeError);
    CHECK_THROWS_AS(window_log_ratio(solp, 25, 1), ComputeError);
}

TEST_CASE("window ratios chain across intermediate times") {
    auto seq = load_system(SystemSpec::random_qdq(2, 4, 0.5, 2.0, 300));
    Vector x0(2);
    x0 << 1.0, -0.4;
    auto sol = propagate_direction(seq, x0, 300);
    CounterRng rng(5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const long m = static_cast<long>(rng.next_uniform() * 100);
        const long k = m + 1 + static_cast<long>(rng.next_uniform() * 100);
        const long n = k + 1 + static_cast<long>(rng.next_uniform() * 90);
        const double whole = window_log_ratio(sol, n, m) * (n - m);
        const double parts =
            window_log_ratio(sol, n, k) * (n - k) + window_log_ratio(sol, k, m) * (k - m);
        REQUIRE(whole == doctest::Approx(parts).epsilon(1e-9));
    }
}

TEST_CASE("extreme_window_growth on closed-form systems") {
    SUBCASE("constant scalar") {
        auto [hi, lo] = extreme_window_growth(constant_scalar(2.0), 12, 2);
        CHECK(hi == doctest::Approx(10 * kLn2).epsilon(1e-12));
        CHECK(lo == doctest::Approx(10 * kLn2).epsilon(1e-12));
    }
    SUBCASE("diagonal splits into max and min rates") {
        auto [hi, lo] = extreme_window_growth(diag_2_half(), 5, 0);
        CHECK(hi == doctest::Approx(5 * kLn2).epsilon(1e-12));
        CHECK(lo == doctest::Approx(-5 * kLn2).epsilon(1e-12));
    }
    SUBCASE("rotation-scale has equal singular values") {
        auto seq = load_system(SystemSpec::constant(1.5 * rotation2(1.0), 100));
        auto [hi, lo] = extreme_window_growth(seq, 8, 3);
        CHECK(hi == doctest::Approx(5 * std::log(1.5)).epsilon(1e-10));
        CHECK(lo == doctest::Approx(5 * std::log(1.5)).epsilon(1e-10));
        // oracle: explicit product + SVD for a short window
        const auto [bh, bl] = brute_window(seq, 8, 3);
        CHECK(hi == doctest::Approx(bh).epsilon(1e-10));
        CHECK(lo == doctest::Approx(bl).epsilon(1e-10));
    }
    SUBCASE("order of arguments is validated") {
        CHECK_THROWS_AS(extreme_window_growth(diag_2_half(), 3, 3), ComputeError);
        CHECK_THROWS_AS(extreme_window_growth(diag_2_half(), 2, 7), ComputeError);
    }
}

TEST_CASE("extreme_window_growth matches brute force on random short windows") {
    auto seq = load_system(SystemSpec::random_qdq(3, 77, 0.5, 2.0, 400));
    CounterRng rng(1234, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const long m = static_cast<long>(rng.next_uniform() * 380);
        const long w = 1 + static_cast<long>(rng.next_uniform() * 12);
        const auto [hi, lo] = extreme_window_growth(seq, m + w, m);
        const auto [bh, bl] = brute_window(seq, m + w, m);
        REQUIRE(std::abs(hi - bh) <= 1e-8);
        REQUIRE(std::abs(lo - bl) <= 1e-8);
        // a-priori coefficient bounds on the growth rates
        REQUIRE(hi <= w * std::log(seq.norm_bound()) + 1e-9);
        REQUIRE(lo >= -w * std::log(seq.inv_norm_bound()) - 1e-9);
        REQUIRE(hi >= lo);
    }
}

TEST_CASE("a larger minimum anchor stride keeps traces monotone and inside the dense bounds") {
    auto seq = load_system(SystemSpec::random_qdq(2, 50, 0.5, 2.0, 4096));
    Vector x0(2);
    x0 << 1.0, 1.0;
    auto sol = propagate_direction(seq, x0, 4096);
    WindowConfig dense = WindowConfig::defaults(4096);
    WindowConfig sparse = dense;
    sparse.stride = 64;
    const auto t_dense = scan_cumulative(sol.logn, dense);
    const auto t_sparse = scan_cumulative(sol.logn, sparse);
    for (std::size_t i = 0; i < t_sparse.thresholds.size(); ++i) {
        CHECK(t_sparse.sup_values[i] <= t_dense.sup_values[i] + 1e-12);
        CHECK(t_sparse.inf_values[i] >= t_dense.inf_values[i] - 1e-12);
    }
}

TEST_CASE("extreme_window_growth survives windows that would overflow raw products") {
    // 2^2000 and 2^-2000 are far outside double range
    auto [hi, lo] = extreme_window_growth(diag_2_half(2100), 2000, 0);
    CHECK(hi == doctest::Approx(2000 * kLn2).epsilon(1e-10));
    CHECK(lo == doctest::Approx(-2000 * kLn2).epsilon(1e-10));
}

TEST_CASE("threshold traces are monotone and bounded by the coefficient bounds") {
    auto seq = load_system(SystemSpec::random_qdq(2, 31, 0.5, 2.0, 4096));
    auto cfg = WindowConfig::defaults(4096);
    Vector x0(2);
    x0 << 0.6, 0.8;
    auto sol = propagate_direction(seq, x0, 4096);
    auto trace = scan_cumulative(sol.logn, cfg);
    for (std::size_t i = 0; i + 1 < trace.thresholds.size(); ++i) {
        CHECK(trace.sup_values[i + 1] <= trace.sup_values[i] + 1e-12);
        CHECK(trace.inf_values[i + 1] >= trace.inf_values[i] - 1e-12);
    }
    const double hi_bound = std::log(seq.norm_bound()) + 1e-9;
    const double lo_bound = -std::log(seq.inv_norm_bound()) - 1e-9;
    CHECK(trace.sup_values.front() <= hi_bound);
    CHECK(trace.inf_values.front() >= lo_bound);
}

TEST_CASE("scan_subspace_growth agrees with the cumulative scan for scalar systems") {
    auto seq = periodic_1_4(4096);
    auto cfg = WindowConfig::defaults(4096);
    auto sol = propagate_direction(seq, Vector::Constant(1, 1.0), 4096);
    const auto direct = scan_cumulative(sol.logn, cfg);
    const auto viaframe = scan_subspace_growth(seq, Matrix::Identity(1, 1), cfg);
    for (std::size_t i = 0; i < direct.thresholds.size(); ++i) {
        CHECK(viaframe.sup_values[i] == doctest::Approx(direct.sup_values[i]).epsilon(1e-12));
        CHECK(viaframe.inf_values[i] == doctest::Approx(direct.inf_values[i]).epsilon(1e-12));
    }
}

TEST_CASE("scan_subspace_growth brackets the window values exactly for diag(2,1/2)") {
    auto cfg = WindowConfig::defaults(8192);
    auto trace = scan_subspace_growth(diag_2_half(8192), Matrix::Identity(2, 2), cfg);
    CHECK(trace.sup_last() == doctest::Approx(kLn2).epsilon(1e-10));
    CHECK(trace.inf_last() == doctest::Approx(-kLn2).epsilon(1e-10));
}

TEST_CASE("window machinery rejects horizons below the largest threshold") {
    WindowConfig cfg;
    cfg.n_max = 100;
    cfg.n_grid = {16, 512};
    std::vector<double> cum(101, 0.0);
    CHECK_THROWS_AS(scan_cumulative(cum, cfg), ComputeError);
}

TEST_CASE("worker count resolves from the environment when unset") {
    setenv("BOHL_SPECTRA_THREADS", "3", 1);
    set_thread_count(0);
    CHECK(thread_count() == 3);
    set_thread_count(2);
    CHECK(thread_count() == 2);  // explicit setting wins
    unsetenv("BOHL_SPECTRA_THREADS");
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_chunks covers the range once and propagates exceptions") {
    std::vector<int> hits(1000, 0);
    parallel_chunks(1000, [&](long lo, long hi, int) {
        for (long i = lo; i < hi; ++i) ++hits[i];
    });
    for (int h : hits) REQUIRE(h == 1);
    CHECK_THROWS_AS(parallel_chunks(
                        100, [&](long lo, long, int) {
                            if (lo == 0) throw ComputeError("boom");
                        }),
                    ComputeError);
}

TEST_CASE("representation m_beyond_n only counts windows with large m") {
    WindowConfig cfg;
    cfg.n_max = 400;
    cfg.n_grid = {16, 64};
    ThresholdAccumulator all(cfg.n_grid, Representation::all_m);
    ThresholdAccumulator beyond(cfg.n_grid, Representation::m_beyond_n);
    // one early window, one late window, both long
    all.add(0, 100, 5.0, 5.0);
    all.add(200, 100, 1.0, 1.0);
    beyond.add(0, 100, 5.0, 5.0);
    beyond.add(200, 100, 1.0, 1.0);
    const auto t_all = all.finish();
    const auto t_beyond = beyond.finish();
    CHECK(t_all.sup_values[1] == doctest::Approx(5.0));      // early window counted
    CHECK(t_beyond.sup_values[1] == doctest::Approx(1.0));   // early window excluded
}
