#include <cmath>
#include <cstdio>

#include "bohl/exponents.hpp"
#include "bohl/triangularize.hpp"
#include "doctest.h"

using namespace bohl;

namespace {
Matrix upper_2_1_half() {
    Matrix m(2, 2);
    m << 2.0, 1.0, 0.0, 0.5;
    return m;
}
}  // namespace

TEST_CASE("already upper triangular systems pass through unchanged") {
    auto seq = load_system(SystemSpec::upper_triangular({upper_2_1_half()}, 200));
    auto tri = qr_normal_form(seq, 200);
    for (long n : {0L, 50L, 199L})
        CHECK(((*tri.b)[n] - upper_2_1_half()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((tri.t_at(123) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(tri.residual <= 1e-12);
}

TEST_CASE("rotation-scale reduces to a constant diagonal 1.5") {
    auto seq = load_system(SystemSpec::constant(1.5 * rotation2(1.0), 300));
    auto tri = qr_normal_form(seq, 300);
    for (long n : {0L, 120L, 299L}) {
        CHECK((*tri.b)[n](0, 0) == doctest::Approx(1.5).epsilon(1e-12));
        CHECK((*tri.b)[n](1, 1) == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(std::abs((*tri.b)[n](0, 1)) <= 1e-12);
    }
}

TEST_CASE("diagonal systems are their own normal form") {
    auto seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, 100));
    auto tri = qr_normal_form(seq, 100);
    CHECK((*tri.b)[7](0, 0) == doctest::Approx(2.0));
    CHECK((*tri.b)[7](1, 1) == doctest::Approx(0.5));
    CHECK((tri.t_at(42) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("normal form invariants on a generic system") {
    const long n_max = 2000;
    auto seq = load_system(SystemSpec::random_qdq(3, 19, 0.5, 2.0, n_max));
    auto tri = qr_normal_form(seq, n_max);

    CHECK(tri.residual <= 1e-9 * (1.0 + seq.norm_bound()));
    CHECK(tri.orthogonality_defect <= 1e-10);
    CHECK(tri.b_diag_min > 0.0);

    SUBCASE("B is upper triangular with exactly zero lower entries") {
        for (long n : {0L, 777L, n_max - 1}) {
            const auto& b = (*tri.b)[n];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < i; ++j) REQUIRE(b(i, j) == 0.0);
            for (int k = 0; k < 3; ++k) REQUIRE(b(k, k) > 0.0);
        }
    }
    SUBCASE("dynamic equivalence: T(n+1) B(n) = A(n) T(n)") {
        for (long n : {0L, 31L, 1500L}) {
            const Matrix lhs = tri.t_at(n + 1) * (*tri.b)[n];
            const Matrix rhs = seq.eval(n) * tri.t_at(n);
            REQUIRE((lhs - rhs).norm() <= 1e-9 * (1.0 + seq.norm_bound()));
        }
    }
    SUBCASE("transforming by the frames reproduces B") {
        auto conj = transform(seq, tri.t_sequence());
        for (long n : {0L, 100L, 1999L})
            REQUIRE((conj.eval(n) - (*tri.b)[n]).cwiseAbs().maxCoeff() <= 1e-9);
    }
    SUBCASE("orthogonal equivalence preserves the spectral norm") {
        for (long n : {0L, 50L, 1234L})
            REQUIRE(spectral_norm((*tri.b)[n]) ==
                    doctest::Approx(spectral_norm(seq.eval(n))).epsilon(1e-9));
    }
    SUBCASE("checkpointed frames match a direct sequential pass") {
        auto frames = all_frames(tri);
        for (long n : {0L, 1023L, 1024L, 1025L, 1999L})
            REQUIRE((tri.t_at(n) - frames[n]).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("direction exponents are invariant under the triangularization") {
    const long n_max = 8192;
    auto seq = load_system(SystemSpec::constant(1.5 * rotation2(1.0), n_max));
    auto tri = qr_normal_form(seq, n_max);
    auto cfg = WindowConfig::defaults(n_max);
    // T(0) = I, so directions compare one to one
    Vector x0(2);
    x0 << 0.8, -0.6;
    auto sol_a = propagate_direction(seq, x0, n_max);
    auto sol_b = propagate_direction(tri.b_sequence(), x0, n_max);
    auto est_a = bohl_exponents_direction(sol_a, cfg);
    auto est_b = bohl_exponents_direction(sol_b, cfg);
    CHECK(std::abs(est_a.lower - est_b.lower) <= 1e-2);
    CHECK(std::abs(est_a.upper - est_b.upper) <= 1e-2);
}

TEST_CASE("diagonal_part extracts scalar Lyapunov sequences") {
    SUBCASE("constant diagonal") {
        auto seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, 50));
        auto parts = diagonal_part(qr_normal_form(seq, 50));
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].eval(13)(0, 0) == doctest::Approx(2.0));
        CHECK(parts[1].eval(13)(0, 0) == doctest::Approx(0.5));
        CHECK(parts[1].inv_norm_bound() == doctest::Approx(2.0));
    }
    SUBCASE("periodic triangular diagonal pattern reads back") {
        Matrix m1(2, 2), m2(2, 2);
        m1 << 1.0, 0.5, 0.0, 3.0;
        m2 << 4.0, -0.25, 0.0, 3.0;
        auto seq = load_system(SystemSpec::upper_triangular({m1, m2}, 40));
        auto parts = diagonal_part(qr_normal_form(seq, 40));
        CHECK(parts[0].eval(0)(0, 0) == doctest::Approx(1.0));
        CHECK(parts[0].eval(1)(0, 0) == doctest::Approx(4.0));
        CHECK(parts[1].eval(0)(0, 0) == doctest::Approx(3.0));
        CHECK(parts[1].eval(1)(0, 0) == doctest::Approx(3.0));
    }
    SUBCASE("negative diagonal is normalized to positive rates") {
        Matrix m(2, 2);
        m << -2.0, 1.0, 0.0, 0.5;
        auto seq = load_system(SystemSpec::upper_triangular({m}, 60));
        auto tri = qr_normal_form(seq, 60);
        for (long n : {0L, 1L, 2L, 59L}) REQUIRE((*tri.b)[n](0, 0) == doctest::Approx(2.0));
        // the sign flip lives in the frames, which stay orthogonal
        CHECK(tri.orthogonality_defect <= 1e-12);
        CHECK(tri.residual <= 1e-12);
    }
}

TEST_CASE("diagonal cumlog matches the diagonal products") {
    auto seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, 64));
    auto tri = qr_normal_form(seq, 64);
    auto cum = diagonal_cumlog(tri, 1);
    REQUIRE(cum.size() == 65);
    CHECK(cum[10] == doctest::Approx(-10 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("leading block of the product equals the product of leading blocks") {
    auto seq = load_system(SystemSpec::random_qdq(3, 23, 0.5, 2.0, 64));
    auto tri = qr_normal_form(seq, 64);
    auto lead = leading_block_sequence(tri, 2);
    Matrix full = Matrix::Identity(3, 3);
    Matrix block = Matrix::Identity(2, 2);
    for (long n = 0; n < 20; ++n) {
        full = (*tri.b)[n] * full;
        block = lead.eval(n) * block;
    }
    CHECK((full.topLeftCorner(2, 2) - block).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("qr_normal_form rejects numerically singular coefficients") {
    auto gen = [](long n, Matrix& a, Matrix& a_inv) {
        a = Matrix::Identity(2, 2);
        if (n == 5) a(1, 1) = 0.0;  // singular step
        a_inv = a;
    };
    MatrixSequence bad(2, gen, 1.0, 1.0, 100, "bad");
    CHECK_THROWS_AS(qr_normal_form(bad, 100), ComputeError);
}

TEST_CASE("b_sequence refuses indices beyond the constructed horizon") {
    auto seq = load_system(SystemSpec::diagonal({{2.0}, {0.5}}, 32));
    auto b = qr_normal_form(seq, 32).b_sequence();
    CHECK_THROWS_AS(b.eval(32), ComputeError);
}

TEST_CASE("normal form dump and reload as a file system") {
    auto seq = load_system(SystemSpec::constant(1.5 * rotation2(1.0), 32));
    auto tri = qr_normal_form(seq, 32);
    const std::string path = "/tmp/bohl_tri_dump.json";
    write_matrix_file(path, *tri.b);
    auto reloaded = load_system(SystemSpec::from_file(path, 32));
    for (long n : {0L, 15L, 31L})
        CHECK((reloaded.eval(n) - (*tri.b)[n]).cwiseAbs().maxCoeff() <= 1e-15);
    std::remove(path.c_str());
}
