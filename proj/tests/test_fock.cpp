#include <doctest.h>

#include <cmath>

#include "soliplasmon/errors.hpp"
#include "soliplasmon/fock.hpp"
#include "test_helpers.hpp"

using namespace soliplasmon;
using test::random_matrix;

TEST_CASE("annihilation_matrix_entries") {
    const ComplexMatrix a2 = annihilation(2);
    CHECK(a2(0, 0) == Complex{0.0, 0.0});
    CHECK(a2(0, 1) == Complex{1.0, 0.0});
    CHECK(a2(1, 0) == Complex{0.0, 0.0});
    CHECK(a2(1, 1) == Complex{0.0, 0.0});

    const ComplexMatrix a3 = annihilation(3);
    CHECK(a3(0, 1).real() == doctest::Approx(1.0));
    CHECK(a3(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(a3.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));
}

TEST_CASE("annihilation_rejects_zero_cutoff") {
    CHECK_THROWS_AS(annihilation(0), std::invalid_argument);
}

TEST_CASE("number_operator_from_ladder_pair") {
    // sqrt(n)*sqrt(n) lands within one rounding of n
    for (int cutoff : {2, 5, 9}) {
        const ComplexMatrix n = annihilation(cutoff).adjoint() * annihilation(cutoff);
        for (int i = 0; i < cutoff; ++i) {
            CHECK(n(i, i).real() == doctest::Approx(static_cast<double>(i)));
        }
        CHECK(max_abs_diff(n, number_operator(cutoff)) <= 1e-14);
    }
}

TEST_CASE("creation_is_exact_adjoint") {
    const ComplexMatrix a = annihilation(6);
    CHECK(max_abs_diff(creation(6), a.adjoint()) == 0.0);
    CHECK(is_anti_hermitian(a - a.adjoint(), 0.0));
    CHECK(is_hermitian(a + a.adjoint(), 0.0));
}

TEST_CASE("truncated_commutator_identity") {
    // [a, a^+] = I - cutoff |top><top| on the truncated space: the canonical
    // commutation relation survives truncation except at the top level, and
    // the test pins the exact deficit there (to rounding of sqrt(n)^2).
    for (int cutoff : {2, 4, 7}) {
        const ComplexMatrix a = annihilation(cutoff);
        const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
        ComplexMatrix expected = ComplexMatrix::Identity(cutoff, cutoff);
        expected(cutoff - 1, cutoff - 1) -= static_cast<double>(cutoff);
        CHECK(max_abs_diff(comm, expected) <= 1e-14);
    }
}

TEST_CASE("kron_identity_and_layout") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
    CHECK(max_abs_diff(kron(i2, i3), ComplexMatrix::Identity(6, 6)) == 0.0);

    ComplexMatrix diag01 = ComplexMatrix::Zero(2, 2);
    diag01(1, 1) = 1.0;
    const ComplexMatrix embedded = kron(diag01, i2);
    // mode a on the left factor: diag(0,1) x I2 = diag(0,0,1,1)
    CHECK(embedded(0, 0) == Complex{0.0, 0.0});
    CHECK(embedded(1, 1) == Complex{0.0, 0.0});
    CHECK(embedded(2, 2) == Complex{1.0, 0.0});
    CHECK(embedded(3, 3) == Complex{1.0, 0.0});
}

TEST_CASE("kron_mixed_product_rule") {
    const ComplexMatrix a = random_matrix(2, 11);
    const ComplexMatrix b = random_matrix(2, 12);
    const ComplexMatrix c = random_matrix(2, 13);
    const ComplexMatrix d = random_matrix(2, 14);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
}

TEST_CASE("kron_associativity") {
    const ComplexMatrix a = random_matrix(2, 21);
    const ComplexMatrix b = random_matrix(3, 22);
    const ComplexMatrix c = random_matrix(2, 23);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
}

TEST_CASE("kron_dimension_guard") {
    const ComplexMatrix big = ComplexMatrix::Zero(1100, 1100);
    CHECK_THROWS_AS(kron(big, big), std::invalid_argument);
}

TEST_CASE("diag_sqrt_basic") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const ComplexMatrix r = diag_sqrt(d);
    CHECK(r(0, 0).real() == doctest::Approx(0.0));
    CHECK(r(1, 1).real() == doctest::Approx(1.0));
    CHECK(r(2, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(max_abs_diff(r * r, d) <= 1e-15);
}

TEST_CASE("diag_sqrt_squares_back_to_number_operator") {
    const ComplexMatrix n = number_operator(5);
    const ComplexMatrix r = diag_sqrt(n);
    CHECK(max_abs_diff(r * r, n) <= 1e-14);
}

TEST_CASE("diag_sqrt_basis_vector_action") {
    // sqrt(n_a) x I applied to |2,1> multiplies by sqrt(2).
    const TwoModeSpace space(3, 2);
    const ComplexMatrix op =
        kron(diag_sqrt(number_operator(3)), ComplexMatrix::Identity(2, 2));
    ComplexVector v = ComplexVector::Zero(space.total_dim());
    v(space.index(2, 1)) = 1.0;
    const ComplexVector w = op * v;
    CHECK(std::abs(w(space.index(2, 1)) - Complex{std::sqrt(2.0), 0.0}) <= 1e-15);
    CHECK(w.norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("diag_sqrt_rejects_bad_input") {
    ComplexMatrix off = ComplexMatrix::Zero(2, 2);
    off(0, 1) = 0.5;
    CHECK_THROWS_AS(diag_sqrt(off), std::invalid_argument);

    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = -1.0;
    CHECK_THROWS_AS(diag_sqrt(neg), std::invalid_argument);
}

TEST_CASE("matrix_exponential_identity_and_diagonal") {
    const ComplexMatrix zero = ComplexMatrix::Zero(4, 4);
    CHECK(max_abs_diff(matrix_exponential(zero), ComplexMatrix::Identity(4, 4)) <= 1e-15);

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = Complex{0.3, 0.0};
    d(1, 1) = Complex{-1.2, 0.4};
    d(2, 2) = Complex{0.0, -2.0};
    const ComplexMatrix e = matrix_exponential(d);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(e(i, i) - std::exp(d(i, i))) <= 1e-14);
    }
    CHECK(std::abs(e(0, 1)) <= 1e-15);
}

TEST_CASE("matrix_exponential_two_level_closed_form") {
    // exp(-i theta sigma_x) = [[cos, -i sin], [-i sin, cos]]
    const double theta = 0.3;
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = Complex{0.0, -theta};
    m(1, 0) = Complex{0.0, -theta};
    const ComplexMatrix e = matrix_exponential(m);
    CHECK(std::abs(e(0, 0) - Complex{std::cos(theta), 0.0}) <= 1e-12);
    CHECK(std::abs(e(1, 1) - Complex{std::cos(theta), 0.0}) <= 1e-12);
    CHECK(std::abs(e(0, 1) - Complex{0.0, -std::sin(theta)}) <= 1e-12);
    CHECK(std::abs(e(1, 0) - Complex{0.0, -std::sin(theta)}) <= 1e-12);
}

TEST_CASE("matrix_exponential_inverse_property") {
    for (unsigned seed : {31u, 32u, 33u}) {
        ComplexMatrix m = random_matrix(5, seed);
        m *= 5.0 / m.norm();
        const ComplexMatrix prod = matrix_exponential(m) * matrix_exponential(-m);
        CHECK(max_abs_diff(prod, ComplexMatrix::Identity(5, 5)) <= 1e-9);
    }
}

TEST_CASE("matrix_exponential_rejects_non_finite") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = Complex{std::nan(""), 0.0};
    CHECK_THROWS_AS(matrix_exponential(m), NumericError);
}

TEST_CASE("hermiticity_predicates") {
    const ComplexMatrix h = test::random_hermitian(4, 41);
    CHECK(is_hermitian(h, 1e-15));
    CHECK_FALSE(is_anti_hermitian(h, 1e-3));
    const ComplexMatrix anti = h * Complex{0.0, 1.0};
    CHECK(is_anti_hermitian(anti, 1e-15));
}

TEST_CASE("two_mode_space_index_bijection") {
    const TwoModeSpace space(3, 4);
    CHECK(space.total_dim() == 12);
    int expected = 0;
    for (int ia = 0; ia < 3; ++ia) {
        for (int ib = 0; ib < 4; ++ib) {
            CHECK(space.index(ia, ib) == expected);
            ++expected;
        }
    }
    CHECK_THROWS_AS(space.index(3, 0), std::out_of_range);
    CHECK_THROWS_AS(space.index(0, 4), std::out_of_range);
    CHECK_THROWS_AS(TwoModeSpace(0, 2), std::invalid_argument);
}
