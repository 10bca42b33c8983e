#include <doctest.h>

#include <cmath>

#include "soliplasmon/dynamics.hpp"
#include "soliplasmon/model.hpp"
#include "soliplasmon/witnesses.hpp"
#include "test_helpers.hpp"

using namespace soliplasmon;

namespace {

DensityMatrix pure_state(const TwoModeSpace& space, const ComplexVector& psi) {
    return DensityMatrix{space, psi * psi.adjoint(), 1.0};
}

ComplexVector coherent_amplitudes(int cutoff, Complex alpha) {
    ComplexVector v(cutoff);
    Complex term = std::exp(-0.5 * std::norm(alpha));
    v(0) = term;
    for (int n = 1; n < cutoff; ++n) {
        term *= alpha / std::sqrt(static_cast<double>(n));
        v(n) = term;
    }
    return v;
}

}  // namespace

TEST_CASE("witnesses_vanish_on_vacuum") {
    const TwoModeSpace space(3, 3);
    const StateVector vac = fock_state(space, 0, 0);
    const auto [zab, zba] = two_mode_witnesses(pure_state(space, vac.amplitudes), space);
    CHECK(zab == 0.0);
    CHECK(zba == 0.0);
}

TEST_CASE("single_photon_start_has_known_witness_values") {
    // <a^+ b> = 0, <n_a (n_b + 1/2)> = 1/2, <n_b (n_a + 1/2)> = 0.
    const TwoModeSpace space(4, 4);
    const StateVector s = fock_state(space, 1, 0);
    const auto [zab, zba] = two_mode_witnesses(pure_state(space, s.amplitudes), space);
    CHECK(zab == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(zba == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("product_coherent_states_never_witness_steering") {
    // |alpha>_a |beta>_b: the cross term cancels and
    // zeta_ab = -|alpha|^2/2, zeta_ba = -|beta|^2/2.
    const TwoModeSpace space(16, 16);
    const Complex alpha{0.8, 0.0};
    const Complex beta{0.3, -0.4};
    const ComplexVector va = coherent_amplitudes(16, alpha);
    const ComplexVector vb = coherent_amplitudes(16, beta);
    ComplexVector psi(space.total_dim());
    for (int ia = 0; ia < 16; ++ia) {
        for (int ib = 0; ib < 16; ++ib) psi(space.index(ia, ib)) = va(ia) * vb(ib);
    }
    psi /= psi.norm();
    const auto [zab, zba] = two_mode_witnesses(pure_state(space, psi), space);
    CHECK(zab == doctest::Approx(-0.5 * std::norm(alpha)).epsilon(1e-8));
    CHECK(zba == doctest::Approx(-0.5 * std::norm(beta)).epsilon(1e-8));
    CHECK(zab < 0.0);
    CHECK(zba < 0.0);
}

TEST_CASE("exchange_moments_are_conjugate") {
    ModelParams params;
    params.kappa = 1.4;
    const TwoModeSpace space(4, 4);
    const SplitHamiltonian h = build_hamiltonian(params, space);
    const StateVector psi0 = fock_state(space, 1, 0);
    const DensityMatrix rho = exact_propagator(psi0, h, 3.7);

    const ComplexMatrix a = mode_a_annihilation(space);
    const ComplexMatrix b = mode_b_annihilation(space);
    const Complex ab = expectation(rho, a.adjoint() * b);
    const Complex ba = expectation(rho, b.adjoint() * a);
    CHECK(std::abs(ba - std::conj(ab)) <= 1e-12);
    CHECK(std::abs(ab) > 1e-3);
}

TEST_CASE("mode_swap_maps_the_witness_pair_onto_itself") {
    const TwoModeSpace space(3, 4);
    ComplexVector psi = ComplexVector::Zero(space.total_dim());
    // arbitrary normalized superposition touching both modes
    psi(space.index(0, 1)) = Complex{0.6, 0.1};
    psi(space.index(1, 0)) = Complex{0.2, -0.5};
    psi(space.index(2, 2)) = Complex{0.4, 0.3};
    psi(space.index(1, 3)) = Complex{0.1, 0.2};
    psi /= psi.norm();

    const TwoModeSpace swapped(4, 3);
    ComplexVector psi_swapped = ComplexVector::Zero(swapped.total_dim());
    for (int ia = 0; ia < 3; ++ia) {
        for (int ib = 0; ib < 4; ++ib) {
            psi_swapped(swapped.index(ib, ia)) = psi(space.index(ia, ib));
        }
    }

    const auto [zab, zba] = two_mode_witnesses(pure_state(space, psi), space);
    const auto [zab_s, zba_s] =
        two_mode_witnesses(pure_state(swapped, psi_swapped), swapped);
    CHECK(zab_s == doctest::Approx(zba).epsilon(1e-13));
    CHECK(zba_s == doctest::Approx(zab).epsilon(1e-13));
}

TEST_CASE("n_mode_witness_vanishes_on_vacuum") {
    const TwoModeSpace space(3, 3);
    const StateVector vac = fock_state(space, 0, 0);
    const std::vector<ComplexMatrix> two{mode_a_annihilation(space),
                                         mode_b_annihilation(space)};
    CHECK(n_mode_witness(pure_state(space, vac.amplitudes), two) == 0.0);

    // three modes on a 2x2x2 space
    const ComplexMatrix a1 = annihilation(2);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const std::vector<ComplexMatrix> three{kron(kron(a1, id), id), kron(kron(id, a1), id),
                                           kron(id, kron(id, a1))};
    ComplexVector vac3 = ComplexVector::Zero(8);
    vac3(0) = 1.0;
    const DensityMatrix rho{TwoModeSpace(2, 4), vac3 * vac3.adjoint(), 1.0};
    CHECK(n_mode_witness(rho, three) == 0.0);
}

TEST_CASE("n_mode_witness_two_term_superposition_closed_form") {
    // (|0,0> + lambda |1,1>)/sqrt(1+lambda^2):
    //   |<a b>|^2 = (lambda/(1+lambda^2))^2,
    //   <n_a (n_b + 1/2)> = lambda^2/(1+lambda^2) * 3/2.
    const double lambda = 0.5;
    const TwoModeSpace space(2, 2);
    ComplexVector psi = ComplexVector::Zero(4);
    psi(space.index(0, 0)) = 1.0;
    psi(space.index(1, 1)) = lambda;
    psi /= psi.norm();
    const std::vector<ComplexMatrix> ops{mode_a_annihilation(space),
                                         mode_b_annihilation(space)};
    const double value = n_mode_witness(pure_state(space, psi), ops);
    const double denom = 1.0 + lambda * lambda;
    const double expected =
        (lambda / denom) * (lambda / denom) - (lambda * lambda / denom) * 1.5;
    CHECK(value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("n_mode_witness_differs_from_the_exchange_form") {
    // For two modes the general witness uses |<a b>|^2 where the dedicated
    // pair uses <a^+ b><b^+ a>; inside a fixed total-occupation sector the
    // former cross term vanishes while the latter does not.
    ModelParams params;
    const TwoModeSpace space(4, 4);
    const SplitHamiltonian h = build_hamiltonian(params, space);
    const StateVector psi0 = fock_state(space, 1, 0);
    const DensityMatrix rho = exact_propagator(psi0, h, 3.0);

    const WitnessOps ops = make_witness_ops(space);
    const auto [zab, zba] = two_mode_witnesses(rho, ops);
    const Complex exch = expectation(rho, ops.exchange);
    const double cross = std::norm(exch);
    const double general = n_mode_witness(
        rho, {mode_a_annihilation(space), mode_b_annihilation(space)});
    CHECK(cross > 1e-3);
    CHECK(general == doctest::Approx(zab - cross).epsilon(1e-10));
}

TEST_CASE("n_mode_witness_requires_two_modes") {
    const TwoModeSpace space(2, 2);
    const StateVector vac = fock_state(space, 0, 0);
    CHECK_THROWS_AS(
        n_mode_witness(pure_state(space, vac.amplitudes), {mode_a_annihilation(space)}),
        std::invalid_argument);
}

TEST_CASE("steering_is_one_way_at_every_sampled_time") {
    ModelParams params;
    params.kappa = 1.0;
    const TwoModeSpace space(4, 4);
    const SplitHamiltonian h = build_hamiltonian(params, space);
    const StateVector psi0 = fock_state(space, 1, 0);
    EvolutionConfig cfg;
    cfg.t_max = 20.0;
    cfg.sample_stride = 10;
    const WitnessTrace trace = witness_trace(psi0, h, cfg, params, "fock(1,0)");
    bool saw_ab = false;
    bool saw_ba = false;
    for (const WitnessSample& s : trace.samples) {
        CHECK(std::min(s.zeta_ab, s.zeta_ba) <= 1e-6);
        CHECK(s.n_a >= -1e-10);
        CHECK(s.n_b >= -1e-10);
        saw_ab = saw_ab || s.zeta_ab > 1e-3;
        saw_ba = saw_ba || s.zeta_ba > 1e-3;
    }
    CHECK(saw_ab);  // both witnesses do fire, just never together
    CHECK(saw_ba);
    CHECK(trace.dt_sample == doctest::Approx(0.01));
}
