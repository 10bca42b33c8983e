#include "soliplasmon/model.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace soliplasmon {

void ModelParams::validate() const {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("ModelParams: kappa must be > 0");
    }
    if (!std::isfinite(omega) || !std::isfinite(kerr) || !std::isfinite(g) ||
        !std::isfinite(kappa)) {
        throw std::invalid_argument("ModelParams: parameters must be finite");
    }
}

StateVector::StateVector(TwoModeSpace s, ComplexVector amps, double deficit)
    : space(s), amplitudes(std::move(amps)), norm_deficit(deficit) {
    if (amplitudes.size() != space.total_dim()) {
        throw std::invalid_argument("StateVector: amplitude count does not match space");
    }
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("StateVector: state must be unit norm");
    }
}

SplitHamiltonian build_hamiltonian(const ModelParams& params, const TwoModeSpace& space) {
    params.validate();
    if (space.cutoff_a < 2 || space.cutoff_b < 2) {
        throw std::invalid_argument("build_hamiltonian: both cutoffs must be >= 2");
    }

    const ComplexMatrix a_full = mode_a_annihilation(space);
    const ComplexMatrix b_full = mode_b_annihilation(space);
    const ComplexMatrix n_a = mode_a_number(space);
    const ComplexMatrix n_b = mode_b_number(space);
    const ComplexMatrix sqrt_n_a = kron(diag_sqrt(number_operator(space.cutoff_a)),
                                        ComplexMatrix::Identity(space.cutoff_b, space.cutoff_b));

    // Kerr term a^+ a^+ a a = n_a (n_a - 1), diagonal in the Fock basis.
    const int d = space.total_dim();
    ComplexMatrix kerr = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double na = n_a(i, i).real();
        kerr(i, i) = na * (na - 1.0);
    }

    ComplexMatrix h = params.omega * n_a + params.omega * n_b + params.kerr * kerr;
    h += params.g_ab() * (a_full * b_full.adjoint());
    h += params.g_ba() * (sqrt_n_a * (a_full.adjoint() * b_full));

    // Split into the symmetrized Hermitian part and its remainder. The
    // canonical H is defined as h_plus + h_minus: that sum can differ from
    // the term-by-term assembly by one rounding unit per entry (an exact
    // simultaneous split does not exist in floating point), and taking it
    // as the system Hamiltonian makes the reconstruction identity hold
    // bit for bit.
    ComplexMatrix h_plus(d, d);
    for (int i = 0; i < d; ++i) {
        h_plus(i, i) = Complex(h(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            const Complex p = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h_plus(i, j) = p;
            h_plus(j, i) = std::conj(p);
        }
    }
    ComplexMatrix h_minus = h - h_plus;
    h_plus = h - h_minus;
    ComplexMatrix total = h_plus + h_minus;

    return SplitHamiltonian{std::move(h_plus), std::move(h_minus), std::move(total), space};
}

StateVector fock_state(const TwoModeSpace& space, int n_a, int n_b) {
    ComplexVector amps = ComplexVector::Zero(space.total_dim());
    amps(space.index(n_a, n_b)) = 1.0;
    return StateVector(space, std::move(amps));
}

StateVector coherent_state(const TwoModeSpace& space, Complex alpha, Mode mode,
                           bool override_leakage_guard) {
    const int cutoff = (mode == Mode::a) ? space.cutoff_a : space.cutoff_b;
    const double mag = std::abs(alpha);
    const int needed = static_cast<int>(std::ceil(mag * mag + 6.0 * mag + 10.0));
    if (cutoff < needed && !override_leakage_guard) {
        throw std::invalid_argument("coherent_state: cutoff " + std::to_string(cutoff) +
                                    " below leakage guard " + std::to_string(needed) +
                                    " for |alpha| = " + std::to_string(mag));
    }

    ComplexVector single = ComplexVector::Zero(cutoff);
    const double prefactor = std::exp(-0.5 * mag * mag);
    Complex term = prefactor;  // alpha^n / sqrt(n!) accumulated iteratively
    single(0) = term;
    for (int n = 1; n < cutoff; ++n) {
        term *= alpha / std::sqrt(static_cast<double>(n));
        single(n) = term;
    }

    const double norm2 = single.squaredNorm();
    const double deficit = 1.0 - norm2;
    if (deficit > 1e-10) {
        std::cerr << "coherent_state: truncation discarded " << deficit
                  << " of the norm (cutoff " << cutoff << ", |alpha| " << mag << ")\n";
    }
    single /= std::sqrt(norm2);

    ComplexVector amps = ComplexVector::Zero(space.total_dim());
    if (mode == Mode::a) {
        for (int n = 0; n < cutoff; ++n) amps(space.index(n, 0)) = single(n);
    } else {
        for (int n = 0; n < cutoff; ++n) amps(space.index(0, n)) = single(n);
    }
    return StateVector(space, std::move(amps), deficit);
}

ComplexMatrix mode_a_annihilation(const TwoModeSpace& space) {
    return kron(annihilation(space.cutoff_a),
                ComplexMatrix::Identity(space.cutoff_b, space.cutoff_b));
}

ComplexMatrix mode_b_annihilation(const TwoModeSpace& space) {
    return kron(ComplexMatrix::Identity(space.cutoff_a, space.cutoff_a),
                annihilation(space.cutoff_b));
}

ComplexMatrix mode_a_number(const TwoModeSpace& space) {
    return kron(number_operator(space.cutoff_a),
                ComplexMatrix::Identity(space.cutoff_b, space.cutoff_b));
}

ComplexMatrix mode_b_number(const TwoModeSpace& space) {
    return kron(ComplexMatrix::Identity(space.cutoff_a, space.cutoff_a),
                number_operator(space.cutoff_b));
}

}  // namespace soliplasmon
