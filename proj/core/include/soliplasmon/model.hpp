#ifndef SOLIPLASMON_MODEL_HPP
#define SOLIPLASMON_MODEL_HPP

#include <complex>
#include <string>

#include "soliplasmon/fock.hpp"

namespace soliplasmon {

// Physical constants of the soliton-plasmon pair, all in units of the
// resonance frequency omega. The asymmetry knob kappa sets the uneven
// exchange couplings: g_ab = kappa * g (soliton -> plasmon), g_ba = g.
struct ModelParams {
    double omega = 1.0;
    double kerr = -0.01;  // self-interaction strength of the soliton mode
    double g = 0.1;
    double kappa = 1.0;

    double g_ab() const { return kappa * g; }
    double g_ba() const { return g; }

    void validate() const;
};

// H split into Hermitian and anti-Hermitian parts, H = H+ + H-.
// `total` is the canonical assembled H; the split satisfies
// h_plus + h_minus == total exactly, elementwise.
struct SplitHamiltonian {
    ComplexMatrix h_plus;
    ComplexMatrix h_minus;
    ComplexMatrix total;
    TwoModeSpace space;
};

// Unit-norm pure state on a TwoModeSpace. `norm_deficit` records how much
// probability the truncation discarded before renormalization (zero for
// Fock states).
struct StateVector {
    TwoModeSpace space;
    ComplexVector amplitudes;
    double norm_deficit = 0.0;

    StateVector(TwoModeSpace s, ComplexVector amps, double deficit = 0.0);
};

// Assembles
//   H = omega n_a + omega n_b + kerr a^+ a^+ a a
//       + g_ab a b^+ + g_ba sqrt(n_a) a^+ b
// on the truncated space and splits it as H+- = (H +- H^+)/2. The
// amplitude-dependent coupling applies sqrt(n_a) after a^+ b, i.e. the
// factor order is literal left-to-right.
SplitHamiltonian build_hamiltonian(const ModelParams& params, const TwoModeSpace& space);

// |n_a, n_b> as a basis vector.
StateVector fock_state(const TwoModeSpace& space, int n_a, int n_b);

enum class Mode { a, b };

// Truncated coherent state exp(-|alpha|^2/2) sum alpha^n/sqrt(n!) |n> in
// the chosen mode, vacuum in the other, renormalized to unit norm.
//
// The default cutoff guard requires cutoff >= ceil(|alpha|^2 + 6|alpha| + 10)
// so the discarded tail is negligible; pass override_leakage_guard to run
// at smaller cutoffs anyway. Independently of the guard, a pre-
// renormalization norm deficit above 1e-10 is reported on stderr and
// recorded in the returned state.
StateVector coherent_state(const TwoModeSpace& space, Complex alpha, Mode mode,
                           bool override_leakage_guard = false);

// Embedded full-space operators for a TwoModeSpace (mode a on the left
// tensor factor).
ComplexMatrix mode_a_annihilation(const TwoModeSpace& space);
ComplexMatrix mode_b_annihilation(const TwoModeSpace& space);
ComplexMatrix mode_a_number(const TwoModeSpace& space);
ComplexMatrix mode_b_number(const TwoModeSpace& space);

}  // namespace soliplasmon

#endif
