#ifndef SOLIPLASMON_WITNESSES_HPP
#define SOLIPLASMON_WITNESSES_HPP

#include <string>
#include <utility>
#include <vector>

#include "soliplasmon/dynamics.hpp"
#include "soliplasmon/fock.hpp"
#include "soliplasmon/model.hpp"

namespace soliplasmon {

// One evaluation of both two-mode steering witnesses plus the mode
// occupations; raw_trace_magnitude carries the trace diagnostic through to
// the output files.
struct WitnessSample {
    double t = 0.0;
    double zeta_ab = 0.0;  // > 0 certifies mode a steers mode b
    double zeta_ba = 0.0;  // > 0 certifies mode b steers mode a
    double n_a = 0.0;
    double n_b = 0.0;
    double raw_trace_magnitude = 1.0;
};

struct WitnessTrace {
    std::vector<WitnessSample> samples;
    ModelParams params;
    std::string initial_state_tag;
    double dt_sample = 0.0;  // uniform spacing of samples
};

// Operators reused across many witness evaluations on one space.
struct WitnessOps {
    ComplexMatrix exchange;  // a^+ b
    ComplexMatrix q_ab;      // n_a (n_b + 1/2)
    ComplexMatrix q_ba;      // n_b (n_a + 1/2)
    ComplexMatrix n_a;
    ComplexMatrix n_b;
};

WitnessOps make_witness_ops(const TwoModeSpace& space);

// zeta_ab = <a^+ b><b^+ a> - <n_a (n_b + 1/2)>
// zeta_ba = <a^+ b><b^+ a> - <n_b (n_a + 1/2)>
// The exchange moment is computed once and conjugated for its partner.
// Each term's imaginary residue is checked against 1e-10 before the value
// is cast to real.
std::pair<double, double> two_mode_witnesses(const DensityMatrix& rho,
                                             const TwoModeSpace& space);
std::pair<double, double> two_mode_witnesses(const DensityMatrix& rho, const WitnessOps& ops);

// General N-mode witness value |<prod_k a_k>|^2 - <n_1 prod_{k>=2}(n_k + 1/2)>
// for annihilation operators given on a shared space; positive values
// witness steering of mode 1's party.
double n_mode_witness(const DensityMatrix& rho, const std::vector<ComplexMatrix>& mode_ops);

// Full simulate-and-evaluate pass: evolves psi0 under h and records a
// witness sample at every stored trajectory point.
WitnessTrace witness_trace(const StateVector& psi0, const SplitHamiltonian& h,
                           const EvolutionConfig& cfg, const ModelParams& params,
                           std::string initial_state_tag);

}  // namespace soliplasmon

#endif
