#ifndef SOLIPLASMON_DYNAMICS_HPP
#define SOLIPLASMON_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "soliplasmon/fock.hpp"
#include "soliplasmon/model.hpp"

namespace soliplasmon {

// State of the open system at one instant. `rho` holds the (normally
// trace-one) density matrix; `raw_trace` is the trace the unnormalized
// flow would have accumulated by this time, kept as a diagnostic of the
// non-unitary dynamics.
struct DensityMatrix {
    TwoModeSpace space;
    ComplexMatrix rho;
    Complex raw_trace{1.0, 0.0};
};

struct EvolutionConfig {
    double dt = 1e-3;       // step, units of 1/omega
    double t_max = 50.0;    // end of the simulated window, units of 1/omega
    int sample_stride = 10; // record every k-th step
    bool renormalize_each_step = true;

    void validate() const;
};

// Uniformly sampled trajectory. Sample spacing is dt * sample_stride and
// the t = 0 state is always included.
struct TimeSeries {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

// Right-hand side of the evolution equation,
//   d rho / dt = -i [H+, rho] - i {H-, rho},
// equal to -i (H rho - rho H^dagger). Valid for arbitrary rho.
ComplexMatrix step_rhs(const DensityMatrix& rho, const SplitHamiltonian& h);

// Hot-path variant of step_rhs for Hermitian rho: writes G + G^dagger with
// G = -i H rho into `out` using a single matrix product. Identical to
// step_rhs up to round-off whenever rho is Hermitian.
void step_rhs_hermitian(const ComplexMatrix& rho, const ComplexMatrix& h_total,
                        ComplexMatrix& out, ComplexMatrix& scratch);

using SampleObserver = std::function<void(double t, const DensityMatrix&)>;

// Classic fixed-step RK4 on the unnormalized flow; after each full step the
// state is mapped rho -> rho / tr(rho) (the pre-mapping trace is folded into
// the running raw trace). Aborts with NumericError if the trace collapses
// below 1e-14 or any entry turns non-finite.
void evolve(const StateVector& psi0, const SplitHamiltonian& h, const EvolutionConfig& cfg,
            const SampleObserver& on_sample);

// Convenience wrapper that stores every sample. Prefer the observer form
// for large spaces or long runs.
TimeSeries evolve(const StateVector& psi0, const SplitHamiltonian& h, const EvolutionConfig& cfg);

// Independent oracle: rho(t) = M rho(0) M^dagger / tr(...) with
// M = exp(-i H t) computed by matrix_exponential.
DensityMatrix exact_propagator(const StateVector& psi0, const SplitHamiltonian& h, double t);

// tr(q rho) / tr(rho); correct on raw (unnormalized) states as well.
Complex expectation(const DensityMatrix& rho, const ComplexMatrix& q);
Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& q);

}  // namespace soliplasmon

#endif
