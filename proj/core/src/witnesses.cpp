#include "soliplasmon/witnesses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "soliplasmon/errors.hpp"

namespace soliplasmon {

namespace {

constexpr double kImagTol = 1e-10;

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > kImagTol) {
        throw NumericError(std::string(what) + ": imaginary residue " +
                           std::to_string(z.imag()) + " exceeds 1e-10");
    }
    return z.real();
}

}  // namespace

WitnessOps make_witness_ops(const TwoModeSpace& space) {
    const ComplexMatrix a = mode_a_annihilation(space);
    const ComplexMatrix b = mode_b_annihilation(space);
    const ComplexMatrix n_a = mode_a_number(space);
    const ComplexMatrix n_b = mode_b_number(space);
    const int d = space.total_dim();
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(d, d);
    return WitnessOps{a.adjoint() * b, n_a * (n_b + half), n_b * (n_a + half), n_a, n_b};
}

std::pair<double, double> two_mode_witnesses(const DensityMatrix& rho,
                                             const TwoModeSpace& space) {
    return two_mode_witnesses(rho, make_witness_ops(space));
}

std::pair<double, double> two_mode_witnesses(const DensityMatrix& rho, const WitnessOps& ops) {
    const Complex exch = expectation(rho, ops.exchange);  // <a^+ b>; <b^+ a> = conj
    const double cross = (exch * std::conj(exch)).real();
    const double zeta_ab = cross - real_checked(expectation(rho, ops.q_ab), "zeta_ab moment");
    const double zeta_ba = cross - real_checked(expectation(rho, ops.q_ba), "zeta_ba moment");
    return {zeta_ab, zeta_ba};
}

double n_mode_witness(const DensityMatrix& rho, const std::vector<ComplexMatrix>& mode_ops) {
    if (mode_ops.size() < 2) {
        throw std::invalid_argument("n_mode_witness: at least two modes required");
    }
    const int d = static_cast<int>(rho.rho.rows());
    for (const ComplexMatrix& op : mode_ops) {
        if (op.rows() != d || op.cols() != d) {
            throw std::invalid_argument("n_mode_witness: operators must share the state's space");
        }
    }

    ComplexMatrix product = mode_ops.front();
    for (std::size_t k = 1; k < mode_ops.size(); ++k) product = product * mode_ops[k];
    const Complex joint = expectation(rho, product);

    ComplexMatrix occupancy = mode_ops.front().adjoint() * mode_ops.front();
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(d, d);
    for (std::size_t k = 1; k < mode_ops.size(); ++k) {
        occupancy = occupancy * (mode_ops[k].adjoint() * mode_ops[k] + half);
    }
    const double bound = real_checked(expectation(rho, occupancy), "n_mode_witness bound");
    return std::norm(joint) - bound;
}

WitnessTrace witness_trace(const StateVector& psi0, const SplitHamiltonian& h,
                           const EvolutionConfig& cfg, const ModelParams& params,
                           std::string initial_state_tag) {
    const WitnessOps ops = make_witness_ops(psi0.space);
    WitnessTrace trace;
    trace.params = params;
    trace.initial_state_tag = std::move(initial_state_tag);
    trace.dt_sample = cfg.dt * cfg.sample_stride;
    trace.samples.reserve(static_cast<std::size_t>(cfg.t_max / trace.dt_sample) + 2);

    evolve(psi0, h, cfg, [&](double t, const DensityMatrix& state) {
        const auto [zeta_ab, zeta_ba] = two_mode_witnesses(state, ops);
        WitnessSample s;
        s.t = t;
        s.zeta_ab = zeta_ab;
        s.zeta_ba = zeta_ba;
        s.n_a = real_checked(expectation(state, ops.n_a), "n_a");
        s.n_b = real_checked(expectation(state, ops.n_b), "n_b");
        s.raw_trace_magnitude = std::abs(state.raw_trace);
        trace.samples.push_back(s);
    });
    return trace;
}

}  // namespace soliplasmon
