#include "soliplasmon/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "soliplasmon/errors.hpp"

namespace soliplasmon {

namespace {
constexpr Complex kImag{0.0, 1.0};
constexpr double kTraceCollapse = 1e-14;
}  // namespace

void EvolutionConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("EvolutionConfig: dt must be positive and finite");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("EvolutionConfig: t_max must be positive and finite");
    }
    if (sample_stride < 1) {
        throw std::invalid_argument("EvolutionConfig: sample_stride must be >= 1");
    }
    const double steps = t_max / dt;
    if (steps > 4.0e9) {
        throw std::invalid_argument("EvolutionConfig: t_max/dt exceeds the step budget");
    }
}

ComplexMatrix step_rhs(const DensityMatrix& rho, const SplitHamiltonian& h) {
    if (rho.rho.rows() != h.h_plus.rows()) {
        throw std::invalid_argument("step_rhs: dimension mismatch");
    }
    const ComplexMatrix& r = rho.rho;
    ComplexMatrix commutator = h.h_plus * r - r * h.h_plus;
    ComplexMatrix anticommutator = h.h_minus * r + r * h.h_minus;
    return -kImag * (commutator + anticommutator);
}

void step_rhs_hermitian(const ComplexMatrix& rho, const ComplexMatrix& h_total,
                        ComplexMatrix& out, ComplexMatrix& scratch) {
    scratch.noalias() = h_total * rho;
    scratch *= -kImag;
    out = scratch + scratch.adjoint();
}

namespace {

// One RK4 step of the unnormalized linear flow, Hermitian fast path.
struct Rk4Workspace {
    ComplexMatrix k1, k2, k3, k4, stage, scratch;

    explicit Rk4Workspace(int d)
        : k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d), scratch(d, d) {}

    void step(ComplexMatrix& rho, const ComplexMatrix& h_total, double dt) {
        step_rhs_hermitian(rho, h_total, k1, scratch);
        stage = rho + (0.5 * dt) * k1;
        step_rhs_hermitian(stage, h_total, k2, scratch);
        stage = rho + (0.5 * dt) * k2;
        step_rhs_hermitian(stage, h_total, k3, scratch);
        stage = rho + dt * k3;
        step_rhs_hermitian(stage, h_total, k4, scratch);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

}  // namespace

void evolve(const StateVector& psi0, const SplitHamiltonian& h, const EvolutionConfig& cfg,
            const SampleObserver& on_sample) {
    cfg.validate();
    if (psi0.space.total_dim() != h.space.total_dim()) {
        throw std::invalid_argument("evolve: state and Hamiltonian live on different spaces");
    }

    const int d = psi0.space.total_dim();
    ComplexMatrix rho = psi0.amplitudes * psi0.amplitudes.adjoint();
    Complex raw_trace{1.0, 0.0};

    DensityMatrix sample{psi0.space, rho, raw_trace};
    on_sample(0.0, sample);

    Rk4Workspace ws(d);
    const long n_steps = static_cast<long>(std::llround(cfg.t_max / cfg.dt));
    for (long step = 1; step <= n_steps; ++step) {
        ws.step(rho, h.total, cfg.dt);

        const Complex tr = rho.trace();
        if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag())) {
            throw NumericError("evolve: non-finite state at step " + std::to_string(step));
        }
        if (std::abs(tr) < kTraceCollapse) {
            throw NumericError("evolve: trace collapsed below 1e-14 at step " +
                               std::to_string(step));
        }
        if (cfg.renormalize_each_step) {
            rho /= tr.real();
            raw_trace *= tr;
        } else {
            raw_trace = tr;
        }

        if (step % cfg.sample_stride == 0) {
            sample.rho = rho;
            sample.raw_trace = raw_trace;
            on_sample(static_cast<double>(step) * cfg.dt, sample);
        }
    }
}

TimeSeries evolve(const StateVector& psi0, const SplitHamiltonian& h,
                  const EvolutionConfig& cfg) {
    TimeSeries out;
    evolve(psi0, h, cfg, [&out](double t, const DensityMatrix& state) {
        out.times.push_back(t);
        out.states.push_back(state);
    });
    return out;
}

DensityMatrix exact_propagator(const StateVector& psi0, const SplitHamiltonian& h, double t) {
    if (psi0.space.total_dim() != h.space.total_dim()) {
        throw std::invalid_argument("exact_propagator: dimension mismatch");
    }
    const ComplexMatrix propagator = matrix_exponential((-kImag * t) * h.total);
    ComplexMatrix rho = propagator * (psi0.amplitudes * psi0.amplitudes.adjoint()) *
                        propagator.adjoint();
    const Complex tr = rho.trace();
    if (std::abs(tr) < kTraceCollapse) {
        throw NumericError("exact_propagator: trace collapsed");
    }
    rho /= tr.real();
    return DensityMatrix{psi0.space, std::move(rho), tr};
}

Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& q) {
    if (rho.rows() != q.rows()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    const Complex tr = rho.trace();
    if (tr == Complex{0.0, 0.0}) {
        throw NumericError("expectation: state has zero trace");
    }
    // tr(q rho) as an elementwise sum, no full product needed.
    const Complex num = q.cwiseProduct(rho.transpose()).sum();
    return num / tr;
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& q) {
    return expectation(rho.rho, q);
}

}  // namespace soliplasmon
