#ifndef SOLIPLASMON_FOCK_HPP
#define SOLIPLASMON_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace soliplasmon {

// Dense complex matrices carry every operator and state in this project.
// Dimensions stay small (a truncated two-mode space is at most a few
// hundred levels), so dense storage beats any sparse bookkeeping.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Two bosonic modes truncated to the lowest `cutoff` Fock levels each.
// Composite basis ordering puts mode a on the left tensor factor:
// |i_a, i_b> lives at index i_a * cutoff_b + i_b.
struct TwoModeSpace {
    int cutoff_a = 0;
    int cutoff_b = 0;

    TwoModeSpace(int ca, int cb);

    int total_dim() const { return cutoff_a * cutoff_b; }
    int index(int n_a, int n_b) const;
};

// Truncated single-mode annihilation operator: M[n, n+1] = sqrt(n+1).
ComplexMatrix annihilation(int cutoff);

// Adjoint of annihilation on the same truncated space.
ComplexMatrix creation(int cutoff);

// diag(0, 1, ..., cutoff-1).
ComplexMatrix number_operator(int cutoff);

// Kronecker product, left factor = mode a by project convention.
// Guards against runaway dimensions; the limit is generous for this
// problem class but finite.
inline constexpr std::int64_t kKronMaxDim = 1 << 20;
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise square root of a diagonal matrix with real, non-negative
// diagonal (both checked to tolerance 1e-12; tiny negative round-off is
// clamped to zero).
ComplexMatrix diag_sqrt(const ComplexMatrix& m);

// e^M via scaling-and-squaring with a Pade approximant. Rejects
// non-finite input and reports (throws NumericError) if the result is
// non-finite instead of returning garbage.
ComplexMatrix matrix_exponential(const ComplexMatrix& m);

// max_ij |M - M^dagger| <= tol, resp. |M + M^dagger| <= tol.
bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_anti_hermitian(const ComplexMatrix& m, double tol);

// Largest elementwise |difference|; convenience for tests and checks.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace soliplasmon

#endif
