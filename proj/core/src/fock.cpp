#include "soliplasmon/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>

#include "soliplasmon/errors.hpp"

namespace soliplasmon {

TwoModeSpace::TwoModeSpace(int ca, int cb) : cutoff_a(ca), cutoff_b(cb) {
    if (ca < 1 || cb < 1) {
        throw std::invalid_argument("TwoModeSpace: cutoffs must be >= 1");
    }
}

int TwoModeSpace::index(int n_a, int n_b) const {
    if (n_a < 0 || n_a >= cutoff_a || n_b < 0 || n_b >= cutoff_b) {
        throw std::out_of_range("TwoModeSpace::index: Fock level outside truncation");
    }
    return n_a * cutoff_b + n_b;
}

ComplexMatrix annihilation(int cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("annihilation: cutoff must be >= 1");
    }
    ComplexMatrix m = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) {
        m(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    return m;
}

ComplexMatrix creation(int cutoff) { return annihilation(cutoff).adjoint(); }

ComplexMatrix number_operator(int cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("number_operator: cutoff must be >= 1");
    }
    ComplexMatrix m = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) m(n, n) = static_cast<double>(n);
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::int64_t da = a.rows();
    const std::int64_t db = b.rows();
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw std::invalid_argument("kron: inputs must be square");
    }
    if (da * db > kKronMaxDim) {
        throw std::invalid_argument("kron: product dimension " + std::to_string(da * db) +
                                    " exceeds limit " + std::to_string(kKronMaxDim));
    }
    ComplexMatrix out(da * db, da * db);
    for (std::int64_t i = 0; i < da; ++i) {
        for (std::int64_t j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix diag_sqrt(const ComplexMatrix& m) {
    constexpr double tol = 1e-12;
    const int d = static_cast<int>(m.rows());
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("diag_sqrt: input must be square");
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i != j && std::abs(m(i, j)) > tol) {
                throw std::invalid_argument("diag_sqrt: input is not diagonal");
            }
        }
    }
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const Complex z = m(i, i);
        if (std::abs(z.imag()) > tol || z.real() < -tol) {
            throw std::invalid_argument("diag_sqrt: diagonal must be real and non-negative");
        }
        out(i, i) = std::sqrt(std::max(z.real(), 0.0));
    }
    return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_exponential: input must be square");
    }
    if (!m.allFinite()) {
        throw NumericError("matrix_exponential: input has non-finite entries");
    }
    ComplexMatrix out = m.exp();
    if (!out.allFinite()) {
        throw NumericError("matrix_exponential: approximation did not converge");
    }
    return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_anti_hermitian(const ComplexMatrix& m, double tol) {
    return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace soliplasmon
