#include "pbasis/numkernel.hpp"

#include <algorithm>
#include <cmath>

namespace pbasis {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::NonOrthonormalInput: return "NonOrthonormalInput";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::CountMismatch: return "CountMismatch";
        case ErrorCode::InvalidProjector: return "InvalidProjector";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::CompleteBasisInput: return "CompleteBasisInput";
        case ErrorCode::ZeroState: return "ZeroState";
        case ErrorCode::IncompleteBasis: return "IncompleteBasis";
        case ErrorCode::InvalidSplit: return "InvalidSplit";
        case ErrorCode::NoValidSplit: return "NoValidSplit";
        case ErrorCode::NoTileMetadata: return "NoTileMetadata";
        case ErrorCode::MalformedFile: return "MalformedFile";
    }
    return "UnknownError";
}

namespace num {

ComplexVector kron(const ComplexVector& u, const ComplexVector& v) {
    const Eigen::Index du = u.size();
    const Eigen::Index dv = v.size();
    ComplexVector out(du * dv);
    for (Eigen::Index i = 0; i < du; ++i) {
        out.segment(i * dv, dv) = u(i) * v;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
    return u * v.adjoint();
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "hermiticity check needs a square matrix");
    }
    return max_abs(m - m.adjoint());
}

ComplexMatrix gram(std::span<const ComplexVector> states) {
    const auto n = static_cast<Eigen::Index>(states.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (states[i].size() != states[j].size()) {
                throw Error(ErrorCode::DimensionMismatch, "states of different dimension");
            }
            g(i, j) = states[i].dot(states[j]);
        }
    }
    return g;
}

ComplexMatrix projector_from_states(std::span<const ComplexVector> states, double tol) {
    if (states.empty()) {
        throw Error(ErrorCode::NonOrthonormalInput, "empty state list has no common dimension");
    }
    const ComplexMatrix g = gram(states);
    const auto n = static_cast<Eigen::Index>(states.size());
    const double dev = max_abs(g - ComplexMatrix::Identity(n, n));
    if (dev > tol) {
        throw Error(ErrorCode::NonOrthonormalInput,
                    "Gram matrix deviates from identity by " + std::to_string(dev));
    }
    const Eigen::Index dim = states.front().size();
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (const auto& s : states) {
        p.noalias() += s * s.adjoint();
    }
    return p;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol) {
    const double scale = std::max(1.0, max_abs(m));
    const double defect = hermiticity_defect(m);
    if (defect > tol * scale) {
        throw Error(ErrorCode::NotHermitian,
                    "max|M - M^dagger| = " + std::to_string(defect));
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int dA, int dB) {
    if (dA < 1 || dB < 1 || m.rows() != Eigen::Index(dA) * dB || m.cols() != m.rows()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "partial transpose expects a (dA*dB) x (dA*dB) matrix");
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dA; ++i) {
        for (int j = 0; j < dA; ++j) {
            out.block(i * dB, j * dB, dB, dB) = m.block(i * dB, j * dB, dB, dB).transpose();
        }
    }
    return out;
}

ComplexMatrix orthonormal_span(std::span<const ComplexVector> vectors, double cutoff) {
    if (vectors.empty()) {
        return ComplexMatrix(0, 0);
    }
    const Eigen::Index dim = vectors.front().size();
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto& v : vectors) {
        acc.noalias() += v * v.adjoint();
    }
    const auto eig = hermitian_eig(acc);
    std::vector<ComplexVector> cols;
    for (Eigen::Index i = dim - 1; i >= 0; --i) {
        if (eig.values(i) > cutoff) {
            cols.push_back(canonical_phase(eig.vectors.col(i)));
        }
    }
    ComplexMatrix out(dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out.col(static_cast<Eigen::Index>(c)) = cols[c];
    }
    return out;
}

ComplexVector canonical_phase(const ComplexVector& v, double threshold) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > threshold) {
            return v * (std::conj(v(i)) / mag);
        }
    }
    return v;
}

}  // namespace num
}  // namespace pbasis
