#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pbasis/errors.hpp"

/// Dense complex linear algebra used throughout the library. Vectors and
/// matrices are plain Eigen types; the functions here add the contracts
/// (tolerances, validation) the rest of the code relies on.
namespace pbasis::num {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Central tolerance record. Defaults are the ones every module assumes
/// unless a caller overrides them.
struct Tolerances {
    double orthonormality = 1e-10;
    double idempotence = 1e-10;
    double hermiticity = 1e-10;
    double eig_residual = 1e-8;
    double unit_norm = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

ComplexVector kron(const ComplexVector& u, const ComplexVector& v);
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

/// max_ij |M_ij|
double max_abs(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const ComplexMatrix& m);

/// Gram matrix G_ij = <v_i|v_j> of a list of vectors of common dimension.
ComplexMatrix gram(std::span<const ComplexVector> states);

/// P = sum_i |v_i><v_i|. Throws NonOrthonormalInput when the Gram matrix
/// deviates from the identity by more than `tol`.
ComplexMatrix projector_from_states(std::span<const ComplexVector> states,
                                    double tol = kDefaultTolerances.orthonormality);

struct EigenDecomposition {
    RealVector values;     // ascending
    ComplexMatrix vectors;  // column i pairs with values(i)
};

/// Hermitian eigendecomposition. Deterministic for a fixed input.
/// Throws NotHermitian when max|M - M^dagger| exceeds `tol` (scaled by
/// max(1, max|M|)).
EigenDecomposition hermitian_eig(const ComplexMatrix& m,
                                 double tol = kDefaultTolerances.hermiticity);

/// Transposes the second tensor factor: block (i,j) of size dB x dB is
/// replaced by its transpose.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int dA, int dB);

/// Orthonormal basis (as columns) of span{vectors}, using eigenvalues of
/// sum |v><v| above `cutoff`. Columns are ordered by descending weight.
ComplexMatrix orthonormal_span(std::span<const ComplexVector> vectors, double cutoff = 1e-8);

/// Multiplies by the unit phase that makes the first entry with magnitude
/// above `threshold` real and positive.
ComplexVector canonical_phase(const ComplexVector& v, double threshold = 1e-12);

}  // namespace pbasis::num
