#include "pbasis/boundent.hpp"

#include <cmath>

namespace pbasis {

void validate_density(const DensityMatrix& rho, double tol) {
    const Eigen::Index d = Eigen::Index(rho.dA) * rho.dB;
    if (rho.dA < 1 || rho.dB < 1 || rho.matrix.rows() != d || rho.matrix.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix size does not match dA*dB");
    }
    const auto eig = num::hermitian_eig(rho.matrix, tol);
    if (std::abs(rho.matrix.trace() - 1.0) > tol) {
        throw Error(ErrorCode::InvalidProjector, "trace differs from 1");
    }
    if (eig.values(0) < -tol) {
        throw Error(ErrorCode::InvalidProjector, "negative eigenvalue " + std::to_string(eig.values(0)));
    }
}

DensityMatrix upb_density_state(const ProductBasis& basis) {
    const ComplexMatrix q = complement_projector(basis);
    const int rank = basis.full_dim() - basis.size();
    if (rank <= 0) {
        throw Error(ErrorCode::CompleteBasisInput, "basis spans the full space; complement is empty");
    }
    return {q / double(rank), basis.dA, basis.dB};
}

PptResult is_ppt(const DensityMatrix& rho, double tol) {
    const auto eig = num::hermitian_eig(num::partial_transpose(rho.matrix, rho.dA, rho.dB));
    PptResult out;
    out.min_pt_eigenvalue = eig.values(0);
    out.ppt = out.min_pt_eigenvalue >= -tol;
    return out;
}

std::string_view to_string(RangeVerdict v) {
    switch (v) {
        case RangeVerdict::EntangledRangeCriterion: return "entangled (range criterion)";
        case RangeVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

RangeCriterionReport range_criterion_report(const DensityMatrix& rho,
                                            const RangeCriterionConfig& config) {
    const auto eig = num::hermitian_eig(rho.matrix);
    const Eigen::Index d = eig.values.size();
    const double top = d > 0 ? eig.values(d - 1) : 0.0;
    if (!(top > 0.0)) {
        throw Error(ErrorCode::ZeroState, "density matrix has no positive eigenvalue");
    }
    const double cutoff = config.cutoff * top;
    ComplexMatrix range = ComplexMatrix::Zero(d, d);
    RangeCriterionReport out;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (eig.values(i) > cutoff) {
            range.noalias() += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
            ++out.range_rank;
        }
    }
    const auto search = seesaw_max_product_overlap(range, rho.dA, rho.dB, config.seesaw);
    out.max_product_overlap = search.value;
    out.witness = search.witness;
    out.verdict = search.value < 1.0 - config.eta ? RangeVerdict::EntangledRangeCriterion
                                                  : RangeVerdict::Inconclusive;
    return out;
}

}  // namespace pbasis
