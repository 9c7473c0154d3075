#pragma once

#include <string_view>

#include "pbasis/product_basis.hpp"
#include "pbasis/verification.hpp"

namespace pbasis {

struct DensityMatrix {
    ComplexMatrix matrix;
    int dA = 0;
    int dB = 0;
};

/// Throws DimensionMismatch / NotHermitian / InvalidProjector when `rho`
/// is not a unit-trace positive semidefinite operator on C^dA (x) C^dB.
void validate_density(const DensityMatrix& rho, double tol = 1e-10);

/// rho = (I - P_S) / (dA*dB - |S|). Throws CompleteBasisInput when the
/// basis spans the whole space, NonOrthonormalInput on a bad basis.
DensityMatrix upb_density_state(const ProductBasis& basis);

struct PptResult {
    bool ppt = false;
    double min_pt_eigenvalue = 0.0;
};

PptResult is_ppt(const DensityMatrix& rho, double tol = 1e-10);

enum class RangeVerdict { EntangledRangeCriterion, Inconclusive };

std::string_view to_string(RangeVerdict v);

struct RangeCriterionReport {
    int range_rank = 0;
    double max_product_overlap = 0.0;
    ProductState witness;
    RangeVerdict verdict = RangeVerdict::Inconclusive;
};

struct RangeCriterionConfig {
    SeesawOptions seesaw;
    double eta = 1e-3;
    /// Eigenvalues above cutoff * lambda_max belong to the range.
    double cutoff = 1e-9;
};

/// Searches the range of rho for product states. None found (max overlap
/// with the range projector below 1 - eta) means rho is entangled.
/// Throws ZeroState when rho has no positive spectrum.
RangeCriterionReport range_criterion_report(const DensityMatrix& rho,
                                            const RangeCriterionConfig& config = {});

}  // namespace pbasis
