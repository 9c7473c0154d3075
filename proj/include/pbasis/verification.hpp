#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pbasis/product_basis.hpp"

namespace pbasis {

/// G_ij = <a_i|a_j><b_i|b_j>
ComplexMatrix gram_matrix(const ProductBasis& basis);

struct OrthonormalityCheck {
    bool ok = false;
    double max_offdiag = 0.0;     // max_{i != j} |G_ij|
    double max_diag_error = 0.0;  // max_i |G_ii - 1|
    double max_deviation() const { return std::max(max_offdiag, max_diag_error); }
};

OrthonormalityCheck check_orthonormal(const ProductBasis& basis,
                                      double tol = num::kDefaultTolerances.orthonormality);

/// Q = I - sum_i |a_i b_i><a_i b_i|. Throws NonOrthonormalInput.
ComplexMatrix complement_projector(const ProductBasis& basis,
                                   double tol = num::kDefaultTolerances.orthonormality);

struct SeesawOptions {
    int restarts = 500;
    std::uint64_t seed = 0;
    double stop_tol = 1e-12;
    int iteration_cap = 10000;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct SeesawResult {
    double value = 0.0;
    ProductState witness;
    int restarts_used = 0;
    long long iterations_total = 0;
    int best_restart = -1;
};

/// Maximizes <a (x) b|Q|a (x) b> over unit product vectors by alternating
/// top-eigenvector updates of the two local factors, from `restarts`
/// seeded random starts. Restart r always uses stream (seed, r), and the
/// best restart is chosen by (value desc, index asc), so the result does
/// not depend on thread scheduling.
///
/// Q must be Hermitian with spectrum in [0, 1] (within 1e-8); otherwise
/// throws InvalidProjector.
SeesawResult seesaw_max_product_overlap(const ComplexMatrix& q, int dA, int dB,
                                        const SeesawOptions& options = {});

struct GridOracleResult {
    double value = 0.0;
    /// Lipschitz bound on (true max - value).
    double gap_bound = 0.0;
    ComplexVector best_a;
};

/// Brute-force lower bound on the product overlap for dA <= 2, dB <= 3.
/// The A factor runs over a `resolution` x `resolution` (theta, phi) grid
/// on the Bloch sphere; for each grid point the B factor is maximized in
/// closed form (largest eigenvalue of a <= 3x3 Hermitian matrix via the
/// characteristic polynomial), so no iterative solver is involved.
GridOracleResult grid_oracle_max_product_overlap(const ComplexMatrix& q, int dA, int dB,
                                                 int resolution = 64);

/// Largest eigenvalue of a Hermitian matrix of size 1, 2 or 3, closed form.
double closed_form_max_eigenvalue(const ComplexMatrix& m);

enum class Verdict { CompleteBasis, UPB_Numeric, Extendible, Inconclusive };

std::string_view to_string(Verdict v);

struct UpbConfig {
    SeesawOptions seesaw;
    double orthonormality_tol = num::kDefaultTolerances.orthonormality;
    /// Margin: UPB_Numeric iff max overlap < 1 - eta.
    double eta = 1e-3;
    /// Extendible iff max overlap >= 1 - extendible_tol.
    double extendible_tol = 1e-8;
};

struct VerificationReport {
    int dA = 0;
    int dB = 0;
    int num_states = 0;
    double gram_max_offdiag = 0.0;
    double gram_max_diag_error = 0.0;
    int span_rank = 0;
    int complement_dim = 0;
    double max_product_overlap = 0.0;
    std::optional<ProductState> witness_state;
    Verdict verdict = Verdict::Inconclusive;
    int restarts_used = 0;
    long long iterations_total = 0;
    std::uint64_t seed = 0;
    double eta = 0.0;
};

/// Orthonormality, rank, complement and see-saw search, in that order.
/// A complete basis short-circuits to CompleteBasis without any search.
/// Throws NonOrthonormalInput.
VerificationReport check_upb(const ProductBasis& basis, const UpbConfig& config = {});

struct SetMatch {
    bool equal = false;
    /// permutation[i] = index in the second basis matched to state i.
    std::vector<int> permutation;
    double min_overlap = 0.0;
};

/// Phase-insensitive set equality: greedy assignment on |<psi_i|phi_j>|
/// followed by the check |<psi_i|phi_pi(i)>| >= 1 - tol for every i.
/// Throws CountMismatch / DimensionMismatch.
SetMatch basis_set_equal_up_to_phase(const ProductBasis& first, const ProductBasis& second,
                                     double tol = 1e-9);

}  // namespace pbasis
