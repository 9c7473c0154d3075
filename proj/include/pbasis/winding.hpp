#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pbasis/product_basis.hpp"

namespace pbasis {

enum class Placement { Inside, Outside, Unclassified };

struct SplitValidation {
    bool valid = false;
    /// false for the (full, full) split, which is a global local-unitary rotation.
    bool proper = false;
    std::vector<Placement> placement;
    int inside_count = 0;
};

/// Classifies each state of a complete orthonormal product basis as INSIDE
/// H_A' (x) H_B' (both factors in their subspaces, residual <= 1e-10) or
/// OUTSIDE it (<a|P_A'|a><b|P_B'|b> <= 1e-20). The split is valid iff every
/// state is classified. Throws IncompleteBasis, NonOrthonormalInput,
/// InvalidSplit (malformed subspace bases).
SplitValidation validate_split(const ProductBasis& basis, const SubspacePair& split);

/// INSIDE states (a, b) -> (U_A a, U_B b) where U acts as u on the subspace
/// and as the identity on its complement; OUTSIDE states are untouched.
/// The move is appended to the result's provenance. Throws InvalidSplit
/// for an invalid split or non-unitary u_a / u_b.
ProductBasis apply_winding_move(const ProductBasis& basis, const WindingMove& move);

WindingMove inverse_move(const WindingMove& move);

/// Same split and unitaries of the right sizes set to the identity.
WindingMove identity_move(const SubspacePair& split);

/// True iff the A factors fall into exactly dA mutually orthogonal rays,
/// the B factors into dB, and (A ray, B ray) hits every grid cell once.
/// Throws IncompleteBasis.
bool is_cartesian(const ProductBasis& basis, double tol = 1e-8);

/// Proper splits found from the connected components of the
/// non-orthogonality graphs of A rays and B rays (one side full), plus
/// products of such candidates; only validated splits, deduplicated by
/// projector equality. Throws IncompleteBasis.
std::vector<SubspacePair> enumerate_splits(const ProductBasis& basis);

/// Moves on `split` that bring its INSIDE block into alignment with the
/// rays of the OUTSIDE states (or leave a side fixed). Empty when the block
/// is not itself a rotated grid.
std::vector<WindingMove> alignment_moves(const ProductBasis& basis, const SubspacePair& split);

/// Depth-bounded search for moves that turn `basis` into a Cartesian
/// basis. A returned sequence has been re-applied to the input and checked;
/// nullopt only means nothing was found within `max_depth`.
/// Throws IncompleteBasis.
std::optional<std::vector<WindingMove>> unwind(const ProductBasis& basis, int max_depth);

/// Applies `moves` in order.
ProductBasis apply_moves(const ProductBasis& basis, const std::vector<WindingMove>& moves);

/// The reversed list of inverse moves.
std::vector<WindingMove> inverse_sequence(const std::vector<WindingMove>& moves);

struct WoundBasis {
    ProductBasis basis;
    std::vector<WindingMove> moves;
};

class NoValidSplitError : public Error {
public:
    NoValidSplitError(const std::string& what, WoundBasis partial)
        : Error(ErrorCode::NoValidSplit, what), partial_(std::move(partial)) {}

    const WoundBasis& partial() const noexcept { return partial_; }

private:
    WoundBasis partial_;
};

/// Applies k moves to `start`. Move t draws from stream (seed, t): a split
/// uniformly from enumerate_splits of the current basis, then Haar
/// unitaries on both subspaces. Throws NoValidSplitError carrying the moves
/// applied so far.
WoundBasis wind_basis(const ProductBasis& start, int k_moves, std::uint64_t seed);

/// wind_basis starting from cartesian_basis(dA, dB).
WoundBasis random_wound_basis(int dA, int dB, int k_moves, std::uint64_t seed);

}  // namespace pbasis
