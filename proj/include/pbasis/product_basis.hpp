#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbasis/numkernel.hpp"

namespace pbasis {

using num::Complex;
using num::ComplexMatrix;
using num::ComplexVector;

/// A grid cell of the dA x dB square: column = A index, row = B index.
struct Cell {
    int col = 0;
    int row = 0;
    auto operator<=>(const Cell&) const = default;
};

/// |a> (x) |b>, kept as an explicit pair of local vectors.
struct ProductState {
    ComplexVector a;
    ComplexVector b;
    std::string label;
    std::optional<std::vector<Cell>> tile_cells;  // sorted when present

    ComplexVector joint() const { return num::kron(a, b); }
};

/// <x|y> for product states, computed factor by factor.
Complex overlap(const ProductState& x, const ProductState& y);

enum class Family { GenTiles1, GenTiles2, Cartesian, Custom };

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// Local subspaces H_A' and H_B', each stored as a matrix whose columns are
/// an orthonormal basis of the subspace.
struct SubspacePair {
    ComplexMatrix a_basis;
    ComplexMatrix b_basis;

    int dim_a() const { return static_cast<int>(a_basis.cols()); }
    int dim_b() const { return static_cast<int>(b_basis.cols()); }
    ComplexMatrix projector_a() const { return a_basis * a_basis.adjoint(); }
    ComplexMatrix projector_b() const { return b_basis * b_basis.adjoint(); }
};

/// A split plus local unitaries expressed in the split's own coordinates
/// (u_a is dim_a x dim_a, u_b is dim_b x dim_b).
struct WindingMove {
    SubspacePair split;
    ComplexMatrix u_a;
    ComplexMatrix u_b;
};

struct ProductBasis {
    int dA = 0;
    int dB = 0;
    std::vector<ProductState> states;
    Family family = Family::Custom;
    std::vector<WindingMove> provenance;

    int full_dim() const { return dA * dB; }
    int size() const { return static_cast<int>(states.size()); }
    bool is_complete() const { return size() == full_dim(); }

    std::vector<ComplexVector> joint_states() const;
    /// Throws DimensionMismatch if any local vector disagrees with (dA, dB).
    void check_dims() const;
};

}  // namespace pbasis
