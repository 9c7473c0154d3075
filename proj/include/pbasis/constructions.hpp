#pragma once

#include <vector>

#include "pbasis/product_basis.hpp"

namespace pbasis {

/// Unit vector of dimension `dim` with amplitude omega^(j*m)/sqrt(|support|)
/// at support[j] and zero elsewhere. Only the phase of `omega` is used.
/// Throws IndexOutOfRange on a bad or repeated support index.
ComplexVector fourier_local_state(int dim, const std::vector<int>& support, int m, Complex omega);

/// Tile UPB in n x n for even n >= 4: vertical tiles |k> (x) |w_{m,k+1}>,
/// horizontal tiles |w_{m,k}> (x) |k>, m = 1..n/2-1, k = 0..n-1, and the
/// uniform stopper. (n-1)^2 states in total.
ProductBasis gen_tiles1(int n);

/// Tile UPB in m x n for m >= 3, n > 3, n >= m: m short tiles, m(n-3)
/// long tiles and the uniform stopper. mn - 2m + 1 states in total.
ProductBasis gen_tiles2(int m, int n);

/// |i> (x) |j> in lexicographic order.
ProductBasis cartesian_basis(int dA, int dB);

/// Simultaneous cyclic shift |x> -> |x+s mod n> on both sides.
ProductBasis cyclic_shift_basis(const ProductBasis& basis, int s);

/// How the A/B interchange is composed with the unit shift.
enum class SwapShiftConvention {
    SwapThenShift,  // |x,y> -> |y-1, x>
    ShiftThenSwap,  // |x,y> -> |y, x-1>
};

/// The convention under which GenTiles1 is invariant.
inline constexpr SwapShiftConvention kDefaultSwapShift = SwapShiftConvention::SwapThenShift;

std::string_view to_string(SwapShiftConvention c);

/// Interchange A and B combined with a shift by one.
ProductBasis swap_shift_basis(const ProductBasis& basis,
                              SwapShiftConvention convention = kDefaultSwapShift);

/// Cells where |a_col * b_row| > threshold.
std::vector<Cell> support_cells(const ProductState& state, double threshold = 1e-12);

}  // namespace pbasis
