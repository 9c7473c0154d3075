#include "pbasis/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace pbasis {

namespace {

int mod(int x, int n) {
    const int r = x % n;
    return r < 0 ? r + n : r;
}

std::string tile_label(char kind, int first, int second) {
    return std::string(1, kind) + "[m=" + std::to_string(first) + ",k=" + std::to_string(second) + "]";
}

std::vector<Cell> column_cells(int col, const std::vector<int>& rows) {
    std::vector<Cell> cells;
    for (int r : rows) {
        cells.push_back({col, r});
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

std::vector<Cell> row_cells(const std::vector<int>& cols, int row) {
    std::vector<Cell> cells;
    for (int c : cols) {
        cells.push_back({c, row});
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

std::vector<Cell> all_cells(int dA, int dB) {
    std::vector<Cell> cells;
    for (int c = 0; c < dA; ++c) {
        for (int r = 0; r < dB; ++r) {
            cells.push_back({c, r});
        }
    }
    return cells;
}

ComplexVector basis_vector(int dim, int index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

ComplexVector uniform_vector(int dim) {
    return ComplexVector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));
}

ComplexVector shift_vector(const ComplexVector& v, int s) {
    const int n = static_cast<int>(v.size());
    ComplexVector out(n);
    for (int x = 0; x < n; ++x) {
        out(mod(x + s, n)) = v(x);
    }
    return out;
}

}  // namespace

ComplexVector fourier_local_state(int dim, const std::vector<int>& support, int m, Complex omega) {
    if (dim < 1) {
        throw Error(ErrorCode::InvalidDimension, "dimension must be positive");
    }
    if (support.empty()) {
        throw Error(ErrorCode::IndexOutOfRange, "support must be nonempty");
    }
    std::set<int> seen;
    for (int idx : support) {
        if (idx < 0 || idx >= dim || !seen.insert(idx).second) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "support index " + std::to_string(idx) + " invalid for dimension " +
                            std::to_string(dim));
        }
    }
    const double phase = std::arg(omega);
    const double norm = 1.0 / std::sqrt(double(support.size()));
    ComplexVector v = ComplexVector::Zero(dim);
    for (std::size_t j = 0; j < support.size(); ++j) {
        const long long power = static_cast<long long>(j) * m;
        v(support[j]) = (power == 0) ? Complex(norm, 0.0) : std::polar(norm, phase * double(power));
    }
    return v;
}

ProductBasis gen_tiles1(int n) {
    if (n < 4 || n % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension,
                    "GenTiles1 requires even n >= 4 (got n=" + std::to_string(n) + ")");
    }
    const int half = n / 2;
    const Complex omega = std::polar(1.0, 4.0 * std::numbers::pi / n);
    // |w_{m,k}> = normalized sum_{j<n/2} omega^{jm} |j+k mod n>
    auto window = [&](int k) {
        std::vector<int> idx;
        for (int j = 0; j < half; ++j) {
            idx.push_back(mod(j + k, n));
        }
        return idx;
    };

    ProductBasis basis;
    basis.dA = n;
    basis.dB = n;
    basis.family = Family::GenTiles1;
    for (int m = 1; m < half; ++m) {
        for (int k = 0; k < n; ++k) {
            const auto rows = window(k + 1);
            basis.states.push_back({basis_vector(n, k), fourier_local_state(n, rows, m, omega),
                                    tile_label('V', m, k), column_cells(k, rows)});
        }
    }
    for (int m = 1; m < half; ++m) {
        for (int k = 0; k < n; ++k) {
            const auto cols = window(k);
            basis.states.push_back({fourier_local_state(n, cols, m, omega), basis_vector(n, k),
                                    tile_label('H', m, k), row_cells(cols, k)});
        }
    }
    basis.states.push_back({uniform_vector(n), uniform_vector(n), "F", all_cells(n, n)});
    return basis;
}

ProductBasis gen_tiles2(int m, int n) {
    if (m < 3 || n <= 3 || n < m) {
        throw Error(ErrorCode::InvalidDimension,
                    "GenTiles2 requires m >= 3, n > 3, n >= m (got m=" + std::to_string(m) +
                        ", n=" + std::to_string(n) + ")");
    }
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / (n - 2));
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    ProductBasis basis;
    basis.dA = m;
    basis.dB = n;
    basis.family = Family::GenTiles2;
    for (int j = 0; j < m; ++j) {
        ComplexVector a = ComplexVector::Zero(m);
        a(j) += inv_sqrt2;
        a(mod(j + 1, m)) -= inv_sqrt2;
        std::vector<Cell> cells{{j, j}, {mod(j + 1, m), j}};
        std::sort(cells.begin(), cells.end());
        basis.states.push_back({a, basis_vector(n, j), "S[" + std::to_string(j) + "]", cells});
    }
    for (int j = 0; j < m; ++j) {
        // Position i of the long tile in column j sits on row i+j+1 mod m for
        // i <= m-3, and on row i+2 for i >= m-2.
        std::vector<int> rows;
        for (int i = 0; i <= m - 3; ++i) {
            rows.push_back(mod(i + j + 1, m));
        }
        for (int i = m - 2; i <= n - 3; ++i) {
            rows.push_back(i + 2);
        }
        for (int k = 1; k <= n - 3; ++k) {
            basis.states.push_back({basis_vector(m, j), fourier_local_state(n, rows, k, omega),
                                    "L[" + std::to_string(j) + "," + std::to_string(k) + "]",
                                    column_cells(j, rows)});
        }
    }
    basis.states.push_back({uniform_vector(m), uniform_vector(n), "F", all_cells(m, n)});
    return basis;
}

ProductBasis cartesian_basis(int dA, int dB) {
    if (dA < 1 || dB < 1) {
        throw Error(ErrorCode::InvalidDimension, "Cartesian basis needs dA, dB >= 1");
    }
    ProductBasis basis;
    basis.dA = dA;
    basis.dB = dB;
    basis.family = Family::Cartesian;
    for (int i = 0; i < dA; ++i) {
        for (int j = 0; j < dB; ++j) {
            basis.states.push_back({basis_vector(dA, i), basis_vector(dB, j),
                                    "C[" + std::to_string(i) + "," + std::to_string(j) + "]",
                                    std::nullopt});
        }
    }
    return basis;
}

ProductBasis cyclic_shift_basis(const ProductBasis& basis, int s) {
    if (basis.dA != basis.dB) {
        throw Error(ErrorCode::DimensionMismatch, "cyclic shift needs dA == dB");
    }
    const int n = basis.dA;
    ProductBasis out = basis;
    for (auto& st : out.states) {
        st.a = shift_vector(st.a, s);
        st.b = shift_vector(st.b, s);
        if (st.tile_cells) {
            for (auto& c : *st.tile_cells) {
                c = {mod(c.col + s, n), mod(c.row + s, n)};
            }
            std::sort(st.tile_cells->begin(), st.tile_cells->end());
        }
    }
    return out;
}

std::string_view to_string(SwapShiftConvention c) {
    switch (c) {
        case SwapShiftConvention::SwapThenShift: return "swap-then-shift: |x,y> -> |y-1,x>";
        case SwapShiftConvention::ShiftThenSwap: return "shift-then-swap: |x,y> -> |y,x-1>";
    }
    return "";
}

ProductBasis swap_shift_basis(const ProductBasis& basis, SwapShiftConvention convention) {
    if (basis.dA != basis.dB) {
        throw Error(ErrorCode::DimensionMismatch, "swap-shift needs dA == dB");
    }
    const int n = basis.dA;
    const bool shift_new_a = convention == SwapShiftConvention::SwapThenShift;
    ProductBasis out = basis;
    for (auto& st : out.states) {
        ComplexVector new_a = st.b;
        ComplexVector new_b = st.a;
        if (shift_new_a) {
            new_a = shift_vector(new_a, -1);
        } else {
            new_b = shift_vector(new_b, -1);
        }
        st.a = std::move(new_a);
        st.b = std::move(new_b);
        if (st.tile_cells) {
            for (auto& c : *st.tile_cells) {
                c = shift_new_a ? Cell{mod(c.row - 1, n), c.col} : Cell{c.row, mod(c.col - 1, n)};
            }
            std::sort(st.tile_cells->begin(), st.tile_cells->end());
        }
    }
    return out;
}

std::vector<Cell> support_cells(const ProductState& state, double threshold) {
    std::vector<Cell> cells;
    for (int c = 0; c < state.a.size(); ++c) {
        for (int r = 0; r < state.b.size(); ++r) {
            if (std::abs(state.a(c) * state.b(r)) > threshold) {
                cells.push_back({c, r});
            }
        }
    }
    return cells;
}

}  // namespace pbasis
