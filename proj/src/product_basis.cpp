#include "pbasis/product_basis.hpp"

namespace pbasis {

Complex overlap(const ProductState& x, const ProductState& y) {
    return x.a.dot(y.a) * x.b.dot(y.b);
}

std::string_view to_string(Family f) {
    switch (f) {
        case Family::GenTiles1: return "GenTiles1";
        case Family::GenTiles2: return "GenTiles2";
        case Family::Cartesian: return "Cartesian";
        case Family::Custom: return "Custom";
    }
    return "Custom";
}

std::optional<Family> family_from_string(std::string_view s) {
    for (auto f : {Family::GenTiles1, Family::GenTiles2, Family::Cartesian, Family::Custom}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    return std::nullopt;
}

std::vector<ComplexVector> ProductBasis::joint_states() const {
    std::vector<ComplexVector> out;
    out.reserve(states.size());
    for (const auto& s : states) {
        out.push_back(s.joint());
    }
    return out;
}

void ProductBasis::check_dims() const {
    if (dA < 1 || dB < 1) {
        throw Error(ErrorCode::DimensionMismatch, "local dimensions must be positive");
    }
    for (const auto& s : states) {
        if (s.a.size() != dA || s.b.size() != dB) {
            throw Error(ErrorCode::DimensionMismatch,
                        "state '" + s.label + "' does not match declared dimensions");
        }
    }
}

}  // namespace pbasis
