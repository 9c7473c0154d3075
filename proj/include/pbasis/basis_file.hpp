#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "pbasis/boundent.hpp"
#include "pbasis/product_basis.hpp"
#include "pbasis/verification.hpp"

namespace pbasis::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Complex numbers are [re, im] pairs; vectors are lists of pairs; matrices
/// are lists of rows. Doubles are written as the shortest decimal string
/// that parses back to the same bit pattern.
json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json basis_to_json(const ProductBasis& basis);
/// Throws Error(MalformedFile) on any schema violation.
ProductBasis basis_from_json(const json& j);

void save_basis(const ProductBasis& basis, const std::filesystem::path& path);
ProductBasis load_basis(const std::filesystem::path& path);

json state_to_json(const ProductState& state);
json report_to_json(const VerificationReport& report);

json density_to_json(const DensityMatrix& rho);

}  // namespace pbasis::io
