#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbasis/product_basis.hpp"

namespace pbasis::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kBadInput = 1,          // malformed file, non-orthonormal basis, missing tile metadata
    kInvalidDimension = 2,  // construct with parameters outside a family's range
    kExtendible = 3,
    kInconclusive = 4,      // verify: inconclusive verdict; unwind: nothing found within depth
    kNotAUpb = 5,           // boundent on a complete or extendible basis
    kIncompleteBasis = 6,   // wind / unwind on a basis that does not span the space
    kNoValidSplit = 7,      // wind ran out of proper splits
};

/// ASCII tile diagram: columns are A indices, rows are B indices, each cell
/// lists the tiles covering it; the stopper (a tile covering every cell) is
/// left out. Throws NoTileMetadata.
std::string render_tiles(const ProductBasis& basis);

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbasis::cli
