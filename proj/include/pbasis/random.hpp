#pragma once

#include <cstdint>
#include <random>

#include "pbasis/numkernel.hpp"

namespace pbasis::num {

using Rng = std::mt19937_64;

/// Independent generator for the pair (seed, counter). Streams for
/// different counters are decorrelated through a SplitMix64 key schedule,
/// so restart i of a run never depends on how many draws restart i-1 made.
Rng make_stream(std::uint64_t seed, std::uint64_t counter);

/// Entries i.i.d. standard complex normal, then normalized. The resulting
/// distribution is invariant under unitary rotations.
ComplexVector random_unit_vector(int dim, Rng& rng);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// diagonal phases of R folded back into Q.
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// Orthogonal projector onto a Haar-random subspace of the given rank.
ComplexMatrix random_projector(int dim, int rank, Rng& rng);

}  // namespace pbasis::num
