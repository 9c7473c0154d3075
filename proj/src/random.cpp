#include "pbasis/random.hpp"

#include <cmath>

namespace pbasis::num {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t key = splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(seed)};
    return Rng(seq);
}

ComplexVector random_unit_vector(int dim, Rng& rng) {
    ComplexVector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
    const ComplexMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int i = 0; i < dim; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

ComplexMatrix random_projector(int dim, int rank, Rng& rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    const ComplexMatrix basis = u.leftCols(rank);
    return basis * basis.adjoint();
}

}  // namespace pbasis::num
