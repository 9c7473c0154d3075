#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pbasis/constructions.hpp"
#include "pbasis/numkernel.hpp"
#include "pbasis/random.hpp"

using namespace pbasis;
using namespace pbasis::num;

namespace {

ComplexVector basis_vec(int dim, int i) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1.0;
    return v;
}

ComplexMatrix random_hermitian(int dim, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return m + m.adjoint();
}

ComplexMatrix random_square(int dim, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

}  // namespace

TEST(Kron, BasisVectorProduct) {
    const ComplexVector v = kron(basis_vec(2, 0), basis_vec(2, 1));
    ASSERT_EQ(v.size(), 4);
    EXPECT_EQ(v(0), Complex(0));
    EXPECT_EQ(v(1), Complex(1));
    EXPECT_EQ(v(2), Complex(0));
    EXPECT_EQ(v(3), Complex(0));
}

TEST(Kron, DimensionLawAndEntryLayout) {
    auto rng = make_stream(11, 0);
    const ComplexVector u = random_unit_vector(2, rng);
    const ComplexVector v = random_unit_vector(3, rng);
    const ComplexVector w = kron(u, v);
    ASSERT_EQ(w.size(), 6);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(w(i * 3 + j), u(i) * v(j));
        }
    }
}

TEST(Kron, NormMultiplicativeAndAssociative) {
    auto rng = make_stream(12, 0);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
        ComplexVector u = random_unit_vector(3, rng) * std::abs(normal(rng));
        ComplexVector v = random_unit_vector(4, rng) * std::abs(normal(rng));
        ComplexVector w = random_unit_vector(2, rng);
        EXPECT_NEAR(kron(u, v).norm(), u.norm() * v.norm(), 1e-12);
        EXPECT_LE(max_abs(kron(kron(u, v), w) - kron(u, kron(v, w))), 1e-12);
    }
}

TEST(ProjectorFromStates, RankOneAndFullBasis) {
    const ComplexVector psi = ComplexVector::Constant(3, Complex(1.0 / std::sqrt(3.0)));
    const std::vector<ComplexVector> one{psi};
    const ComplexMatrix p = projector_from_states(one);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);

    std::vector<ComplexVector> full;
    for (int i = 0; i < 5; ++i) {
        full.push_back(basis_vec(5, i));
    }
    EXPECT_LE(max_abs(projector_from_states(full) - ComplexMatrix::Identity(5, 5)), 0.0);
}

TEST(ProjectorFromStates, GenTiles1SixHasTrace25) {
    const auto states = gen_tiles1(6).joint_states();
    const ComplexMatrix p = projector_from_states(states);
    EXPECT_NEAR(p.trace().real(), 25.0, 1e-9);
    EXPECT_LE(max_abs(p * p - p), 1e-10);
    EXPECT_LE(hermiticity_defect(p), 1e-12);
    const auto eig = hermitian_eig(p);
    EXPECT_GE(eig.values.minCoeff(), -1e-8);
    EXPECT_LE(eig.values.maxCoeff(), 1.0 + 1e-8);
}

TEST(ProjectorFromStates, RejectsNonOrthonormal) {
    const std::vector<ComplexVector> dup{basis_vec(2, 0), basis_vec(2, 0)};
    try {
        projector_from_states(dup);
        FAIL() << "expected NonOrthonormalInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonOrthonormalInput);
    }
}

TEST(HermitianEig, DiagonalCases) {
    auto e = hermitian_eig(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(e.values(i), 1.0, 1e-14);
    }
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    e = hermitian_eig(d);
    EXPECT_NEAR(e.values(0), -1.0, 1e-14);
    EXPECT_NEAR(e.values(1), 0.0, 1e-14);
    EXPECT_NEAR(e.values(2), 2.0, 1e-14);
}

TEST(HermitianEig, RandomResidualReconstructionAndTrace) {
    auto rng = make_stream(21, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 1 + trial % 9;
        const ComplexMatrix m = random_hermitian(dim, rng);
        const auto e = hermitian_eig(m);
        const double scale = std::max(1.0, m.operatorNorm());
        for (int i = 0; i < dim; ++i) {
            EXPECT_LE((m * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm(), 1e-8 * scale);
            if (i > 0) {
                EXPECT_LE(e.values(i - 1), e.values(i));
            }
        }
        EXPECT_LE(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(dim, dim)), 1e-8);
        ComplexMatrix rebuilt = ComplexMatrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            rebuilt += e.values(i) * e.vectors.col(i) * e.vectors.col(i).adjoint();
        }
        EXPECT_LE(max_abs(rebuilt - m), 1e-8 * scale);
        EXPECT_NEAR(e.values.sum(), m.trace().real(), 1e-8 * dim);
    }
}

TEST(HermitianEig, DeterministicForFixedInput) {
    auto rng = make_stream(22, 0);
    const ComplexMatrix m = random_hermitian(6, rng);
    const auto a = hermitian_eig(m);
    const auto b = hermitian_eig(m);
    EXPECT_TRUE(a.values == b.values);
    EXPECT_TRUE(a.vectors == b.vectors);
}

TEST(HermitianEig, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        hermitian_eig(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(PartialTranspose, ProductOperators) {
    auto rng = make_stream(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix ra = random_square(2 + trial % 2, rng);
        const ComplexMatrix rb = random_square(2 + trial % 3, rng);
        const ComplexMatrix lhs = partial_transpose(kron(ra, rb), int(ra.rows()), int(rb.rows()));
        EXPECT_LE(max_abs(lhs - kron(ra, ComplexMatrix(rb.transpose()))), 1e-12);
    }
}

TEST(PartialTranspose, InvolutionIsBitExactAndTracePreserving) {
    auto rng = make_stream(32, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = random_square(6, rng);
        const ComplexMatrix pt = partial_transpose(m, 2, 3);
        EXPECT_TRUE(partial_transpose(pt, 2, 3) == m);
        EXPECT_EQ(pt.trace(), m.trace());
    }
}

TEST(PartialTranspose, MaximallyEntangledSpectrum) {
    // Oracle: PT(|Phi+><Phi+|) = SWAP / 2, whose eigenvectors are the
    // singlet (eigenvalue -1/2) and the three triplet states (+1/2).
    ComplexVector phi = ComplexVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix pt = partial_transpose(phi * phi.adjoint(), 2, 2);

    const double s = 1.0 / std::sqrt(2.0);
    ComplexVector singlet = ComplexVector::Zero(4);
    singlet(1) = s;
    singlet(2) = -s;
    std::vector<ComplexVector> triplet(3, ComplexVector::Zero(4));
    triplet[0](0) = 1.0;
    triplet[1](3) = 1.0;
    triplet[2](1) = triplet[2](2) = s;
    EXPECT_LE((pt * singlet + 0.5 * singlet).norm(), 1e-15);
    for (const auto& t : triplet) {
        EXPECT_LE((pt * t - 0.5 * t).norm(), 1e-15);
    }

    const auto e = hermitian_eig(pt);
    EXPECT_NEAR(e.values(0), -0.5, 1e-12);
    EXPECT_NEAR(e.values(1), 0.5, 1e-12);
    EXPECT_NEAR(e.values(2), 0.5, 1e-12);
    EXPECT_NEAR(e.values(3), 0.5, 1e-12);
}

TEST(PartialTranspose, RejectsWrongSize) {
    try {
        partial_transpose(ComplexMatrix::Identity(5, 5), 2, 2);
        FAIL() << "expected DimensionMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Random, StreamsAreReproducibleAndHaarIsUnitary) {
    auto r1 = make_stream(5, 3);
    auto r2 = make_stream(5, 3);
    const ComplexMatrix u1 = haar_unitary(4, r1);
    const ComplexMatrix u2 = haar_unitary(4, r2);
    EXPECT_TRUE(u1 == u2);
    EXPECT_LE(max_abs(u1.adjoint() * u1 - ComplexMatrix::Identity(4, 4)), 1e-12);
    auto r3 = make_stream(5, 4);
    EXPECT_GT(max_abs(haar_unitary(4, r3) - u1), 1e-3);
}

TEST(OrthonormalSpan, SpansTheInputs) {
    std::vector<ComplexVector> vs{basis_vec(3, 0), ComplexVector::Constant(3, 1.0).normalized() };
    const ComplexMatrix span = orthonormal_span(vs);
    ASSERT_EQ(span.cols(), 2);
    for (const auto& v : vs) {
        EXPECT_LE((v - span * (span.adjoint() * v)).norm(), 1e-12);
    }
}
