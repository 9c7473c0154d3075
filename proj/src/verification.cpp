#include "pbasis/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "pbasis/random.hpp"

namespace pbasis {

ComplexMatrix gram_matrix(const ProductBasis& basis) {
    basis.check_dims();
    const int n = basis.size();
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = overlap(basis.states[i], basis.states[j]);
        }
    }
    return g;
}

OrthonormalityCheck check_orthonormal(const ProductBasis& basis, double tol) {
    const ComplexMatrix g = gram_matrix(basis);
    OrthonormalityCheck out;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (i == j) {
                out.max_diag_error = std::max(out.max_diag_error, std::abs(g(i, i) - 1.0));
            } else {
                out.max_offdiag = std::max(out.max_offdiag, std::abs(g(i, j)));
            }
        }
    }
    out.ok = out.max_deviation() <= tol;
    return out;
}

ComplexMatrix complement_projector(const ProductBasis& basis, double tol) {
    const auto check = check_orthonormal(basis, tol);
    if (!check.ok) {
        throw Error(ErrorCode::NonOrthonormalInput,
                    "max|G - I| = " + std::to_string(check.max_deviation()));
    }
    const int d = basis.full_dim();
    const auto joint = basis.joint_states();
    return ComplexMatrix::Identity(d, d) - num::projector_from_states(joint, tol);
}

namespace {

// Top eigenvector, ties broken towards the lexicographically largest real
// parts after fixing each candidate's phase.
std::pair<double, ComplexVector> top_eigenpair(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    const auto& values = solver.eigenvalues();
    const Eigen::Index last = values.size() - 1;
    const double top = values(last);
    const double tie = 1e-12 * std::max(1.0, std::abs(top));
    ComplexVector best = num::canonical_phase(solver.eigenvectors().col(last));
    for (Eigen::Index i = last - 1; i >= 0 && values(i) >= top - tie; --i) {
        ComplexVector cand = num::canonical_phase(solver.eigenvectors().col(i));
        for (Eigen::Index k = 0; k < cand.size(); ++k) {
            const double diff = cand(k).real() - best(k).real();
            if (std::abs(diff) > 1e-12) {
                if (diff > 0) {
                    best = cand;
                }
                break;
            }
        }
    }
    return {top, best};
}

// (I (x) <b|) Q (I (x) |b>)
ComplexMatrix reduce_on_b(const ComplexMatrix& q, const ComplexVector& b, int dA, int dB) {
    ComplexMatrix m(dA, dA);
    for (int j = 0; j < dA; ++j) {
        const ComplexVector col = q.middleCols(j * dB, dB) * b;
        for (int i = 0; i < dA; ++i) {
            m(i, j) = b.dot(col.segment(i * dB, dB));
        }
    }
    return 0.5 * (m + m.adjoint());
}

// (<a| (x) I) Q (|a> (x) I)
ComplexMatrix reduce_on_a(const ComplexMatrix& q, const ComplexVector& a, int dA, int dB) {
    const Eigen::Index d = q.rows();
    ComplexMatrix w = ComplexMatrix::Zero(d, dB);
    for (int j = 0; j < dA; ++j) {
        w.noalias() += a(j) * q.middleCols(j * dB, dB);
    }
    ComplexMatrix m = ComplexMatrix::Zero(dB, dB);
    for (int i = 0; i < dA; ++i) {
        m.noalias() += std::conj(a(i)) * w.middleRows(i * dB, dB);
    }
    return 0.5 * (m + m.adjoint());
}

struct RestartOutcome {
    double value = -1.0;
    ComplexVector a;
    ComplexVector b;
    long long iterations = 0;
};

RestartOutcome run_restart(const ComplexMatrix& q, int dA, int dB, const SeesawOptions& opt,
                           int restart) {
    auto rng = num::make_stream(opt.seed, static_cast<std::uint64_t>(restart));
    RestartOutcome out;
    out.a = num::random_unit_vector(dA, rng);
    out.b = num::random_unit_vector(dB, rng);
    const ComplexVector psi = num::kron(out.a, out.b);
    double value = psi.dot(q * psi).real();
    for (int it = 0; it < opt.iteration_cap; ++it) {
        auto [va, a] = top_eigenpair(reduce_on_b(q, out.b, dA, dB));
        auto [vb, b] = top_eigenpair(reduce_on_a(q, a, dA, dB));
        ++out.iterations;
        if (va < value - 1e-12 || vb < va - 1e-12) {
            throw std::logic_error("see-saw objective decreased");
        }
        out.a = std::move(a);
        out.b = std::move(b);
        const double improvement = vb - value;
        value = vb;
        if (improvement < opt.stop_tol) {
            break;
        }
    }
    out.value = value;
    return out;
}

void check_projector_like(const ComplexMatrix& q, int dA, int dB) {
    if (dA < 1 || dB < 1 || q.rows() != Eigen::Index(dA) * dB || q.cols() != q.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match dA*dB");
    }
    if (num::hermiticity_defect(q) > 1e-10) {
        throw Error(ErrorCode::InvalidProjector, "operator is not Hermitian");
    }
    const auto eig = num::hermitian_eig(q);
    if (eig.values(0) < -1e-8 || eig.values(eig.values.size() - 1) > 1.0 + 1e-8) {
        throw Error(ErrorCode::InvalidProjector, "spectrum outside [0, 1]");
    }
}

}  // namespace

SeesawResult seesaw_max_product_overlap(const ComplexMatrix& q, int dA, int dB,
                                        const SeesawOptions& options) {
    check_projector_like(q, dA, dB);
    const int restarts = std::max(1, options.restarts);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(restarts));
    if (threads == 1) {
        for (int r = 0; r < restarts; ++r) {
            outcomes[r] = run_restart(q, dA, dB, options, r);
        }
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int r = static_cast<int>(t); r < restarts; r += static_cast<int>(threads)) {
                        outcomes[r] = run_restart(q, dA, dB, options, r);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    SeesawResult result;
    result.restarts_used = restarts;
    for (int r = 0; r < restarts; ++r) {
        result.iterations_total += outcomes[r].iterations;
        if (result.best_restart < 0 || outcomes[r].value > result.value) {
            result.value = outcomes[r].value;
            result.best_restart = r;
        }
    }
    const auto& best = outcomes[result.best_restart];
    result.witness = {best.a, best.b, "witness", std::nullopt};
    result.value = std::clamp(result.value, 0.0, 1.0);
    return result;
}

double closed_form_max_eigenvalue(const ComplexMatrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) {
        return m(0, 0).real();
    }
    if (n == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    }
    if (n != 3) {
        throw Error(ErrorCode::DimensionTooLarge, "closed form needs size <= 3");
    }
    const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
    const double a0 = m(0, 0).real(), a1 = m(1, 1).real(), a2 = m(2, 2).real();
    if (p1 == 0.0) {
        return std::max({a0, a1, a2});
    }
    const double q = (a0 + a1 + a2) / 3.0;
    const double p2 = (a0 - q) * (a0 - q) + (a1 - q) * (a1 - q) + (a2 - q) * (a2 - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    ComplexMatrix b = (m - q * ComplexMatrix::Identity(3, 3)) / p;
    const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(0.5 * det.real(), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * p * std::cos(phi);
}

GridOracleResult grid_oracle_max_product_overlap(const ComplexMatrix& q, int dA, int dB,
                                                 int resolution) {
    if (dA > 2 || dB > 3) {
        throw Error(ErrorCode::DimensionTooLarge, "grid oracle supports dA <= 2, dB <= 3 only");
    }
    if (dA < 1 || dB < 1 || q.rows() != Eigen::Index(dA) * dB || q.cols() != q.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match dA*dB");
    }
    if (resolution < 2) {
        throw Error(ErrorCode::InvalidDimension, "resolution must be >= 2");
    }
    auto reduced = [&](const ComplexVector& a) {
        ComplexMatrix m = ComplexMatrix::Zero(dB, dB);
        for (int i = 0; i < dA; ++i) {
            for (int j = 0; j < dA; ++j) {
                m += std::conj(a(i)) * a(j) * q.block(i * dB, j * dB, dB, dB);
            }
        }
        return ComplexMatrix(0.5 * (m + m.adjoint()));
    };

    GridOracleResult out;
    out.value = -1.0;
    if (dA == 1) {
        ComplexVector a(1);
        a(0) = 1.0;
        out.value = closed_form_max_eigenvalue(reduced(a));
        out.best_a = a;
        return out;
    }
    const double pi = std::numbers::pi;
    const double dtheta = pi / (resolution - 1);
    const double dphi = 2.0 * pi / resolution;
    for (int t = 0; t < resolution; ++t) {
        const double theta = t * dtheta;
        for (int f = 0; f < resolution; ++f) {
            // The poles need a single phi sample.
            if ((t == 0 || t == resolution - 1) && f > 0) {
                break;
            }
            ComplexVector a(2);
            a(0) = std::cos(theta / 2);
            a(1) = std::polar(std::sin(theta / 2), f * dphi);
            const double v = closed_form_max_eigenvalue(reduced(a));
            if (v > out.value) {
                out.value = v;
                out.best_a = a;
            }
        }
    }
    // |f(a) - f(a')| <= 2 ||Q|| ||a - a'||, and every point of the sphere
    // lies within dtheta/4 + dphi/2 of a grid point.
    out.gap_bound = 2.0 * q.norm() * (0.25 * dtheta + 0.5 * dphi);
    return out;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::CompleteBasis: return "CompleteBasis";
        case Verdict::UPB_Numeric: return "UPB_Numeric";
        case Verdict::Extendible: return "Extendible";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

VerificationReport check_upb(const ProductBasis& basis, const UpbConfig& config) {
    basis.check_dims();
    VerificationReport report;
    report.dA = basis.dA;
    report.dB = basis.dB;
    report.num_states = basis.size();
    report.seed = config.seesaw.seed;
    report.eta = config.eta;

    const auto ortho = check_orthonormal(basis, config.orthonormality_tol);
    report.gram_max_offdiag = ortho.max_offdiag;
    report.gram_max_diag_error = ortho.max_diag_error;
    if (!ortho.ok) {
        throw Error(ErrorCode::NonOrthonormalInput,
                    "max|G - I| = " + std::to_string(ortho.max_deviation()));
    }

    const ComplexMatrix q = complement_projector(basis, config.orthonormality_tol);
    const auto eig = num::hermitian_eig(q);
    int complement_dim = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > 0.5) {
            ++complement_dim;
        }
    }
    report.complement_dim = complement_dim;
    report.span_rank = basis.full_dim() - complement_dim;

    if (complement_dim == 0) {
        report.verdict = Verdict::CompleteBasis;
        return report;
    }

    const auto search = seesaw_max_product_overlap(q, basis.dA, basis.dB, config.seesaw);
    report.max_product_overlap = search.value;
    report.restarts_used = search.restarts_used;
    report.iterations_total = search.iterations_total;
    if (search.value >= 1.0 - config.extendible_tol) {
        report.verdict = Verdict::Extendible;
        report.witness_state = search.witness;
    } else if (search.value < 1.0 - config.eta) {
        report.verdict = Verdict::UPB_Numeric;
    } else {
        report.verdict = Verdict::Inconclusive;
        report.witness_state = search.witness;
    }
    return report;
}

SetMatch basis_set_equal_up_to_phase(const ProductBasis& first, const ProductBasis& second,
                                     double tol) {
    if (first.size() != second.size()) {
        throw Error(ErrorCode::CountMismatch, "bases have different numbers of states");
    }
    if (first.dA != second.dA || first.dB != second.dB) {
        throw Error(ErrorCode::DimensionMismatch, "bases live in different spaces");
    }
    const int n = first.size();
    SetMatch out;
    out.permutation.assign(static_cast<std::size_t>(n), -1);
    out.min_overlap = n == 0 ? 1.0 : 2.0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double best_val = -1.0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) {
                continue;
            }
            const double v = std::abs(overlap(first.states[i], second.states[j]));
            if (v > best_val) {
                best_val = v;
                best = j;
            }
        }
        used[best] = true;
        out.permutation[i] = best;
        out.min_overlap = std::min(out.min_overlap, best_val);
    }
    out.equal = out.min_overlap >= 1.0 - tol;
    return out;
}

}  // namespace pbasis
