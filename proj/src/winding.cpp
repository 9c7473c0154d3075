#include "pbasis/winding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pbasis/constructions.hpp"
#include "pbasis/random.hpp"
#include "pbasis/verification.hpp"

namespace pbasis {

namespace {

constexpr double kRayTol = 1e-8;
constexpr double kMembershipTol = 1e-10;
constexpr double kOrthogonalWeight = 1e-20;
constexpr double kUnitaryTol = 1e-10;

void require_complete(const ProductBasis& basis) {
    basis.check_dims();
    if (!basis.is_complete()) {
        throw Error(ErrorCode::IncompleteBasis,
                    std::to_string(basis.size()) + " states cannot span dimension " +
                        std::to_string(basis.full_dim()));
    }
}

void require_complete_orthonormal(const ProductBasis& basis) {
    require_complete(basis);
    const auto check = check_orthonormal(basis);
    if (!check.ok) {
        throw Error(ErrorCode::NonOrthonormalInput,
                    "max|G - I| = " + std::to_string(check.max_deviation()));
    }
}

bool has_orthonormal_columns(const ComplexMatrix& m, double tol) {
    const auto k = m.cols();
    return num::max_abs(m.adjoint() * m - ComplexMatrix::Identity(k, k)) <= tol;
}

bool is_unitary(const ComplexMatrix& u, Eigen::Index dim) {
    return u.rows() == dim && u.cols() == dim && has_orthonormal_columns(u, kUnitaryTol);
}

// Groups unit vectors into rays; assignment[i] is the ray of vectors[i].
struct Rays {
    std::vector<ComplexVector> reps;
    std::vector<int> assignment;
};

Rays group_rays(const std::vector<ComplexVector>& vectors, double tol) {
    Rays rays;
    for (const auto& v : vectors) {
        int found = -1;
        for (std::size_t r = 0; r < rays.reps.size(); ++r) {
            if (std::abs(rays.reps[r].dot(v)) >= 1.0 - tol) {
                found = static_cast<int>(r);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(rays.reps.size());
            rays.reps.push_back(v);
        }
        rays.assignment.push_back(found);
    }
    return rays;
}

bool mutually_orthogonal(const std::vector<ComplexVector>& reps, double tol) {
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (std::abs(reps[i].dot(reps[j])) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::vector<int> components(const std::vector<ComplexVector>& reps, double tol) {
    const int n = static_cast<int>(reps.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(reps[i].dot(reps[j])) > tol) {
                parent[find(i)] = find(j);
            }
        }
    }
    // Relabel roots by first appearance.
    std::vector<int> label(n, -1);
    std::vector<int> out(n);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (label[root] < 0) {
            label[root] = next++;
        }
        out[i] = label[root];
    }
    return out;
}

ComplexMatrix lift(const ComplexMatrix& sub_basis, const ComplexMatrix& u) {
    const auto d = sub_basis.rows();
    return ComplexMatrix::Identity(d, d) - sub_basis * sub_basis.adjoint() +
           sub_basis * u * sub_basis.adjoint();
}

bool same_split(const SubspacePair& x, const SubspacePair& y) {
    return x.dim_a() == y.dim_a() && x.dim_b() == y.dim_b() &&
           num::max_abs(x.projector_a() - y.projector_a()) <= 1e-10 &&
           num::max_abs(x.projector_b() - y.projector_b()) <= 1e-10;
}

// Candidate local subspaces on one side: spans of proper unions of ray
// components.
std::vector<ComplexMatrix> side_candidates(const std::vector<ComplexVector>& locals, int dim) {
    const Rays rays = group_rays(locals, kRayTol);
    const auto comp = components(rays.reps, kRayTol);
    const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<ComplexMatrix> out;
    if (ncomp < 2 || ncomp > 20) {
        return out;
    }
    for (unsigned long mask = 1; mask + 1 < (1UL << ncomp); ++mask) {
        std::vector<ComplexVector> chosen;
        for (std::size_t r = 0; r < rays.reps.size(); ++r) {
            if (mask & (1UL << comp[r])) {
                chosen.push_back(rays.reps[r]);
            }
        }
        ComplexMatrix span = num::orthonormal_span(chosen);
        if (span.cols() > 0 && span.cols() < dim) {
            out.push_back(std::move(span));
        }
    }
    return out;
}

// Closest unitary to sum_r |target_r><source_r| with targets paired to
// sources by greedy maximal overlap.
ComplexMatrix alignment_unitary(const std::vector<ComplexVector>& sources,
                                const std::vector<ComplexVector>& targets) {
    const auto k = static_cast<Eigen::Index>(sources.size());
    ComplexMatrix m = ComplexMatrix::Zero(k, k);
    std::vector<bool> used(targets.size(), false);
    for (const auto& s : sources) {
        int best = -1;
        double best_val = -1.0;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            const double v = std::abs(targets[t].dot(s));
            if (!used[t] && v > best_val) {
                best_val = v;
                best = static_cast<int>(t);
            }
        }
        used[best] = true;
        m += targets[best] * s.adjoint();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// Rays of `vectors` that lie in the subspace spanned by `sub`, expressed in
// local coordinates; returned only when they form an orthonormal basis of it.
std::optional<std::vector<ComplexVector>> local_ray_basis(const std::vector<ComplexVector>& vectors,
                                                          const ComplexMatrix& sub) {
    std::vector<ComplexVector> locals;
    for (const auto& v : vectors) {
        const ComplexVector c = sub.adjoint() * v;
        if ((v - sub * c).norm() <= kMembershipTol) {
            locals.push_back(c);
        }
    }
    const Rays rays = group_rays(locals, kRayTol);
    if (static_cast<Eigen::Index>(rays.reps.size()) != sub.cols() ||
        !mutually_orthogonal(rays.reps, kRayTol)) {
        return std::nullopt;
    }
    return rays.reps;
}

}  // namespace

SplitValidation validate_split(const ProductBasis& basis, const SubspacePair& split) {
    require_complete_orthonormal(basis);
    if (split.a_basis.rows() != basis.dA || split.b_basis.rows() != basis.dB ||
        split.dim_a() < 1 || split.dim_b() < 1 || split.dim_a() > basis.dA ||
        split.dim_b() > basis.dB) {
        throw Error(ErrorCode::InvalidSplit, "subspace bases have the wrong shape");
    }
    if (!has_orthonormal_columns(split.a_basis, kMembershipTol) ||
        !has_orthonormal_columns(split.b_basis, kMembershipTol)) {
        throw Error(ErrorCode::InvalidSplit, "subspace bases are not orthonormal");
    }
    SplitValidation out;
    out.proper = split.dim_a() < basis.dA || split.dim_b() < basis.dB;
    out.valid = true;
    for (const auto& st : basis.states) {
        const ComplexVector ca = split.a_basis.adjoint() * st.a;
        const ComplexVector cb = split.b_basis.adjoint() * st.b;
        const bool in_a = (st.a - split.a_basis * ca).norm() <= kMembershipTol;
        const bool in_b = (st.b - split.b_basis * cb).norm() <= kMembershipTol;
        Placement p = Placement::Unclassified;
        if (in_a && in_b) {
            p = Placement::Inside;
            ++out.inside_count;
        } else if (ca.squaredNorm() * cb.squaredNorm() <= kOrthogonalWeight) {
            p = Placement::Outside;
        } else {
            out.valid = false;
        }
        out.placement.push_back(p);
    }
    if (out.valid && out.inside_count != split.dim_a() * split.dim_b()) {
        throw std::logic_error("valid split with INSIDE count != dim A' * dim B'");
    }
    return out;
}

ProductBasis apply_winding_move(const ProductBasis& basis, const WindingMove& move) {
    const auto validation = validate_split(basis, move.split);
    if (!validation.valid) {
        throw Error(ErrorCode::InvalidSplit, "some state is neither inside nor orthogonal to the split");
    }
    if (!is_unitary(move.u_a, move.split.dim_a()) || !is_unitary(move.u_b, move.split.dim_b())) {
        throw Error(ErrorCode::InvalidSplit, "move unitaries are not unitary on the split");
    }
    const ComplexMatrix full_a = lift(move.split.a_basis, move.u_a);
    const ComplexMatrix full_b = lift(move.split.b_basis, move.u_b);
    ProductBasis out = basis;
    out.family = Family::Custom;
    for (std::size_t i = 0; i < out.states.size(); ++i) {
        if (validation.placement[i] == Placement::Inside) {
            out.states[i].a = full_a * basis.states[i].a;
            out.states[i].b = full_b * basis.states[i].b;
            out.states[i].tile_cells.reset();
        }
    }
    out.provenance.push_back(move);
    if (!check_orthonormal(out).ok) {
        throw std::logic_error("winding move broke orthonormality");
    }
    return out;
}

WindingMove inverse_move(const WindingMove& move) {
    return {move.split, move.u_a.adjoint(), move.u_b.adjoint()};
}

WindingMove identity_move(const SubspacePair& split) {
    return {split, ComplexMatrix::Identity(split.dim_a(), split.dim_a()),
            ComplexMatrix::Identity(split.dim_b(), split.dim_b())};
}

bool is_cartesian(const ProductBasis& basis, double tol) {
    require_complete(basis);
    std::vector<ComplexVector> as, bs;
    for (const auto& st : basis.states) {
        as.push_back(st.a / st.a.norm());
        bs.push_back(st.b / st.b.norm());
    }
    const Rays ra = group_rays(as, tol);
    const Rays rb = group_rays(bs, tol);
    if (static_cast<int>(ra.reps.size()) != basis.dA || static_cast<int>(rb.reps.size()) != basis.dB) {
        return false;
    }
    if (!mutually_orthogonal(ra.reps, tol) || !mutually_orthogonal(rb.reps, tol)) {
        return false;
    }
    std::set<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        cells.insert({ra.assignment[i], rb.assignment[i]});
    }
    return static_cast<int>(cells.size()) == basis.full_dim();
}

std::vector<SubspacePair> enumerate_splits(const ProductBasis& basis) {
    require_complete_orthonormal(basis);
    std::vector<ComplexVector> as, bs;
    for (const auto& st : basis.states) {
        as.push_back(st.a);
        bs.push_back(st.b);
    }
    const ComplexMatrix full_a = ComplexMatrix::Identity(basis.dA, basis.dA);
    const ComplexMatrix full_b = ComplexMatrix::Identity(basis.dB, basis.dB);

    std::vector<SubspacePair> out;
    auto consider = [&](SubspacePair split) {
        for (const auto& existing : out) {
            if (same_split(existing, split)) {
                return false;
            }
        }
        const auto v = validate_split(basis, split);
        if (!v.valid || !v.proper) {
            return false;
        }
        out.push_back(std::move(split));
        return true;
    };

    std::vector<ComplexMatrix> a_side, b_side;
    for (auto& span : side_candidates(as, basis.dA)) {
        if (consider({span, full_b})) {
            a_side.push_back(span);
        }
    }
    for (auto& span : side_candidates(bs, basis.dB)) {
        if (consider({full_a, span})) {
            b_side.push_back(span);
        }
    }
    for (const auto& sa : a_side) {
        for (const auto& sb : b_side) {
            consider({sa, sb});
        }
    }
    return out;
}

std::vector<WindingMove> alignment_moves(const ProductBasis& basis, const SubspacePair& split) {
    const auto validation = validate_split(basis, split);
    if (!validation.valid || !validation.proper) {
        return {};
    }
    std::vector<ComplexVector> in_a, in_b, out_a, out_b;
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        const auto& st = basis.states[i];
        if (validation.placement[i] == Placement::Inside) {
            in_a.push_back(st.a);
            in_b.push_back(st.b);
        } else {
            out_a.push_back(st.a);
            out_b.push_back(st.b);
        }
    }
    // The block must be a rotated grid in its own coordinates.
    const auto block_a = local_ray_basis(in_a, split.a_basis);
    const auto block_b = local_ray_basis(in_b, split.b_basis);
    if (!block_a || !block_b) {
        return {};
    }
    const auto target_a = local_ray_basis(out_a, split.a_basis);
    const auto target_b = local_ray_basis(out_b, split.b_basis);

    std::vector<ComplexMatrix> options_a{ComplexMatrix::Identity(split.dim_a(), split.dim_a())};
    std::vector<ComplexMatrix> options_b{ComplexMatrix::Identity(split.dim_b(), split.dim_b())};
    if (target_a) {
        options_a.push_back(alignment_unitary(*block_a, *target_a));
    }
    if (target_b) {
        options_b.push_back(alignment_unitary(*block_b, *target_b));
    }
    std::vector<WindingMove> moves;
    for (std::size_t i = 0; i < options_a.size(); ++i) {
        for (std::size_t j = 0; j < options_b.size(); ++j) {
            if (i == 0 && j == 0) {
                continue;
            }
            moves.push_back({split, options_a[i], options_b[j]});
        }
    }
    return moves;
}

ProductBasis apply_moves(const ProductBasis& basis, const std::vector<WindingMove>& moves) {
    ProductBasis current = basis;
    for (const auto& m : moves) {
        current = apply_winding_move(current, m);
    }
    return current;
}

std::vector<WindingMove> inverse_sequence(const std::vector<WindingMove>& moves) {
    std::vector<WindingMove> out;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
        out.push_back(inverse_move(*it));
    }
    return out;
}

namespace {

bool search(const ProductBasis& current, int remaining, std::vector<WindingMove>& path,
            const ProductBasis& origin) {
    for (const auto& split : enumerate_splits(current)) {
        for (auto& move : alignment_moves(current, split)) {
            ProductBasis next;
            try {
                next = apply_winding_move(current, move);
            } catch (const Error&) {
                continue;
            }
            path.push_back(std::move(move));
            if (remaining == 1) {
                if (is_cartesian(next)) {
                    // Independent certification from the original input.
                    const ProductBasis replay = apply_moves(origin, path);
                    if (is_cartesian(replay) && check_orthonormal(replay).ok) {
                        return true;
                    }
                }
            } else if (search(next, remaining - 1, path, origin)) {
                return true;
            }
            path.pop_back();
        }
    }
    return false;
}

}  // namespace

std::optional<std::vector<WindingMove>> unwind(const ProductBasis& basis, int max_depth) {
    require_complete_orthonormal(basis);
    if (is_cartesian(basis)) {
        return std::vector<WindingMove>{};
    }
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<WindingMove> path;
        if (search(basis, depth, path, basis)) {
            return path;
        }
    }
    return std::nullopt;
}

WoundBasis wind_basis(const ProductBasis& start, int k_moves, std::uint64_t seed) {
    if (k_moves < 0) {
        throw Error(ErrorCode::InvalidDimension, "number of moves must be >= 0");
    }
    WoundBasis out{start, {}};
    for (int t = 0; t < k_moves; ++t) {
        const auto splits = enumerate_splits(out.basis);
        if (splits.empty()) {
            throw NoValidSplitError("no proper split after " + std::to_string(t) + " moves",
                                    std::move(out));
        }
        auto rng = num::make_stream(seed, static_cast<std::uint64_t>(t));
        std::uniform_int_distribution<std::size_t> pick(0, splits.size() - 1);
        const auto& split = splits[pick(rng)];
        WindingMove move{split, num::haar_unitary(split.dim_a(), rng),
                         num::haar_unitary(split.dim_b(), rng)};
        out.basis = apply_winding_move(out.basis, move);
        out.moves.push_back(std::move(move));
    }
    return out;
}

WoundBasis random_wound_basis(int dA, int dB, int k_moves, std::uint64_t seed) {
    return wind_basis(cartesian_basis(dA, dB), k_moves, seed);
}

}  // namespace pbasis
