#include "pbasis/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "pbasis/basis_file.hpp"
#include "pbasis/boundent.hpp"
#include "pbasis/constructions.hpp"
#include "pbasis/verification.hpp"
#include "pbasis/winding.hpp"

namespace pbasis::cli {

namespace {

using io::json;

constexpr std::size_t kTagWidth = 6;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return 0;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

void write_json_or_file(const json& j, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << j.dump(1) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << j.dump(1) << '\n';
}

void print_text_report(const VerificationReport& r, std::ostream& out) {
    out << "dims: " << r.dA << " x " << r.dB << '\n'
        << "states: " << r.num_states << '\n'
        << "gram_max_offdiag: " << fmt(r.gram_max_offdiag) << '\n'
        << "gram_max_diag_error: " << fmt(r.gram_max_diag_error) << '\n'
        << "span_rank: " << r.span_rank << '\n'
        << "complement_dim: " << r.complement_dim << '\n'
        << "max_product_overlap: " << fmt(r.max_product_overlap) << '\n'
        << "restarts_used: " << r.restarts_used << '\n'
        << "iterations_total: " << r.iterations_total << '\n'
        << "seed: " << r.seed << '\n'
        << "verdict: " << to_string(r.verdict) << '\n';
    if (r.witness_state) {
        out << "witness_state: " << io::state_to_json(*r.witness_state).dump() << '\n';
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::CompleteBasis:
        case Verdict::UPB_Numeric: return kOk;
        case Verdict::Extendible: return kExtendible;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

json moves_to_json(const std::vector<WindingMove>& moves) {
    ProductBasis holder;
    holder.provenance = moves;
    const json j = io::basis_to_json(holder);
    return j.contains("provenance") ? j["provenance"] : json::array();
}

struct Options {
    // construct
    std::string family;
    int m = 0;
    int n = 0;
    std::string out_path;
    // verify / boundent
    std::string path;
    int restarts = 500;
    std::optional<std::uint64_t> seed;
    double tol = num::kDefaultTolerances.orthonormality;
    double eta = 1e-3;
    std::string format = "text";
    unsigned threads = 0;
    // wind / unwind
    std::vector<int> cartesian;
    int moves = 1;
    int depth = 2;
};

UpbConfig make_config(const Options& o) {
    UpbConfig c;
    c.seesaw.restarts = o.restarts;
    c.seesaw.seed = o.seed.value_or(default_seed());
    c.seesaw.threads = o.threads;
    c.orthonormality_tol = o.tol;
    c.eta = o.eta;
    return c;
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
    ProductBasis basis;
    try {
        if (o.family == "gentiles1") {
            basis = gen_tiles1(o.n);
        } else if (o.family == "gentiles2") {
            basis = gen_tiles2(o.m, o.n);
        } else {
            basis = cartesian_basis(o.m, o.n);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidDimension) {
            err << e.what() << '\n';
            return kInvalidDimension;
        }
        throw;
    }
    const json j = io::basis_to_json(basis);
    write_json_or_file(j, o.out_path, out);
    std::ostream& summary = o.out_path.empty() ? err : out;
    summary << "constructed " << to_string(basis.family) << ": " << basis.size() << " states in "
            << basis.dA << " x " << basis.dB << '\n';
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const ProductBasis basis = io::load_basis(o.path);
    const auto report = check_upb(basis, make_config(o));
    if (o.format == "json") {
        out << io::report_to_json(report).dump(1) << '\n';
    } else {
        print_text_report(report, out);
    }
    return verdict_exit(report.verdict);
}

int cmd_render(const Options& o, std::ostream& out) {
    out << render_tiles(io::load_basis(o.path));
    return kOk;
}

int cmd_boundent(const Options& o, std::ostream& out, std::ostream& err) {
    const ProductBasis basis = io::load_basis(o.path);
    const auto config = make_config(o);
    const auto report = check_upb(basis, config);
    if (report.verdict == Verdict::CompleteBasis || report.verdict == Verdict::Extendible) {
        err << "basis is not a UPB (verdict " << to_string(report.verdict) << ")\n";
        return kNotAUpb;
    }
    if (report.verdict == Verdict::Inconclusive) {
        err << "unextendibility inconclusive; refusing to build the density state\n";
        return kInconclusive;
    }
    const DensityMatrix rho = upb_density_state(basis);
    const auto eig = num::hermitian_eig(rho.matrix);
    const double top = eig.values(eig.values.size() - 1);
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        rank += eig.values(i) > 1e-9 * top ? 1 : 0;
    }
    const auto ppt = is_ppt(rho);
    RangeCriterionConfig rc;
    rc.seesaw = config.seesaw;
    rc.eta = config.eta;
    const auto range = range_criterion_report(rho, rc);

    if (o.format == "json") {
        const json j = {{"dims", {rho.dA, rho.dB}},
                        {"trace", rho.matrix.trace().real()},
                        {"rank", rank},
                        {"min_pt_eigenvalue", ppt.min_pt_eigenvalue},
                        {"ppt", ppt.ppt},
                        {"range_max_product_overlap", range.max_product_overlap},
                        {"range_criterion", std::string(to_string(range.verdict))},
                        {"seed", config.seesaw.seed}};
        out << j.dump(1) << '\n';
    } else {
        out << "trace: " << fmt(rho.matrix.trace().real()) << '\n'
            << "rank: " << rank << '\n'
            << "min_pt_eigenvalue: " << fmt(ppt.min_pt_eigenvalue) << '\n'
            << "ppt: " << (ppt.ppt ? "true" : "false") << '\n'
            << "range_max_product_overlap: " << fmt(range.max_product_overlap) << '\n'
            << "range_criterion: " << to_string(range.verdict) << '\n';
    }
    if (!o.out_path.empty()) {
        write_json_or_file(io::density_to_json(rho), o.out_path, out);
    }
    return kOk;
}

int cmd_wind(const Options& o, std::ostream& out, std::ostream& err) {
    ProductBasis start;
    if (!o.cartesian.empty()) {
        start = cartesian_basis(o.cartesian[0], o.cartesian[1]);
    } else if (!o.path.empty()) {
        start = io::load_basis(o.path);
    } else {
        err << "wind needs a basis file or --cartesian dA dB\n";
        return kBadInput;
    }
    const auto wound = wind_basis(start, o.moves, o.seed.value_or(default_seed()));
    write_json_or_file(io::basis_to_json(wound.basis), o.out_path, out);
    std::ostream& summary = o.out_path.empty() ? err : out;
    summary << "applied " << wound.moves.size() << " winding moves; cartesian: "
            << (is_cartesian(wound.basis) ? "true" : "false") << '\n';
    return kOk;
}

int cmd_unwind(const Options& o, std::ostream& out) {
    const ProductBasis basis = io::load_basis(o.path);
    const auto moves = unwind(basis, o.depth);
    if (o.format == "json") {
        json j = {{"depth", o.depth}, {"found", moves.has_value()}};
        j["moves"] = moves ? moves_to_json(*moves) : json(nullptr);
        out << j.dump(1) << '\n';
    } else if (moves) {
        out << "certified unwinding sequence: " << moves->size() << " move(s)\n";
        for (std::size_t i = 0; i < moves->size(); ++i) {
            const auto& m = (*moves)[i];
            out << "  move " << i << ": split dim " << m.split.dim_a() << " x " << m.split.dim_b()
                << '\n';
        }
        out << "final basis cartesian: true\n";
    } else {
        out << "not unwound within depth " << o.depth << '\n';
    }
    if (moves && !o.out_path.empty()) {
        io::save_basis(apply_moves(basis, *moves), o.out_path);
    }
    return moves ? kOk : kInconclusive;
}

}  // namespace

std::string render_tiles(const ProductBasis& basis) {
    struct Group {
        std::string tag;
        std::vector<std::string> labels;
        std::vector<Cell> cells;
    };
    std::vector<Group> groups;
    std::map<char, int> per_kind;
    bool any_metadata = false;
    for (const auto& st : basis.states) {
        if (!st.tile_cells) {
            throw Error(ErrorCode::NoTileMetadata, "state '" + st.label + "' has no tile cells");
        }
        any_metadata = true;
        if (static_cast<int>(st.tile_cells->size()) == basis.full_dim()) {
            continue;  // stopper
        }
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& g) { return g.cells == *st.tile_cells; });
        if (it == groups.end()) {
            const char kind = st.label.empty() ? 'T' : st.label.front();
            std::string tag = std::string(1, kind) + std::to_string(per_kind[kind]++);
            groups.push_back({tag.substr(0, kTagWidth), {}, *st.tile_cells});
            it = std::prev(groups.end());
        }
        it->labels.push_back(st.label);
    }
    if (!any_metadata) {
        throw Error(ErrorCode::NoTileMetadata, "basis has no states");
    }

    std::vector<std::vector<std::string>> grid(basis.dB, std::vector<std::string>(basis.dA));
    for (const auto& g : groups) {
        for (const auto& c : g.cells) {
            auto& slot = grid[c.row][c.col];
            slot += slot.empty() ? g.tag : "/" + g.tag;
        }
    }
    std::size_t width = 3;
    for (const auto& row : grid) {
        for (const auto& s : row) {
            width = std::max(width, s.size());
        }
    }
    std::ostringstream os;
    os << std::left << std::setw(6) << "B\\A";
    for (int c = 0; c < basis.dA; ++c) {
        os << ' ' << std::setw(static_cast<int>(width)) << c;
    }
    os << '\n';
    for (int r = 0; r < basis.dB; ++r) {
        os << std::setw(6) << r;
        for (int c = 0; c < basis.dA; ++c) {
            os << ' ' << std::setw(static_cast<int>(width)) << (grid[r][c].empty() ? "." : grid[r][c]);
        }
        os << '\n';
    }
    os << "legend:\n";
    for (const auto& g : groups) {
        os << "  " << g.tag << ':';
        for (const auto& l : g.labels) {
            os << ' ' << l;
        }
        os << '\n';
    }
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Product bases: construction, unextendibility checks, bound entanglement, winding"};
    app.require_subcommand(1);
    Options o;

    auto* construct = app.add_subcommand("construct", "Build a product basis and write it as JSON");
    construct->add_option("--family", o.family, "gentiles1 | gentiles2 | cartesian")
        ->required()
        ->check(CLI::IsMember({"gentiles1", "gentiles2", "cartesian"}));
    construct->add_option("--m", o.m, "first dimension (gentiles2, cartesian)");
    construct->add_option("--n", o.n, "second dimension")->required();
    construct->add_option("--out", o.out_path, "output file (stdout when omitted)");

    auto add_search_flags = [&](CLI::App* cmd) {
        cmd->add_option("--restarts", o.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", o.seed, "random seed (default: $PB_SEED or 0)");
        cmd->add_option("--tol", o.tol, "orthonormality tolerance");
        cmd->add_option("--eta", o.eta, "unextendibility margin");
        cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        cmd->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* verify = app.add_subcommand("verify", "Check orthonormality and unextendibility");
    verify->add_option("path", o.path, "basis file")->required();
    add_search_flags(verify);

    auto* render = app.add_subcommand("render", "Draw the tile layout of a basis");
    render->add_option("path", o.path, "basis file")->required();

    auto* boundent = app.add_subcommand("boundent", "PPT and range-criterion checks of the UPB state");
    boundent->add_option("path", o.path, "basis file")->required();
    boundent->add_option("--out", o.out_path, "write the density matrix here");
    add_search_flags(boundent);

    auto* wind = app.add_subcommand("wind", "Apply random winding moves to a complete basis");
    wind->add_option("path", o.path, "basis file");
    wind->add_option("--cartesian", o.cartesian, "start from the Cartesian basis dA dB")->expected(2);
    wind->add_option("--moves", o.moves, "number of moves")->check(CLI::NonNegativeNumber);
    wind->add_option("--seed", o.seed, "random seed (default: $PB_SEED or 0)");
    wind->add_option("--out", o.out_path, "output file (stdout when omitted)");

    auto* unwind_cmd = app.add_subcommand("unwind", "Search for moves back to a Cartesian basis");
    unwind_cmd->add_option("path", o.path, "basis file")->required();
    unwind_cmd->add_option("--depth", o.depth, "maximum number of moves")->check(CLI::NonNegativeNumber);
    unwind_cmd->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    unwind_cmd->add_option("--out", o.out_path, "write the unwound basis here");

    std::vector<std::string> argv_store{"pbasis"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (construct->parsed()) {
            return cmd_construct(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        if (render->parsed()) {
            return cmd_render(o, out);
        }
        if (boundent->parsed()) {
            return cmd_boundent(o, out, err);
        }
        if (wind->parsed()) {
            return cmd_wind(o, out, err);
        }
        if (unwind_cmd->parsed()) {
            return cmd_unwind(o, out);
        }
    } catch (const NoValidSplitError& e) {
        err << e.what() << '\n';
        return kNoValidSplit;
    } catch (const Error& e) {
        err << e.what() << '\n';
        if (e.code() == ErrorCode::IncompleteBasis) {
            return kIncompleteBasis;
        }
        if (e.code() == ErrorCode::InvalidDimension) {
            return kInvalidDimension;
        }
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace pbasis::cli
