#include "pbasis/basis_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pbasis::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::MalformedFile, what);
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        malformed("complex entry must be [re, im]");
    }
    const Complex c(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        malformed("non-finite amplitude");
    }
    return c;
}

json move_to_json(const WindingMove& m) {
    return {{"a_basis", matrix_to_json(m.split.a_basis)},
            {"b_basis", matrix_to_json(m.split.b_basis)},
            {"u_a", matrix_to_json(m.u_a)},
            {"u_b", matrix_to_json(m.u_b)}};
}

WindingMove move_from_json(const json& j) {
    if (!j.is_object()) {
        malformed("provenance entry must be an object");
    }
    for (const char* key : {"a_basis", "b_basis", "u_a", "u_b"}) {
        if (!j.contains(key)) {
            malformed(std::string("provenance entry missing '") + key + "'");
        }
    }
    return {{matrix_from_json(j["a_basis"]), matrix_from_json(j["b_basis"])},
            matrix_from_json(j["u_a"]),
            matrix_from_json(j["u_b"])};
}

}  // namespace

json vector_to_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

ComplexVector vector_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        malformed("vector must be a nonempty list of [re, im]");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    }
    return v;
}

json matrix_to_json(const ComplexMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(vector_to_json(m.row(r).transpose()));
    }
    return out;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        malformed("matrix must be a nonempty list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const ComplexVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
        if (r == 0) {
            m.resize(rows, row.size());
        } else if (row.size() != m.cols()) {
            malformed("ragged matrix");
        }
        m.row(r) = row.transpose();
    }
    return m;
}

json state_to_json(const ProductState& state) {
    json out = {{"label", state.label}, {"a", vector_to_json(state.a)}, {"b", vector_to_json(state.b)}};
    if (state.tile_cells) {
        json cells = json::array();
        for (const auto& c : *state.tile_cells) {
            cells.push_back({c.col, c.row});
        }
        out["tile_cells"] = std::move(cells);
    }
    return out;
}

json basis_to_json(const ProductBasis& basis) {
    json states = json::array();
    for (const auto& s : basis.states) {
        states.push_back(state_to_json(s));
    }
    json out = {{"format_version", kFormatVersion},
                {"dims", {basis.dA, basis.dB}},
                {"family", std::string(to_string(basis.family))},
                {"states", std::move(states)}};
    if (!basis.provenance.empty()) {
        json moves = json::array();
        for (const auto& m : basis.provenance) {
            moves.push_back(move_to_json(m));
        }
        out["provenance"] = std::move(moves);
    }
    return out;
}

ProductBasis basis_from_json(const json& j) {
    if (!j.is_object()) {
        malformed("basis file must be a JSON object");
    }
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != kFormatVersion) {
        malformed("unsupported or missing format_version");
    }
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2 ||
        !j["dims"][0].is_number_integer() || !j["dims"][1].is_number_integer()) {
        malformed("dims must be [dA, dB]");
    }
    ProductBasis basis;
    basis.dA = j["dims"][0].get<int>();
    basis.dB = j["dims"][1].get<int>();
    if (basis.dA < 1 || basis.dB < 1) {
        malformed("dims must be positive");
    }
    if (!j.contains("family") || !j["family"].is_string()) {
        malformed("family must be a string");
    }
    const auto family = family_from_string(j["family"].get<std::string>());
    if (!family) {
        malformed("unknown family '" + j["family"].get<std::string>() + "'");
    }
    basis.family = *family;
    if (!j.contains("states") || !j["states"].is_array()) {
        malformed("states must be a list");
    }
    for (const auto& s : j["states"]) {
        if (!s.is_object() || !s.contains("a") || !s.contains("b")) {
            malformed("state must have 'a' and 'b'");
        }
        ProductState st;
        st.label = s.value("label", std::string{});
        st.a = vector_from_json(s["a"]);
        st.b = vector_from_json(s["b"]);
        if (st.a.size() != basis.dA || st.b.size() != basis.dB) {
            malformed("state '" + st.label + "' does not match dims");
        }
        if (s.contains("tile_cells")) {
            std::vector<Cell> cells;
            for (const auto& c : s["tile_cells"]) {
                if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
                    !c[1].is_number_integer()) {
                    malformed("tile cell must be [col, row]");
                }
                Cell cell{c[0].get<int>(), c[1].get<int>()};
                if (cell.col < 0 || cell.col >= basis.dA || cell.row < 0 || cell.row >= basis.dB) {
                    malformed("tile cell outside the grid");
                }
                cells.push_back(cell);
            }
            std::sort(cells.begin(), cells.end());
            st.tile_cells = std::move(cells);
        }
        basis.states.push_back(std::move(st));
    }
    if (j.contains("provenance")) {
        if (!j["provenance"].is_array()) {
            malformed("provenance must be a list");
        }
        for (const auto& m : j["provenance"]) {
            basis.provenance.push_back(move_from_json(m));
        }
    }
    return basis;
}

void save_basis(const ProductBasis& basis, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << basis_to_json(basis).dump(1) << '\n';
}

ProductBasis load_basis(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        malformed("cannot open " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    return basis_from_json(j);
}

json report_to_json(const VerificationReport& r) {
    json out = {{"dims", {r.dA, r.dB}},
                {"num_states", r.num_states},
                {"gram_max_offdiag", r.gram_max_offdiag},
                {"gram_max_diag_error", r.gram_max_diag_error},
                {"span_rank", r.span_rank},
                {"complement_dim", r.complement_dim},
                {"max_product_overlap", r.max_product_overlap},
                {"verdict", std::string(to_string(r.verdict))},
                {"eta", r.eta},
                {"restarts_used", r.restarts_used},
                {"iterations_total", r.iterations_total},
                {"seed", r.seed}};
    out["witness_state"] = r.witness_state ? state_to_json(*r.witness_state) : json(nullptr);
    return out;
}

json density_to_json(const DensityMatrix& rho) {
    return {{"format_version", kFormatVersion},
            {"dims", {rho.dA, rho.dB}},
            {"matrix", matrix_to_json(rho.matrix)}};
}

}  // namespace pbasis::io
