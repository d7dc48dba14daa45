#include "ewspa/operator_file.hpp"

#include <fstream>
#include <sstream>

#include "ewspa/errors.hpp"

namespace ewspa {

namespace {

using json = nlohmann::ordered_json;

bool known_kind(const std::string& kind) {
    return kind == "state" || kind == "witness" || kind == "choi" || kind == "raw";
}

double number_at(const json& value, const std::string& where) {
    if (!value.is_number()) throw Error(ErrorCode::Parse, where + ": expected a number");
    return value.get<double>();
}

}  // namespace

OperatorFile parse_operator_file(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "operator file must be a JSON object");

    OperatorFile file;
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty() || doc["dims"].size() > 2)
        throw Error(ErrorCode::Parse, "'dims' must be an array of one or two positive integers");
    std::size_t side = 1;
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
            throw Error(ErrorCode::Parse, "'dims' entries must be positive integers");
        file.dims.push_back(d.get<std::size_t>());
        side *= file.dims.back();
    }

    if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) throw Error(ErrorCode::Parse, "'kind' must be a string");
        file.kind = doc["kind"].get<std::string>();
        if (!known_kind(file.kind)) throw Error(ErrorCode::Parse, "unknown kind '" + file.kind + "'");
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw Error(ErrorCode::Parse, "'name' must be a string");
        file.name = doc["name"].get<std::string>();
    }
    if (doc.contains("provenance")) file.provenance = doc["provenance"];

    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw Error(ErrorCode::Parse, "'matrix' must be an array of rows");
    const json& rows = doc["matrix"];
    if (rows.size() != side) {
        throw Error(ErrorCode::Parse, "'matrix' has " + std::to_string(rows.size()) + " rows, dims imply " +
                                          std::to_string(side));
    }
    const auto n = static_cast<Eigen::Index>(side);
    file.matrix.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        const std::string where = "matrix row " + std::to_string(r);
        if (!row.is_array() || row.size() != side)
            throw Error(ErrorCode::Parse, where + ": expected " + std::to_string(side) + " entries");
        for (Eigen::Index c = 0; c < n; ++c) {
            const json& entry = row[static_cast<std::size_t>(c)];
            const std::string at = where + ", column " + std::to_string(c);
            if (!entry.is_array() || entry.size() != 2)
                throw Error(ErrorCode::Parse, at + ": expected a [re, im] pair");
            file.matrix(r, c) = Complex(number_at(entry[0], at), number_at(entry[1], at));
        }
    }
    if (!file.matrix.allFinite()) throw Error(ErrorCode::Parse, "matrix has non-finite entries");
    if (file.kind != "raw" && !is_hermitian(file.matrix))
        throw Error(ErrorCode::NotHermitian, "matrix of kind '" + file.kind + "' is not Hermitian");
    return file;
}

OperatorFile parse_operator_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
    return parse_operator_file(doc);
}

OperatorFile read_operator_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_operator_file(std::string_view(buffer.str()));
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
    return out;
}

json to_json(const OperatorFile& file) {
    json doc;
    doc["dims"] = file.dims;
    doc["kind"] = file.kind;
    if (!file.name.empty()) doc["name"] = file.name;
    doc["matrix"] = matrix_to_json(file.matrix);
    if (!file.provenance.empty()) doc["provenance"] = file.provenance;
    return doc;
}

void write_operator_file(const OperatorFile& file, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
    out << to_json(file).dump(2) << '\n';
}

OperatorFile make_operator_file(const BipartiteOperator& op, std::string kind, std::string name) {
    OperatorFile file;
    file.dims = {op.dims().a, op.dims().b};
    file.matrix = op.matrix();
    file.kind = std::move(kind);
    file.name = std::move(name);
    return file;
}

BipartiteOperator to_bipartite(const OperatorFile& file) {
    if (file.dims.size() != 2)
        throw Error(ErrorCode::DimensionMismatch, "operator file needs two subsystem dims for a bipartite operator");
    return {{file.dims[0], file.dims[1]}, file.matrix};
}

}  // namespace ewspa
