#pragma once

// JSON operator files:
//
//   {"dims": [dA, dB], "kind": "witness", "name": "...",
//    "matrix": [[[re, im], ...], ...], "provenance": {...}}
//
// kind is one of state, witness, choi, raw. Single-system matrices use
// "dims": [d]. Doubles are written in shortest round-trip decimal form, so
// write -> read reproduces every entry bit for bit.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ewspa/linalg.hpp"

namespace ewspa {

struct OperatorFile {
    std::vector<std::size_t> dims;
    ComplexMatrix matrix;
    std::string kind = "raw";
    std::string name;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
};

/// Throws Error(Parse) naming the offending field or row; kinds other than raw
/// must be Hermitian (NotHermitian).
OperatorFile parse_operator_file(const nlohmann::ordered_json& doc);
OperatorFile parse_operator_file(std::string_view text);
inline OperatorFile parse_operator_file(const char* text) { return parse_operator_file(std::string_view(text)); }
OperatorFile read_operator_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const OperatorFile& file);
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
nlohmann::ordered_json vector_to_json(const ComplexVector& v);
void write_operator_file(const OperatorFile& file, const std::filesystem::path& path);

OperatorFile make_operator_file(const BipartiteOperator& op, std::string kind, std::string name = {});
/// Throws DimensionMismatch unless the file carries two subsystem dims.
BipartiteOperator to_bipartite(const OperatorFile& file);

}  // namespace ewspa
