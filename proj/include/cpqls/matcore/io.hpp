#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/matcore/toeplitz.hpp"

namespace cpqls::io {

enum class MarketLayout { array, coordinate };

// Matrix Market: reads coordinate or array; real, integer, complex or
// pattern; general, symmetric, skew-symmetric or hermitian. Only square
// matrices are accepted.
DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(std::ostream& out, const DenseMatrix& a,
                         MarketLayout layout = MarketLayout::array);

// Column vectors in Matrix Market array form (n x 1).
CVector read_vector_market(std::istream& in);

// {"n": int, "rows": [[re, im], ...]} with n*n entries in row-major order.
nlohmann::json matrix_to_json(const DenseMatrix& a);
DenseMatrix matrix_from_json(const nlohmann::json& j);

// {"values": [[re, im], ...]}
nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

// {"coeffs": {"-1": [re, im], "0": [re, im], ...}}
nlohmann::json symbol_to_json(const SymbolSpec& s);
SymbolSpec symbol_from_json(const nlohmann::json& j);

// {"n": int, "t": {"-2": [re, im], ..., "2": [re, im]}}
nlohmann::json toeplitz_to_json(const ToeplitzSpec& t);
ToeplitzSpec toeplitz_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace cpqls::io
