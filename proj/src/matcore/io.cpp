#include "cpqls/matcore/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cpqls/matcore/error.hpp"

namespace cpqls::io {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct MarketHeader {
  std::string layout;    // array | coordinate
  std::string field;     // real | integer | complex | pattern
  std::string symmetry;  // general | symmetric | skew-symmetric | hermitian
};

MarketHeader parse_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::parse, "matrix market: empty input");
  std::istringstream ss(line);
  std::string banner, object, layout, field, symmetry;
  ss >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    throw Error(ErrorKind::parse, "matrix market: missing '%%MatrixMarket matrix' banner");
  MarketHeader h{lower(layout), lower(field), lower(symmetry)};
  if (h.layout != "array" && h.layout != "coordinate")
    throw Error(ErrorKind::parse, "matrix market: unsupported layout '" + layout + "'");
  if (h.field != "real" && h.field != "integer" && h.field != "complex" && h.field != "pattern")
    throw Error(ErrorKind::parse, "matrix market: unsupported field '" + field + "'");
  if (h.symmetry != "general" && h.symmetry != "symmetric" && h.symmetry != "skew-symmetric" &&
      h.symmetry != "hermitian")
    throw Error(ErrorKind::parse, "matrix market: unsupported symmetry '" + symmetry + "'");
  if (h.layout == "array" && h.field == "pattern")
    throw Error(ErrorKind::parse, "matrix market: pattern field requires coordinate layout");
  return h;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

cplx read_value(std::istringstream& ss, const std::string& field) {
  double re = 0.0, im = 0.0;
  if (field == "pattern") return 1.0;
  if (!(ss >> re)) throw Error(ErrorKind::parse, "matrix market: malformed value");
  if (field == "complex" && !(ss >> im)) throw Error(ErrorKind::parse, "matrix market: missing imaginary part");
  return {re, im};
}

void mirror(CMatrix& m, Index i, Index j, cplx value, const std::string& symmetry) {
  if (i == j) return;
  if (symmetry == "symmetric") m(j, i) = value;
  else if (symmetry == "skew-symmetric") m(j, i) = -value;
  else if (symmetry == "hermitian") m(j, i) = std::conj(value);
}

CMatrix read_market_entries(std::istream& in, Index& rows, Index& cols) {
  const MarketHeader h = parse_header(in);
  std::string line;
  if (!next_data_line(in, line)) throw Error(ErrorKind::parse, "matrix market: missing size line");
  std::istringstream size_line(line);
  Index nnz = 0;
  if (!(size_line >> rows >> cols) || rows <= 0 || cols <= 0)
    throw Error(ErrorKind::parse, "matrix market: malformed size line");
  if (h.layout == "coordinate" && !(size_line >> nnz))
    throw Error(ErrorKind::parse, "matrix market: coordinate size line needs an entry count");
  if (h.symmetry != "general" && rows != cols)
    throw Error(ErrorKind::parse, "matrix market: symmetric storage requires a square matrix");

  CMatrix m = CMatrix::Zero(rows, cols);
  if (h.layout == "array") {
    // Column-major; symmetric variants store the lower triangle only.
    for (Index j = 0; j < cols; ++j) {
      const Index start = h.symmetry == "general" ? 0 : (h.symmetry == "skew-symmetric" ? j + 1 : j);
      for (Index i = start; i < rows; ++i) {
        if (!next_data_line(in, line)) throw Error(ErrorKind::parse, "matrix market: truncated array data");
        std::istringstream ss(line);
        const cplx value = read_value(ss, h.field);
        m(i, j) = value;
        mirror(m, i, j, value, h.symmetry);
      }
    }
  } else {
    for (Index e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line)) throw Error(ErrorKind::parse, "matrix market: truncated coordinate data");
      std::istringstream ss(line);
      Index i = 0, j = 0;
      if (!(ss >> i >> j)) throw Error(ErrorKind::parse, "matrix market: malformed coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw Error(ErrorKind::parse, "matrix market: coordinate entry out of range");
      const cplx value = read_value(ss, h.field);
      m(i - 1, j - 1) += value;
      mirror(m, i - 1, j - 1, value, h.symmetry);
    }
  }
  if (!all_finite(m)) throw Error(ErrorKind::parse, "matrix market: non-finite value");
  return m;
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return ss.str();
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in) {
  Index rows = 0, cols = 0;
  CMatrix m = read_market_entries(in, rows, cols);
  if (rows != cols) throw Error(ErrorKind::parse, "matrix market: expected a square matrix");
  return DenseMatrix(std::move(m));
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return read_matrix_market(in);
}

CVector read_vector_market(std::istream& in) {
  Index rows = 0, cols = 0;
  CMatrix m = read_market_entries(in, rows, cols);
  if (cols != 1) throw Error(ErrorKind::parse, "matrix market: expected a single column vector");
  return m.col(0);
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a, MarketLayout layout) {
  const Index n = a.n();
  out << "%%MatrixMarket matrix " << (layout == MarketLayout::array ? "array" : "coordinate")
      << " complex general\n";
  if (layout == MarketLayout::array) {
    out << n << ' ' << n << '\n';
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        out << format_double(a(i, j).real()) << ' ' << format_double(a(i, j).imag()) << '\n';
    return;
  }
  Index nnz = 0;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (a(i, j) != cplx(0.0)) ++nnz;
  out << n << ' ' << n << ' ' << nnz << '\n';
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (a(i, j) != cplx(0.0))
        out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j).real()) << ' '
            << format_double(a(i, j).imag()) << '\n';
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::parse, "expected a complex value as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix_to_json(const DenseMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < a.n(); ++i)
    for (Index j = 0; j < a.n(); ++j) rows.push_back(complex_to_json(a(i, j)));
  return {{"n", a.n()}, {"rows", rows}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw Error(ErrorKind::parse, "matrix json: expected keys 'n' and 'rows'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0)
    throw Error(ErrorKind::parse, "matrix json: 'n' must be a positive integer");
  const Index n = j["n"].get<Index>();
  const auto& rows = j["rows"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n * n)
    throw Error(ErrorKind::parse, "matrix json: 'rows' must hold n*n entries");
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) m(i, k) = complex_from_json(rows[static_cast<std::size_t>(i * n + k)]);
  if (!all_finite(m)) throw Error(ErrorKind::parse, "matrix json: non-finite value");
  return DenseMatrix(std::move(m));
}

nlohmann::json vector_to_json(const CVector& v) {
  nlohmann::json values = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) values.push_back(complex_to_json(v(i)));
  return {{"values", values}};
}

CVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array() || j["values"].empty())
    throw Error(ErrorKind::parse, "vector json: expected a nonempty 'values' array");
  const auto& values = j["values"];
  CVector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(values[i]);
  return v;
}

namespace {

int parse_offset(const std::string& key) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "expected an integer diagonal index, got '" + key + "'");
  }
  if (used != key.size()) throw Error(ErrorKind::parse, "expected an integer diagonal index, got '" + key + "'");
  return k;
}

}  // namespace

nlohmann::json symbol_to_json(const SymbolSpec& s) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [k, value] : s.coeffs) coeffs[std::to_string(k)] = complex_to_json(value);
  return {{"coeffs", coeffs}};
}

SymbolSpec symbol_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
    throw Error(ErrorKind::parse, "symbol json: expected an object 'coeffs'");
  SymbolSpec s;
  for (const auto& [key, value] : j["coeffs"].items()) s.coeffs[parse_offset(key)] = complex_from_json(value);
  return s;
}

nlohmann::json toeplitz_to_json(const ToeplitzSpec& t) {
  nlohmann::json diags = nlohmann::json::object();
  for (Index k = 1 - t.n(); k <= t.n() - 1; ++k) diags[std::to_string(k)] = complex_to_json(t.t(k));
  return {{"n", t.n()}, {"t", diags}};
}

ToeplitzSpec toeplitz_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("t") || !j["t"].is_object())
    throw Error(ErrorKind::parse, "toeplitz json: expected keys 'n' and 't'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0)
    throw Error(ErrorKind::parse, "toeplitz json: 'n' must be a positive integer");
  std::map<int, cplx> t;
  for (const auto& [key, value] : j["t"].items()) t[parse_offset(key)] = complex_from_json(value);
  try {
    return ToeplitzSpec::from_map(j["n"].get<Index>(), t);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("toeplitz json: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

}  // namespace cpqls::io
