#include "lagrange/linalg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

double parse_double(const std::string& token, std::size_t line) {
  // strtod accepts the full textual range (inf/nan included, rejected below).
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw ParseError("line " + std::to_string(line) + ": '" + token +
                         "' is not a real number",
                     line);
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": non-finite value '" + token + "'",
                     line);
  }
  return v;
}

std::size_t parse_index(const std::string& token, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + token +
                         "' is not a non-negative integer",
                     line);
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

SparseOperator read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("line 1: empty Matrix Market file", 1);
  ++line_no;

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
      lower(format) != "coordinate") {
    throw ParseError("line 1: expected '%%MatrixMarket matrix coordinate ...' header", 1);
  }
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer") {
    throw ParseError("line 1: unsupported field '" + field + "' (real or integer)", 1);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError("line 1: unsupported symmetry '" + symmetry +
                         "' (general or symmetric)",
                     1);
  }
  const bool symmetric = symmetry == "symmetric";

  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<Triplet> triplets;
  std::size_t entries = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (!have_size) {
      if (tokens.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": size line must be 'rows cols entries'",
                         line_no);
      }
      rows = parse_index(tokens[0], line_no);
      cols = parse_index(tokens[1], line_no);
      nnz = parse_index(tokens[2], line_no);
      if (symmetric && rows != cols) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": symmetric matrix must be square",
                         line_no);
      }
      triplets.reserve(symmetric ? 2 * nnz : nnz);
      have_size = true;
      continue;
    }
    if (tokens.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": entry must be 'row col value'",
                       line_no);
    }
    const std::size_t i = parse_index(tokens[0], line_no);
    const std::size_t j = parse_index(tokens[1], line_no);
    const double v = parse_double(tokens[2], line_no);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("line " + std::to_string(line_no) + ": index (" + tokens[0] +
                           ", " + tokens[1] + ") outside " + std::to_string(rows) +
                           "x" + std::to_string(cols),
                       line_no);
    }
    if (symmetric && j > i) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": symmetric file must list the lower triangle only",
                       line_no);
    }
    if (++entries > nnz) {
      throw ParseError("line " + std::to_string(line_no) + ": more entries than the " +
                           std::to_string(nnz) + " declared",
                       line_no);
    }
    triplets.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
  }
  if (!have_size) throw ParseError("line " + std::to_string(line_no) + ": missing size line", line_no);
  if (entries != nnz) {
    throw ParseError("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(nnz) + " entries, found " + std::to_string(entries),
                     line_no);
  }
  return SparseOperator::from_triplets(rows, cols, std::move(triplets),
                                       symmetric ? Symmetry::symmetric : Symmetry::general);
}

SparseOperator read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return read_matrix_market(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_matrix_market(std::ostream& out, const SparseOperator& op) {
  const bool symmetric = op.is_symmetric();
  std::vector<Triplet> entries;
  for (const Triplet& t : op.triplets())
    if (!symmetric || t.col <= t.row) entries.push_back(t);
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
      << '\n';
  out << op.rows() << ' ' << op.cols() << ' ' << entries.size() << '\n';
  for (const Triplet& t : entries)
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const SparseOperator& op) {
  std::ofstream out = open_output(path);
  write_matrix_market(out, op);
}

Vector read_vector(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '#' || line[0] == '%') continue;
    std::istringstream fields(line);
    std::string token, extra;
    fields >> token;
    if (fields >> extra) {
      throw ParseError("line " + std::to_string(line_no) + ": expected one value per line",
                       line_no);
    }
    values.push_back(parse_double(token, line_no));
  }
  return Vector(std::move(values));
}

Vector read_vector(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return read_vector(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_vector(std::ostream& out, const Vector& v) {
  for (double x : v) out << format_double(x) << '\n';
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
  std::ofstream out = open_output(path);
  write_vector(out, v);
}

}  // namespace lagrange::linalg
