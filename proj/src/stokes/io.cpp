#include "lagrange/stokes/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::stokes {

namespace {

constexpr const char* kFieldHeader = "kind,i,j,x,y,value";
constexpr const char* kConvergenceHeader = "n,h,l2_u,l2_p,linf_u,order_u,order_p";
constexpr const char* kInfSupHeader = "n,h,beta";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not a number", line);
  }
  return v;
}

std::size_t parse_index(const std::string& s, std::size_t line) {
  const double v = parse_double(s, line);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not an index", line);
  }
  return static_cast<std::size_t>(v);
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ParseError(std::string("line 1: expected header '") + header + "'", 1);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

template <class F>
auto with_path(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_fields_csv(std::ostream& out, const VelocityField& u, const PressureField& p) {
  const MacGrid& g = u.grid;
  const std::size_t n = g.n();
  out << kFieldHeader << '\n';
  auto row = [&](char kind, std::size_t i, std::size_t j, Point q, double v) {
    out << kind << ',' << i << ',' << j << ',' << num(q.x) << ',' << num(q.y) << ',' << num(v)
        << '\n';
  };
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row('u', i, j, g.u_position(i, j), u.u(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) row('v', i, j, g.v_position(i, j), u.v(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row('p', i, j, p.grid.p_position(i, j), p.p(i, j));
}

void write_fields_csv(const std::filesystem::path& path, const VelocityField& u,
                      const PressureField& p) {
  std::ofstream out = open_out(path);
  write_fields_csv(out, u, p);
}

std::vector<FieldRecord> read_fields_csv(std::istream& in) {
  expect_header(in, kFieldHeader);
  std::vector<FieldRecord> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 6 columns", lineno);
    }
    if (cells[0] != "u" && cells[0] != "v" && cells[0] != "p") {
      throw ParseError("line " + std::to_string(lineno) + ": unknown kind '" + cells[0] + "'",
                       lineno);
    }
    out.push_back({cells[0][0], parse_index(cells[1], lineno), parse_index(cells[2], lineno),
                   parse_double(cells[3], lineno), parse_double(cells[4], lineno),
                   parse_double(cells[5], lineno)});
  }
  return out;
}

std::vector<FieldRecord> read_fields_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return with_path(path, [&] { return read_fields_csv(in); });
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << kConvergenceHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << num(r.h) << ',' << num(r.errors.l2_u) << ',' << num(r.errors.l2_p) << ','
        << num(r.errors.linf_u) << ',' << (r.order_u ? num(*r.order_u) : "") << ','
        << (r.order_p ? num(*r.order_p) : "") << '\n';
  }
}

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows) {
  std::ofstream out = open_out(path);
  write_convergence_csv(out, rows);
}

std::vector<ConvergenceRow> read_convergence_csv(std::istream& in) {
  expect_header(in, kConvergenceHeader);
  std::vector<ConvergenceRow> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 7) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 7 columns", lineno);
    }
    ConvergenceRow r;
    r.n = parse_index(cells[0], lineno);
    r.h = parse_double(cells[1], lineno);
    r.errors = {parse_double(cells[2], lineno), parse_double(cells[3], lineno),
                parse_double(cells[4], lineno)};
    if (!cells[5].empty()) r.order_u = parse_double(cells[5], lineno);
    if (!cells[6].empty()) r.order_p = parse_double(cells[6], lineno);
    out.push_back(r);
  }
  return out;
}

std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return with_path(path, [&] { return read_convergence_csv(in); });
}

void write_infsup_csv(std::ostream& out, const std::vector<InfSupRow>& rows) {
  out << kInfSupHeader << '\n';
  for (const auto& r : rows) out << r.n << ',' << num(r.h) << ',' << num(r.beta) << '\n';
}

void write_infsup_csv(const std::filesystem::path& path, const std::vector<InfSupRow>& rows) {
  std::ofstream out = open_out(path);
  write_infsup_csv(out, rows);
}

std::vector<InfSupRow> read_infsup_csv(std::istream& in) {
  expect_header(in, kInfSupHeader);
  std::vector<InfSupRow> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 3 columns", lineno);
    }
    out.push_back({parse_index(cells[0], lineno), parse_double(cells[1], lineno),
                   parse_double(cells[2], lineno)});
  }
  return out;
}

std::vector<InfSupRow> read_infsup_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return with_path(path, [&] { return read_infsup_csv(in); });
}

}  // namespace lagrange::stokes
