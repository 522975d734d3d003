#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lagrange/stokes/grid.hpp"
#include "lagrange/stokes/solve.hpp"

namespace lagrange::stokes {

/// One row of a field CSV: kind,i,j,x,y,value with kind in {u, v, p}.
struct FieldRecord {
  char kind = 'p';
  std::size_t i = 0;
  std::size_t j = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

void write_fields_csv(std::ostream& out, const VelocityField& u, const PressureField& p);
void write_fields_csv(const std::filesystem::path& path, const VelocityField& u,
                      const PressureField& p);
std::vector<FieldRecord> read_fields_csv(std::istream& in);
std::vector<FieldRecord> read_fields_csv(const std::filesystem::path& path);

/// n,h,l2_u,l2_p,linf_u,order_u,order_p; orders are empty on the first row.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> read_convergence_csv(std::istream& in);
std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& path);

struct InfSupRow {
  std::size_t n = 0;
  double h = 0.0;
  double beta = 0.0;
};

/// n,h,beta
void write_infsup_csv(std::ostream& out, const std::vector<InfSupRow>& rows);
void write_infsup_csv(const std::filesystem::path& path, const std::vector<InfSupRow>& rows);
std::vector<InfSupRow> read_infsup_csv(std::istream& in);
std::vector<InfSupRow> read_infsup_csv(const std::filesystem::path& path);

/// Splits one CSV line on commas (no quoting; the writers never quote).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace lagrange::stokes
