#pragma once

#include <filesystem>
#include <iosfwd>

#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

/// Reads `%%MatrixMarket matrix coordinate real|integer general|symmetric`.
/// Indices are 1-based; symmetric files list one triangle and are mirrored.
/// Throws ParseError carrying the offending 1-based line number.
SparseOperator read_matrix_market(std::istream& in);
SparseOperator read_matrix_market(const std::filesystem::path& path);

/// Writes coordinate format. Symmetric operators are written as their lower
/// triangle with the `symmetric` qualifier. Values use 17 significant digits
/// so that a read-back is bit-exact.
void write_matrix_market(std::ostream& out, const SparseOperator& op);
void write_matrix_market(const std::filesystem::path& path, const SparseOperator& op);

/// One value per line; blank lines and lines starting with '#' or '%' are
/// skipped.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);
void write_vector(std::ostream& out, const Vector& v);
void write_vector(const std::filesystem::path& path, const Vector& v);

}  // namespace lagrange::linalg
