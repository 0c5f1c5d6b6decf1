#pragma once

// Plain-text matrix documents.
//
//   # comment
//   matrix 2          (square; "matrix <rows> <cols>" for a rectangular one)
//   role x            (optional label)
//   1      0.5,-1
//   0.5,1  2
//
// Entries are "re" or "re,im".  A file may hold several matrices one after
// another.  Blank lines and text after '#' are ignored.

#include <istream>
#include <string>
#include <vector>

#include "opineq/linalg.hpp"

namespace opineq {

struct MatrixRecord {
  std::string role;
  Matrix entries;
  std::size_t line = 0;  // line of the header

  bool square() const { return entries.rows() == entries.cols(); }
  // Symmetrized; throws DimensionError for a non-square record.
  HermitianMatrix hermitian() const;
};

// Throws ParseError with the offending line and column.
std::vector<MatrixRecord> parse_matrix_text(std::istream& in);
std::vector<MatrixRecord> parse_matrix_text(const std::string& text);
// ParseError at 0:0 when the file cannot be opened.
std::vector<MatrixRecord> read_matrix_file(const std::string& path);

std::string format_matrix(const Matrix& m, const std::string& role = "");

}  // namespace opineq
