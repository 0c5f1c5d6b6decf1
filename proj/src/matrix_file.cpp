#include "opineq/matrix_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> split(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t end = std::min(line.find('#'), line.size());
  while (i < end) {
    while (i < end && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < end && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

double parse_real(const std::string& s, std::size_t line, std::size_t column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (first == last || res.ec != std::errc() || res.ptr != last) {
    throw ParseError("malformed number '" + s + "'", line, column);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite entry '" + s + "'", line, column);
  return v;
}

Complex parse_entry(const Token& tok, std::size_t line) {
  const auto comma = tok.text.find(',');
  if (comma == std::string::npos) return {parse_real(tok.text, line, tok.column), 0.0};
  return {parse_real(tok.text.substr(0, comma), line, tok.column),
          parse_real(tok.text.substr(comma + 1), line, tok.column + comma + 1)};
}

Eigen::Index parse_size(const Token& tok, std::size_t line) {
  long long v = 0;
  const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size() || v < 1 || v > 4096) {
    throw ParseError("expected a positive size, got '" + tok.text + "'", line, tok.column);
  }
  return static_cast<Eigen::Index>(v);
}

}  // namespace

HermitianMatrix MatrixRecord::hermitian() const {
  if (!square()) throw DimensionError("matrix '" + role + "' is not square");
  return HermitianMatrix(entries);
}

std::vector<MatrixRecord> parse_matrix_text(std::istream& in) {
  std::vector<MatrixRecord> out;
  std::string raw;
  std::size_t line = 0;
  MatrixRecord* current = nullptr;
  Eigen::Index row = 0;
  std::size_t current_line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split(raw);
    if (tokens.empty()) continue;
    const std::string& head = tokens.front().text;

    if (head == "matrix") {
      if (current && row < current->entries.rows()) {
        throw ParseError("matrix ends after " + std::to_string(row) + " of " +
                             std::to_string(current->entries.rows()) + " rows",
                         line, 1);
      }
      if (tokens.size() < 2 || tokens.size() > 3) throw ParseError("expected 'matrix <rows> [<cols>]'", line, 1);
      const Eigen::Index rows = parse_size(tokens[1], line);
      const Eigen::Index cols = tokens.size() == 3 ? parse_size(tokens[2], line) : rows;
      out.push_back(MatrixRecord{"", Matrix::Zero(rows, cols), line});
      current = &out.back();
      current_line = line;
      row = 0;
      continue;
    }
    if (!current) throw ParseError("expected 'matrix <dim>' header", line, tokens.front().column);
    if (head == "role") {
      if (row != 0 || !current->role.empty()) throw ParseError("'role' must follow the header", line, 1);
      if (tokens.size() != 2) throw ParseError("expected 'role <label>'", line, 1);
      current->role = tokens[1].text;
      continue;
    }
    if (row >= current->entries.rows()) {
      throw ParseError("too many rows for the matrix declared on line " + std::to_string(current_line), line,
                       tokens.front().column);
    }
    if (static_cast<Eigen::Index>(tokens.size()) != current->entries.cols()) {
      const std::size_t col = static_cast<Eigen::Index>(tokens.size()) > current->entries.cols()
                                  ? tokens[static_cast<std::size_t>(current->entries.cols())].column
                                  : raw.size() + 1;
      throw ParseError("expected " + std::to_string(current->entries.cols()) + " entries, found " +
                           std::to_string(tokens.size()),
                       line, col);
    }
    for (std::size_t k = 0; k < tokens.size(); ++k)
      current->entries(row, static_cast<Eigen::Index>(k)) = parse_entry(tokens[k], line);
    ++row;
  }
  if (!current) throw ParseError("no matrix found", line + 1, 1);
  if (row < current->entries.rows()) {
    throw ParseError("matrix ends after " + std::to_string(row) + " of " + std::to_string(current->entries.rows()) +
                         " rows",
                     line + 1, 1);
  }
  return out;
}

std::vector<MatrixRecord> parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_text(in);
}

std::vector<MatrixRecord> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  return parse_matrix_text(in);
}

std::string format_matrix(const Matrix& m, const std::string& role) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "matrix " << m.rows();
  if (m.cols() != m.rows()) out << ' ' << m.cols();
  out << '\n';
  if (!role.empty()) out << "role " << role << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k) out << ' ';
      out << m(i, k).real();
      if (m(i, k).imag() != 0.0) out << ',' << m(i, k).imag();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace opineq
