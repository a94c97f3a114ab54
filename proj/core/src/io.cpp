#include "irsvm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irsvm::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid number '" + std::string(tok) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + std::string(tok) + "'", line);
  return v;
}

Index parse_index(std::string_view tok, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
    throw ParseError("invalid index '" + std::string(tok) + "'", line);
  }
  return static_cast<Index>(v);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

CompletionProblem parse_problem(std::istream& in, std::optional<Index> rows,
                                std::optional<Index> cols) {
  if ((rows && *rows <= 0) || (cols && *cols <= 0)) {
    throw DomainError("parse_problem: dimensions must be positive");
  }
  std::vector<Observation> observed;
  std::set<std::pair<Index, Index>> seen;
  Index max_row = -1;
  Index max_col = -1;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto tokens = split_ws(line);
    if (tokens.size() != 3) {
      throw ParseError("expected 'i j value', got " + std::to_string(tokens.size()) + " fields",
                       line_no);
    }
    const Index i = parse_index(tokens[0], line_no);
    const Index j = parse_index(tokens[1], line_no);
    const double v = parse_double(tokens[2], line_no);
    if ((rows && i >= *rows) || (cols && j >= *cols)) {
      throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") out of bounds",
                       line_no);
    }
    if (!seen.emplace(i, j).second) {
      throw ParseError("duplicate index (" + std::to_string(i) + ", " + std::to_string(j) + ")",
                       line_no);
    }
    max_row = std::max(max_row, i);
    max_col = std::max(max_col, j);
    observed.push_back({i, j, v});
  }
  if (in.bad()) throw IoError("read failure");

  const Index m = rows.value_or(max_row + 1);
  const Index n = cols.value_or(max_col + 1);
  if (m <= 0 || n <= 0) {
    throw ParseError("cannot infer dimensions from an empty triplet file; pass them explicitly",
                     0);
  }
  return CompletionProblem(m, n, std::move(observed));
}

CompletionProblem load_problem(const std::filesystem::path& path, std::optional<Index> rows,
                               std::optional<Index> cols) {
  auto in = open_in(path);
  return parse_problem(in, rows, cols);
}

void write_problem(std::ostream& out, const CompletionProblem& problem) {
  out << "# " << problem.rows() << " x " << problem.cols() << ", " << problem.num_observed()
      << " observed entries\n";
  out << std::setprecision(17);
  for (const auto& o : problem.observed()) out << o.row << ' ' << o.col << ' ' << o.value << '\n';
}

void save_problem(const CompletionProblem& problem, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_problem(out, problem);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string_view field =
          trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                : comma - pos));
      if (field.empty()) throw ParseError("empty field", line_no);
      row.push_back(parse_double(field, line_no));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("read failure");
  if (rows.empty()) throw ParseError("empty matrix file", 0);

  Matrix X(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) X(i, j) = rows[i][j];
  }
  return X;
}

void write_matrix_csv(std::ostream& out, const Matrix& X) {
  const auto old = out.precision(17);
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (j > 0) out << ',';
      out << X(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

Matrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_csv(in);
}

void save_matrix(const Matrix& X, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix_csv(out, X);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace irsvm::harness
