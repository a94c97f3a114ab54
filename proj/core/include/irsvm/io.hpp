#pragma once

#include "irsvm/objective.hpp"
#include "irsvm/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace irsvm::harness {

// Triplet format: one "i j value" per line, 0-based indices, '#' starts a comment.
// Dense format: CSV, one matrix row per line, values printed with 17 significant digits.

/// When rows/cols are not given they are inferred as max index + 1.
CompletionProblem parse_problem(std::istream& in, std::optional<Index> rows = std::nullopt,
                                std::optional<Index> cols = std::nullopt);
CompletionProblem load_problem(const std::filesystem::path& path,
                               std::optional<Index> rows = std::nullopt,
                               std::optional<Index> cols = std::nullopt);

void write_problem(std::ostream& out, const CompletionProblem& problem);
void save_problem(const CompletionProblem& problem, const std::filesystem::path& path);

Matrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Matrix& X);

Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const Matrix& X, const std::filesystem::path& path);

}  // namespace irsvm::harness
