#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ddiag/linalg.hpp"

namespace ddiag::io {

enum class TableKind { continuous, counts };

/// A labelled table read from CSV. Row and column ids are unique; counts
/// tables hold nonnegative integers only.
struct TableFile {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  Matrix values;
  TableKind kind = TableKind::continuous;
};

// CSV contract: comma separated, first row holds column ids (first cell blank
// or "id"), first column holds row ids, '.' decimal point. Errors carry
// 1-based line and column numbers.
TableFile parse_table(std::string_view text, TableKind kind, const std::string& source = "<memory>");

TableFile load_table(const std::filesystem::path& path, TableKind kind);

// 12 significant digits; negative zero prints as 0.
std::string format_number(double value);

// Rounds through format_number so JSON output matches the CSV precision.
double round_printed(double value);

// Writes `values` with a header row ("id", col_ids...) and one line per row.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& row_ids,
                 const std::vector<std::string>& col_ids, const Matrix& values,
                 std::string_view corner = "id");

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace ddiag::io
