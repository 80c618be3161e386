#include "ddiag/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ddiag/error.hpp"

namespace ddiag::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string where(const std::string& source, std::size_t line, std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

TableFile parse_table(std::string_view text, TableKind kind, const std::string& source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (!trim(raw).empty()) lines.emplace_back(line_no, raw);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::ParseError, source + ": empty table");

  TableFile table;
  table.kind = kind;

  const auto header = split_fields(lines.front().second);
  const std::size_t header_line = lines.front().first;
  if (!header.front().empty() && header.front() != "id") {
    throw Error(ErrorCode::ParseError,
                where(source, header_line, 1) + ": first header cell must be blank or \"id\"");
  }
  if (header.size() < 2) {
    throw Error(ErrorCode::ParseError, where(source, header_line, 2) + ": no data columns");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j].empty()) {
      throw Error(ErrorCode::ParseError, where(source, header_line, j + 1) + ": empty column id");
    }
    std::string id(header[j]);
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, where(source, header_line, j + 1) +
                                              ": duplicate column id '" + id + "'");
    }
    table.col_ids.push_back(std::move(id));
  }

  const std::size_t p = table.col_ids.size();
  const std::size_t n = lines.size() - 1;
  if (n == 0) throw Error(ErrorCode::ParseError, source + ": table has no data rows");
  table.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  seen.clear();

  for (std::size_t i = 0; i < n; ++i) {
    const auto [ln, raw] = lines[i + 1];
    const auto fields = split_fields(raw);
    if (fields.size() != p + 1) {
      throw Error(ErrorCode::ParseError, where(source, ln, std::min(fields.size(), p + 1) + 1) +
                                             ": expected " + std::to_string(p + 1) +
                                             " fields, found " + std::to_string(fields.size()));
    }
    if (fields.front().empty()) {
      throw Error(ErrorCode::ParseError, where(source, ln, 1) + ": empty row id");
    }
    std::string id(fields.front());
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, where(source, ln, 1) + ": duplicate row id '" + id + "'");
    }
    table.row_ids.push_back(std::move(id));

    for (std::size_t j = 0; j < p; ++j) {
      const std::string_view cell = fields[j + 1];
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec == std::errc::result_out_of_range && ptr == last) {
        throw Error(ErrorCode::NonFiniteValue, where(source, ln, j + 2) + ": value '" +
                                                   std::string(cell) + "' overflows a double");
      }
      if (cell.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::ParseError, where(source, ln, j + 2) + ": cannot parse '" +
                                               std::string(cell) + "' as a number");
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFiniteValue,
                    where(source, ln, j + 2) + ": non-finite value '" + std::string(cell) + "'");
      }
      if (kind == TableKind::counts) {
        if (value != std::floor(value)) {
          throw Error(ErrorCode::NonIntegerCount, where(source, ln, j + 2) +
                                                     ": count '" + std::string(cell) +
                                                     "' is not an integer");
        }
        if (value < 0.0) {
          throw Error(ErrorCode::NegativeCount, where(source, ln, j + 2) + ": count '" +
                                                    std::string(cell) + "' is negative");
        }
      }
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    }
  }
  return table;
}

TableFile load_table(const std::filesystem::path& path, TableKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), kind, path.string());
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round_printed(double value) { return std::stod(format_number(value)); }

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& row_ids,
                 const std::vector<std::string>& col_ids, const Matrix& values,
                 std::string_view corner) {
  std::string text(corner);
  for (const auto& c : col_ids) text += "," + c;
  text += "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    text += row_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j) text += "," + format_number(values(i, j));
    text += "\n";
  }
  write_text(path, text);
}

}  // namespace ddiag::io
