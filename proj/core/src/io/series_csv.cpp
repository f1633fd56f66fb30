#include "dictlearn/io/series_csv.hpp"

#include <charconv>
#include <system_error>

#include "dictlearn/errors.hpp"
#include "dictlearn/io/files.hpp"

namespace dictlearn::io {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r'))
      f.remove_suffix(1);
  }
  return fields;
}

}  // namespace

SeriesTable parse_series_csv(std::string_view text, double sentinel) {
  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const std::size_t end = rest.find('\n');
      lines.push_back(rest.substr(0, end));
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end + 1);
    }
  }
  // Ignore trailing blank lines.
  while (!lines.empty() && split(lines.back()).size() == 1 && split(lines.back())[0].empty())
    lines.pop_back();
  if (lines.empty()) throw ParseError(1, "input is empty; expected header time,series_1,...");

  SeriesTable table;
  const auto header = split(lines[0]);
  if (header.size() < 2 || header[0] != "time")
    throw ParseError(1, "header must be time,<series_1>,...,<series_m>");
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].empty()) throw ParseError(1, "empty series name in header");
    table.names.emplace_back(header[i]);
  }

  const auto m = static_cast<Eigen::Index>(table.names.size());
  const auto T = static_cast<Eigen::Index>(lines.size() - 1);
  table.values = Matrix::Constant(m, T, sentinel);
  table.observed = Mask::Constant(m, T, false);
  table.times.reserve(static_cast<std::size_t>(T));

  for (Eigen::Index t = 0; t < T; ++t) {
    const std::size_t line_no = static_cast<std::size_t>(t) + 2;
    const auto fields = split(lines[static_cast<std::size_t>(t) + 1]);
    if (static_cast<Eigen::Index>(fields.size()) != m + 1) {
      throw ParseError(line_no, "expected " + std::to_string(m + 1) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    table.times.emplace_back(fields[0]);
    for (Eigen::Index s = 0; s < m; ++s) {
      const std::string_view cell = fields[static_cast<std::size_t>(s) + 1];
      if (cell.empty()) continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError(line_no, "invalid number '" + std::string(cell) + "'");
      if (v == sentinel) continue;
      table.values(s, t) = v;
      table.observed(s, t) = true;
    }
  }
  return table;
}

SeriesTable read_series_csv(const std::filesystem::path& path, double sentinel) {
  const std::vector<std::byte> bytes = read_file(path);
  return parse_series_csv(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), sentinel);
}

std::string format_series_csv(const std::vector<std::string>& times,
                              const std::vector<std::string>& names, const Matrix& values,
                              const Mask& present) {
  if (values.rows() != static_cast<Eigen::Index>(names.size()) ||
      values.cols() != static_cast<Eigen::Index>(times.size()) ||
      present.rows() != values.rows() || present.cols() != values.cols())
    throw ShapeError("series table dimensions disagree");
  std::string out = "time";
  for (const auto& name : names) out += "," + name;
  out += "\n";
  for (Eigen::Index t = 0; t < values.cols(); ++t) {
    out += times[static_cast<std::size_t>(t)];
    for (Eigen::Index s = 0; s < values.rows(); ++s) {
      out += ",";
      if (present(s, t)) out += format_double(values(s, t));
    }
    out += "\n";
  }
  return out;
}

}  // namespace dictlearn::io
