#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dictlearn/errors.hpp"
#include "dictlearn/io/files.hpp"

namespace dictlearn::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 1;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    fn(line++, trim(text.substr(0, end)));
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
}

int parse_int(std::string_view s, std::size_t line, std::string_view what) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, "invalid " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::string as_text(std::span<const std::byte> bytes) {
  return std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::as_bytes(std::span(text.data(), text.size())));
}

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string s = buffer.str();
  const auto* first = reinterpret_cast<const std::byte*>(s.data());
  return {first, first + s.size()};
}

std::string format_metadata(const Metadata& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata) out += key + "=" + value + "\n";
  return out;
}

Metadata parse_metadata(std::string_view text) {
  Metadata out;
  for_each_line(text, [&](std::size_t line, std::string_view s) {
    if (s.empty() || s.front() == '#') return;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError(line, "expected key=value, got '" + std::string(s) + "'");
    out[std::string(trim(s.substr(0, eq)))] = std::string(trim(s.substr(eq + 1)));
  });
  return out;
}

void write_metadata(const std::filesystem::path& path, const Metadata& metadata) {
  write_file_atomic(path, format_metadata(metadata));
}

Metadata read_metadata(const std::filesystem::path& path) {
  return parse_metadata(as_text(read_file(path)));
}

ClassLabelMap parse_labels_csv(std::string_view text) {
  ClassLabelMap labels;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t line, std::string_view s) {
    if (!header_seen) {
      if (s != "row,col,class") throw ParseError(line, "expected header 'row,col,class'");
      header_seen = true;
      return;
    }
    if (s.empty()) return;
    const std::size_t a = s.find(',');
    const std::size_t b = a == std::string_view::npos ? a : s.find(',', a + 1);
    if (b == std::string_view::npos || s.find(',', b + 1) != std::string_view::npos)
      throw ParseError(line, "expected three fields row,col,class");
    const Anchor anchor{parse_int(s.substr(0, a), line, "row"),
                        parse_int(s.substr(a + 1, b - a - 1), line, "col")};
    const int label = parse_int(s.substr(b + 1), line, "class");
    if (!labels.emplace(anchor, label).second)
      throw ParseError(line, "duplicate label for anchor");
  });
  if (!header_seen) throw ParseError(1, "label file is empty");
  return labels;
}

ClassLabelMap read_labels_csv(const std::filesystem::path& path) {
  return parse_labels_csv(as_text(read_file(path)));
}

std::string format_labels_csv(const ClassLabelMap& labels) {
  std::string out = "row,col,class\n";
  for (const auto& [anchor, label] : labels) {
    out += std::to_string(anchor.row) + "," + std::to_string(anchor.col) + "," +
           std::to_string(label) + "\n";
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace dictlearn::io
