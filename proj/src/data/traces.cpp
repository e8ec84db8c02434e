#include "esncache/data/traces.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "esncache/core/error.hpp"

namespace esncache {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::size_t parse_count(std::string_view field, std::size_t line, std::size_t column) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    throw ParseError(line, column, "expected a non-negative integer, got '" + std::string(field) + "'");
  return v;
}

double parse_real(std::string_view field, std::size_t line, std::size_t column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v))
    throw ParseError(line, column, "expected a finite number, got '" + std::string(field) + "'");
  return v;
}

}  // namespace

TraceStream parse_traces(std::istream& in, TraceKind kind, double radius_m) {
  TraceStream stream{kind, {}, {}};
  const std::string_view header = kind == TraceKind::Content ? kContentTraceHeader : kMobilityTraceHeader;
  const std::size_t width = split(header).size();

  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!seen_header) {
      if (line.empty()) continue;
      if (line != header) throw ParseError(line_no, 1, "header must be '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != width)
      throw ParseError(line_no, std::min(fields.size(), width) + 1,
                       "expected " + std::to_string(width) + " columns, found " + std::to_string(fields.size()));

    if (kind == TraceKind::Content) {
      ContentTraceRecord r;
      r.user_id = parse_count(fields[0], line_no, 1);
      r.slot = parse_count(fields[1], line_no, 2);
      for (std::size_t c = 0; c < r.context.size(); ++c) {
        r.context[c] = parse_real(fields[2 + c], line_no, 3 + c);
        if (r.context[c] < 0.0 || r.context[c] > 1.0)
          throw ValidationError(line_no, "context column " + std::to_string(3 + c) + " outside [0, 1]");
      }
      r.content_id = parse_count(fields[9], line_no, 10);
      if (r.content_id == 0) throw ValidationError(line_no, "content ids start at 1");
      stream.content.push_back(r);
    } else {
      MobilityTraceRecord r;
      r.user_id = parse_count(fields[0], line_no, 1);
      r.t = parse_count(fields[1], line_no, 2);
      r.x_m = parse_real(fields[2], line_no, 3);
      r.y_m = parse_real(fields[3], line_no, 4);
      if (std::hypot(r.x_m, r.y_m) > radius_m * (1.0 + 1e-12))
        throw ValidationError(line_no, "coordinate outside the disk of radius " + fmt::format("{}", radius_m));
      stream.mobility.push_back(r);
    }
  }
  return stream;
}

TraceStream load_traces(const std::filesystem::path& path, TraceKind kind, double radius_m) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file " + path.string());
  return parse_traces(in, kind, radius_m);
}

void write_content_trace(std::ostream& out, const std::vector<ContentTraceRecord>& records) {
  out << kContentTraceHeader << '\n';
  for (const auto& r : records) {
    out << fmt::format("{},{}", r.user_id, r.slot);
    for (double c : r.context) out << fmt::format(",{}", c);
    out << fmt::format(",{}\n", r.content_id);
  }
}

void write_mobility_trace(std::ostream& out, const std::vector<MobilityTraceRecord>& records) {
  out << kMobilityTraceHeader << '\n';
  for (const auto& r : records) out << fmt::format("{},{},{},{}\n", r.user_id, r.t, r.x_m, r.y_m);
}

}  // namespace esncache
