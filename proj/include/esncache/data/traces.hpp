#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace esncache {

inline constexpr char kContentTraceHeader[] =
    "user_id,slot,t_hour,weekday,gender,occupation,age,device,reserved,content_id";
inline constexpr char kMobilityTraceHeader[] = "user_id,t,x_m,y_m";

// content_id is 1-based, as in the CSV.
struct ContentTraceRecord {
  std::size_t user_id = 0;
  std::size_t slot = 0;
  std::array<double, 7> context{};
  std::size_t content_id = 1;

  bool operator==(const ContentTraceRecord&) const = default;
};

struct MobilityTraceRecord {
  std::size_t user_id = 0;
  std::size_t t = 0;
  double x_m = 0.0;
  double y_m = 0.0;

  bool operator==(const MobilityTraceRecord&) const = default;
};

enum class TraceKind { Content, Mobility };

struct TraceStream {
  TraceKind kind;
  std::vector<ContentTraceRecord> content;
  std::vector<MobilityTraceRecord> mobility;
};

// Row order is preserved. Malformed rows raise ParseError (line, column);
// mobility points outside the disk of `radius_m` raise ValidationError.
TraceStream load_traces(const std::filesystem::path& path, TraceKind kind, double radius_m = 1000.0);
TraceStream parse_traces(std::istream& in, TraceKind kind, double radius_m = 1000.0);

void write_content_trace(std::ostream& out, const std::vector<ContentTraceRecord>& records);
void write_mobility_trace(std::ostream& out, const std::vector<MobilityTraceRecord>& records);

}  // namespace esncache
