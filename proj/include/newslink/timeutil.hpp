#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace newslink {

// UTC instant with second resolution. Stored as seconds since the Unix epoch.
struct UtcTime {
  std::int64_t epoch_seconds = 0;

  friend bool operator==(const UtcTime&, const UtcTime&) = default;
  friend auto operator<=>(const UtcTime&, const UtcTime&) = default;
};

// Parses ISO-8601 timestamps: "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS",
// "YYYY-MM-DD HH:MM:SS", optional fractional seconds (ignored), optional
// zone suffix "Z", "+HH:MM", "+HHMM" or "+HH". Zoneless input is taken as
// UTC. Returns nullopt on malformed input.
std::optional<UtcTime> parse_iso8601(const std::string& text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(UtcTime t);

// Signed difference (a - b) in fractional days.
double days_between(UtcTime a, UtcTime b);

}  // namespace newslink
