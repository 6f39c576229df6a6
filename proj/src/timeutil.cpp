#include "newslink/timeutil.hpp"

#include <cctype>
#include <cstdio>

namespace newslink {
namespace {

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

bool valid_date(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int max_d = dim[m - 1];
  if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) max_d = 29;
  return d <= max_d;
}

}  // namespace

std::optional<UtcTime> parse_iso8601(const std::string& text) {
  const char* p = text.c_str();
  auto read_digits = [&](int n, int& out) -> bool {
    out = 0;
    for (int i = 0; i < n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(*p))) return false;
      out = out * 10 + (*p - '0');
      ++p;
    }
    return true;
  };

  int year, month, day;
  if (!read_digits(4, year)) return std::nullopt;
  if (*p != '-') return std::nullopt;
  ++p;
  if (!read_digits(2, month)) return std::nullopt;
  if (*p != '-') return std::nullopt;
  ++p;
  if (!read_digits(2, day)) return std::nullopt;
  if (!valid_date(year, month, day)) return std::nullopt;

  int hour = 0, minute = 0, second = 0;
  int offset_seconds = 0;
  if (*p == 'T' || *p == 't' || *p == ' ') {
    ++p;
    if (!read_digits(2, hour)) return std::nullopt;
    if (*p != ':') return std::nullopt;
    ++p;
    if (!read_digits(2, minute)) return std::nullopt;
    if (*p == ':') {
      ++p;
      if (!read_digits(2, second)) return std::nullopt;
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (second == 60) second = 59;  // leap second, clamp
    if (*p == '.') {               // fractional seconds ignored
      ++p;
      if (!std::isdigit(static_cast<unsigned char>(*p))) return std::nullopt;
      while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
    }
    if (*p == 'Z' || *p == 'z') {
      ++p;
    } else if (*p == '+' || *p == '-') {
      const int sign = (*p == '+') ? 1 : -1;
      ++p;
      int oh = 0, om = 0;
      if (!read_digits(2, oh)) return std::nullopt;
      if (*p == ':') {
        ++p;
        if (!read_digits(2, om)) return std::nullopt;
      } else if (std::isdigit(static_cast<unsigned char>(*p))) {
        if (!read_digits(2, om)) return std::nullopt;
      }
      if (oh > 14 || om > 59) return std::nullopt;
      offset_seconds = sign * (oh * 3600 + om * 60);
    }
  }
  if (*p != '\0') return std::nullopt;

  const std::int64_t days = days_from_civil(year, month, day);
  UtcTime t;
  t.epoch_seconds = days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
  return t;
}

std::string format_iso8601(UtcTime t) {
  std::int64_t days = t.epoch_seconds / 86400;
  std::int64_t rem = t.epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                static_cast<int>(rem % 60));
  return buf;
}

double days_between(UtcTime a, UtcTime b) {
  return static_cast<double>(a.epoch_seconds - b.epoch_seconds) / 86400.0;
}

}  // namespace newslink
