#include "idrl/time.hpp"

#include <array>
#include <cstdio>

#include "idrl/errors.hpp"

namespace idrl {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  int year;
  unsigned month, day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), m, d};
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

UnixTime make_utc(int year, int month, int day, int hour, int minute,
                  int second) {
  return days_from_civil(year, static_cast<unsigned>(month),
                         static_cast<unsigned>(day)) *
             86400 +
         hour * 3600 + minute * 60 + second;
}

UnixTime parse_utc(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&]() -> UnixTime {
    throw ParseError("bad UTC timestamp '" + std::string(original) + "'");
  };

  if (text.size() < 10) fail();
  std::string_view ys = text.substr(0, 4);
  std::string_view ms = text.substr(5, 2);
  std::string_view ds = text.substr(8, 2);
  if (text[4] != '-' || text[7] != '-' || !all_digits(ys) || !all_digits(ms) ||
      !all_digits(ds)) {
    fail();
  }
  int year = to_int(ys);
  int month = to_int(ms);
  int day = to_int(ds);
  if (month < 1 || month > 12 || day < 1 || day > 31) fail();

  int hour = 0, minute = 0, second = 0;
  if (text.size() > 10) {
    if (text[10] != 'T' && text[10] != ' ') fail();
    std::string_view rest = text.substr(11);
    if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
    if (rest.size() >= 5 && rest[2] == ':' && all_digits(rest.substr(0, 2)) &&
        all_digits(rest.substr(3, 2))) {
      hour = to_int(rest.substr(0, 2));
      minute = to_int(rest.substr(3, 2));
    } else {
      fail();
    }
    if (rest.size() > 5) {
      if (rest[5] != ':' || rest.size() < 8 || !all_digits(rest.substr(6, 2)))
        fail();
      second = to_int(rest.substr(6, 2));
      // trailing fractional seconds are accepted and truncated
      if (rest.size() > 8 && rest[8] != '.') fail();
    }
    if (hour > 23 || minute > 59 || second > 60) fail();
  }
  return make_utc(year, month, day, hour, minute, second);
}

std::string format_utc(UnixTime t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) {
    sod += 86400;
    days -= 1;
  }
  const Civil c = civil_from_days(days);
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                c.year, c.month, c.day, static_cast<int>(sod / 3600),
                static_cast<int>((sod % 3600) / 60), static_cast<int>(sod % 60));
  return buf.data();
}

std::string format_utc_compact(UnixTime t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) {
    sod += 86400;
    days -= 1;
  }
  const Civil c = civil_from_days(days);
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d%02u%02uT%02d%02d", c.year,
                c.month, c.day, static_cast<int>(sod / 3600),
                static_cast<int>((sod % 3600) / 60));
  return buf.data();
}

}  // namespace idrl
