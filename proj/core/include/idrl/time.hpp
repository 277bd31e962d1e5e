#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace idrl {

// UTC timestamps as seconds since the Unix epoch.
using UnixTime = std::int64_t;

constexpr std::int64_t kSecondsPerMinute = 60;
constexpr std::int64_t kSecondsPerHour = 3600;

UnixTime make_utc(int year, int month, int day, int hour = 0, int minute = 0,
                  int second = 0);

// Accepts "YYYY-MM-DD", "YYYY-MM-DD HH:MM[:SS]" and "YYYY-MM-DDTHH:MM[:SS][Z]".
// Fractional seconds are truncated. Throws ParseError on anything else.
UnixTime parse_utc(std::string_view text);

std::string format_utc(UnixTime t);          // 2018-09-18T23:00:00Z
std::string format_utc_compact(UnixTime t);  // 20180918T2300 (file names)

}  // namespace idrl
