#pragma once

#include <cstdio>
#include <ctime>
#include <string>

namespace msfuzzy {

// Locale-independent number formatting for CSV emission. Reports must be
// byte-identical across runs and thread counts, so all writers funnel
// through these two helpers.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// Wall-clock stamp for run manifests; manifests are the only outputs allowed
// to differ between reruns.
inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace msfuzzy
