#pragma once
// JSON serialization for reports.  Intervals serialize as {"lo": ..,
// "hi": ..} with shortest round-trip decimals (the JSON library emits
// Grisu-style shortest forms), and every report embeds the run configuration
// plus the inputs-table hash so drift in the pinned constants is detectable.

#include <logsieve/inputs.hpp>
#include <logsieve/interval.hpp>
#include <logsieve/primes.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <string>

namespace logsieve {

using json = nlohmann::json;

inline json to_json(const interval& x) { return json{{"lo", x.lo}, {"hi", x.hi}}; }

struct run_config {
  std::string command;
  u64 cutoff = 0;
  u64 segment = 0;
  int threads = 1;
  std::string format = "text";
  std::string checkpoint;

  json header(bool with_timestamp = true) const {
    json h{{"command", command},
           {"threads", threads},
           {"format", format},
           {"inputs_hash", [] {
              char buf[24];
              std::snprintf(buf, sizeof buf, "%016llx",
                            static_cast<unsigned long long>(inputs::table_hash()));
              return std::string(buf);
            }()}};
    if (cutoff) h["cutoff"] = cutoff;
    if (segment) h["segment"] = segment;
    if (!checkpoint.empty()) h["checkpoint"] = checkpoint;
    if (with_timestamp) {
      auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
      h["timestamp"] = buf;
    }
    return h;
  }
};

}  // namespace logsieve
