#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "carpet/bundle_map.hpp"
#include "carpet/carpet.hpp"
#include "carpet/components.hpp"
#include "carpet/tree.hpp"

namespace carpet {

/// {"n": int, "m": int, "digits": [[i, j], ...]}. Throws MalformedInput or the build_carpet errors.
DigitSet parse_carpet_json(const std::string& text);
DigitSet load_carpet(const std::filesystem::path& path);
nlohmann::json carpet_to_json(const DigitSet& c);

/// {"k": k, "components": [{"members": [["gx", "gy"], ...], "measure": "p/q"}, ...]}
nlohmann::json components_json(const ComponentLevel& level);

/// One JSON object per line: {"level", "component", "words": ["i1.i2...", ...], "mu"}.
std::string bundle_map_jsonl(const BundleMap& bm);

nlohmann::json distortion_json(const DistortionReport& rep);
nlohmann::json verification_json(const BundleMapReport& rep);

/// One JSON object per line: {"level", "id", "parent", "payload"}; payload from the callback.
template <class Payload>
std::string tree_jsonl(const LeveledTree& t, Payload&& payload) {
  std::string out;
  for (std::int64_t k = 0; k <= t.depth(); ++k) {
    for (std::size_t v = 0; v < t.level_size(k); ++v) {
      nlohmann::json line{{"level", k}, {"id", v}, {"parent", k == 0 ? nlohmann::json(nullptr) : nlohmann::json(t.parent(k, v))},
                          {"payload", payload(k, v)}};
      out += line.dump() + "\n";
    }
  }
  return out;
}

/// Write to a sibling temporary file, then rename over the target.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace carpet
