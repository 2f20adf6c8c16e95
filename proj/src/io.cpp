#include "carpet/io.hpp"

#include "carpet/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

namespace carpet {

namespace {

std::uint32_t narrow_coordinate(const nlohmann::json& v, ErrorCode range_error, const std::string& what) {
  if (!v.is_number_integer()) throw Error(ErrorCode::MalformedInput, what + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(range_error, what + " = " + std::to_string(x) + " is out of range");
  }
  return static_cast<std::uint32_t>(x);
}

}  // namespace

DigitSet parse_carpet_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") || !doc.contains("digits")) {
    throw Error(ErrorCode::MalformedInput, "expected an object with n, m and digits");
  }
  const auto n = narrow_coordinate(doc["n"], ErrorCode::BaseOrder, "n");
  const auto m = narrow_coordinate(doc["m"], ErrorCode::BaseOrder, "m");
  if (!doc["digits"].is_array()) throw Error(ErrorCode::MalformedInput, "digits must be an array");
  std::vector<Digit> digits;
  for (const auto& d : doc["digits"]) {
    if (!d.is_array() || d.size() != 2) throw Error(ErrorCode::MalformedInput, "each digit is a pair [i, j]");
    digits.push_back({narrow_coordinate(d[0], ErrorCode::DigitRange, "i"), narrow_coordinate(d[1], ErrorCode::DigitRange, "j")});
  }
  return build_carpet(n, m, std::move(digits));
}

DigitSet load_carpet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_carpet_json(buf.str());
}

nlohmann::json carpet_to_json(const DigitSet& c) {
  nlohmann::json digits = nlohmann::json::array();
  for (const auto& d : c.digits()) digits.push_back({d.i, d.j});
  return {{"n", c.n()}, {"m", c.m()}, {"digits", digits}};
}

nlohmann::json components_json(const ComponentLevel& level) {
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t id = 0; id < level.size(); ++id) {
    nlohmann::json members = nlohmann::json::array();
    for (auto cell : level.members(id)) {
      const auto& c = level.occupancy().cells()[cell];
      members.push_back({c.gx.str(), c.gy.str()});
    }
    comps.push_back({{"members", members}, {"measure", to_fraction_string(level.measure(id))}});
  }
  return {{"k", level.k()}, {"components", comps}};
}

std::string bundle_map_jsonl(const BundleMap& bm) {
  std::string out;
  for (std::int64_t j = 0; j <= bm.p_levels(); ++j) {
    const auto K = static_cast<std::size_t>(j * bm.p);
    for (const auto& e : bm.levels[static_cast<std::size_t>(j)]) {
      nlohmann::json words = nlohmann::json::array();
      for (auto w : e.words) {
        std::vector<std::uint64_t> letters(K);
        for (std::size_t t = K; t-- > 0;) {
          letters[t] = w % bm.branch_counts[t];
          w /= bm.branch_counts[t];
        }
        std::string text;
        for (std::size_t t = 0; t < K; ++t) text += (t ? "." : "") + std::to_string(letters[t]);
        words.push_back(text);
      }
      nlohmann::json line{{"level", j}, {"component", e.component}, {"words", words}, {"mu", to_fraction_string(e.mu)}};
      out += line.dump() + "\n";
    }
  }
  return out;
}

nlohmann::json distortion_json(const DistortionReport& rep) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : rep.series) {
    series.push_back({{"depth", s.depth}, {"pairs", s.used}, {"min_ratio", s.min_ratio}, {"max_ratio", s.max_ratio}});
  }
  return {{"depth", rep.depth}, {"samples", rep.samples},    {"seed", rep.seed},
          {"min_ratio", rep.min_ratio}, {"max_ratio", rep.max_ratio}, {"series", series}};
}

nlohmann::json verification_json(const BundleMapReport& rep) {
  auto one = [](const BundleCheck& c) { return nlohmann::json{{"passed", c.passed}, {"failures", c.failures}}; };
  return {{"siblings", one(rep.siblings)},
          {"partition", one(rep.partition)},
          {"offspring", one(rep.offspring)},
          {"measure", one(rep.measure)},
          {"passed", rep.all_passed()}};
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MalformedInput, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::MalformedInput, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace carpet
