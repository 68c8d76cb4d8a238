#include "mgl/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mgl/word_parse.hpp"

namespace mgl {

namespace {

std::string fnv1a64_hex(const std::string& data) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

nlohmann::json ball_to_entry(const LabeledBall& ball) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const BallVertex& v : ball.vertices) {
    vertices.push_back({{"key", v.key}, {"rep", v.rep.str()}, {"norm", v.norm}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const BallEdge& e : ball.edges) {
    edges.push_back(nlohmann::json::array({e.src, e.dst, e.label}));
  }
  return {{"radius", ball.radius},
          {"rank", ball.rank},
          {"vertices", vertices},
          {"edges", edges}};
}

LabeledBall entry_to_ball(const nlohmann::json& entry) {
  LabeledBall ball;
  ball.radius = entry.at("radius").get<int>();
  ball.rank = entry.at("rank").get<int>();
  for (const auto& v : entry.at("vertices")) {
    ball.vertices.push_back({v.at("key").get<std::string>(),
                             parse_free_word(v.at("rep").get<std::string>(), ball.rank),
                             v.at("norm").get<int>()});
  }
  for (const auto& e : entry.at("edges")) {
    ball.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  }
  return ball;
}

}  // namespace

std::string BallCache::default_dir() {
  const char* env = std::getenv("MGL_CACHE_DIR");
  if (env != nullptr && *env != '\0') return env;
  return "./.mgl-cache";
}

BallCache::BallCache(std::string dir) : dir_(std::move(dir)) {}

std::string BallCache::path_for(const nlohmann::json& spec, int radius) const {
  std::string key = spec.dump() + "#" + std::to_string(radius);
  return dir_ + "/" + fnv1a64_hex(key) + ".json";
}

std::optional<LabeledBall> BallCache::load(const nlohmann::json& spec,
                                           int radius) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::ifstream in(path_for(spec, radius));
  if (!in) return std::nullopt;
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) return std::nullopt;  // corrupt entry reads as a miss
  if (!doc.contains("spec") || doc["spec"] != spec) return std::nullopt;
  if (!doc.contains("radius") || doc["radius"].get<int>() != radius) return std::nullopt;
  try {
    return entry_to_ball(doc.at("ball"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void BallCache::store(const nlohmann::json& spec, int radius,
                      const LabeledBall& ball) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;  // caching is best-effort
  std::string path = path_for(spec, radius);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << nlohmann::json{{"schema", "mgl/1"},
                          {"spec", spec},
                          {"radius", radius},
                          {"ball", ball_to_entry(ball)}}
               .dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

LabeledBall build_ball_cached(const MarkedGroup& g, int radius,
                              const BallCache* cache, const Caps& caps) {
  if (cache == nullptr) return build_ball(g, radius, caps);
  nlohmann::json spec = g.spec_json();
  if (auto hit = cache->load(spec, radius)) return *hit;
  LabeledBall ball = build_ball(g, radius, caps);
  cache->store(spec, radius, ball);
  return ball;
}

}  // namespace mgl
