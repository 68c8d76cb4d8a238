#ifndef MGL_CACHE_HPP_
#define MGL_CACHE_HPP_

#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "mgl/ball.hpp"

namespace mgl {

// On-disk ball store keyed by (hash of GroupSpec JSON, radius). A stored
// entry carries the full spec; a hash collision or an edited spec therefore
// reads back as a miss, never as stale data. Thread-safe within a process.
class BallCache {
 public:
  // $MGL_CACHE_DIR when set, else ./.mgl-cache.
  static std::string default_dir();

  explicit BallCache(std::string dir = default_dir());

  std::optional<LabeledBall> load(const nlohmann::json& spec, int radius) const;
  void store(const nlohmann::json& spec, int radius, const LabeledBall& ball) const;

  const std::string& dir() const { return dir_; }

 private:
  std::string path_for(const nlohmann::json& spec, int radius) const;

  std::string dir_;
  mutable std::mutex mu_;
};

// build_ball with read-through caching; cache may be null (no caching).
LabeledBall build_ball_cached(const MarkedGroup& g, int radius,
                              const BallCache* cache, const Caps& caps = {});

}  // namespace mgl

#endif  // MGL_CACHE_HPP_
