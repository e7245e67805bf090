#include "qwalk/report.hpp"

namespace qwalk {

nlohmann::json CheckReport::to_json() const {
  return {
      {"check", check},
      {"parameters", parameters},
      {"n_steps", n_steps},
      {"max_deviation", max_deviation},
      {"tolerance", tolerance},
      {"pass", pass},
      {"details", details},
  };
}

}  // namespace qwalk
