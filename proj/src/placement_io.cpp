#include "splace/placement_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "splace/config.hpp"
#include "splace/errors.hpp"

namespace splace {

void save_placement(const Placement& p, const std::string& path) {
  nlohmann::ordered_json j;
  j["method"] = to_string(p.method);
  j["q"] = p.q();
  j["indices"] = p.indices;
  j["params"] = {{"c", p.params.c},
                 {"lambda1", p.params.lambda1},
                 {"lambda2", p.params.lambda2},
                 {"seed", p.params.seed},
                 {"rank", p.params.rank}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("save_placement: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw DataError("save_placement: write failed for " + path);
}

Placement load_placement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load_placement: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("load_placement: bad JSON in " + path + ": " + e.what());
  }
  Placement p;
  try {
    p.method = parse_method(j.at("method").get<std::string>());
    p.indices = j.at("indices").get<std::vector<std::uint32_t>>();
    if (j.contains("params")) {
      const auto& params = j.at("params");
      p.params.c = params.value("c", 0.0);
      p.params.lambda1 = params.value("lambda1", 0.0);
      p.params.lambda2 = params.value("lambda2", 0.0);
      p.params.seed = params.value("seed", std::uint64_t{0});
      p.params.rank = params.value("rank", std::int64_t{0});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("load_placement: missing field in " + path + ": " + e.what());
  }
  if (p.indices.empty()) {
    throw DataError("load_placement: empty placement in " + path);
  }
  return p;
}

}  // namespace splace
