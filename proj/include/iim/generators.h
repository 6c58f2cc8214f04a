#ifndef IIM_GENERATORS_H_
#define IIM_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iim/restricted.h"
#include "iim/system.h"

namespace iim {

enum class BusKind { kGenerator, kLoad, kNeutral };

struct Bus {
  std::string label;
  BusKind kind;
};

struct Line {
  std::string label;
  std::string from;
  std::string to;
  bool forward = true;  // power flows from -> to
};

struct PowerTopology {
  std::vector<Bus> buses;
  std::vector<Line> lines;
};

struct GeneratedSystem {
  System system;
  std::vector<std::string> warnings;
};

// Every load/neutral bus b with inflow gets b <- l1 u1 + l2 u2 + ..., one
// size-2 minterm (line, upstream bus) per incoming line, in line order.
// Generators and lines are sources. Entity order: buses, then lines.
GeneratedSystem gen_power_idrs(const PowerTopology& topo);

enum class AssetKind {
  kGenerator,
  kLoad,
  kTransmissionLine,
  kCellTower,
  kFiberLitBuilding,
  kFiberLink,
};

struct GeoAsset {
  std::string label;
  AssetKind kind;
  double x = 0.0;
  double y = 0.0;
  std::vector<std::string> endpoints;  // lines and links only
};

struct GeoParams {
  // Fiber links longer than this need power; default is the 75th percentile
  // of fiber link lengths.
  std::optional<double> long_link_threshold;
};

class InsufficientAssets : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Power-communication coupling by nearest neighbours (Euclidean, ties by
// label):
//   generator g           <- tower(g) + building(g) link(building, g)
//   tower / building /
//   long fiber link b     <- g1 line(g1, b) + g2 line(g2, b)
// with g1, g2 the two generators closest to b. Missing connecting lines or
// links are synthesized as source entities TL_<g>_<b> / FL_<b>_<g>.
GeneratedSystem gen_interdep_idrs(const std::vector<GeoAsset>& assets,
                                  const GeoParams& params = {});

struct RandomParams {
  double source_fraction = 0.25;
  std::size_t max_minterms = 3;
  std::size_t max_minterm_size = 3;
};

// Deterministic in `seed`. Labels e1..en.
System gen_random(IdrClass cls, std::size_t n, std::uint64_t seed,
                  const RandomParams& params = {});

// JSON input formats.
PowerTopology power_topology_from_json(const nlohmann::json& j);
std::vector<GeoAsset> geo_assets_from_json(const nlohmann::json& j);
GeoParams geo_params_from_json(const nlohmann::json& j);

}  // namespace iim

#endif  // IIM_GENERATORS_H_
