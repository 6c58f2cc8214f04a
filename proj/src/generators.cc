#include "iim/generators.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace iim {

GeneratedSystem gen_power_idrs(const PowerTopology& topo) {
  GeneratedSystem out;
  System& sys = out.system;
  std::map<std::string, BusKind> kinds;
  for (const Bus& b : topo.buses) {
    sys.add_entity(b.label);
    kinds[b.label] = b.kind;
  }
  for (const Line& l : topo.lines) {
    if (!kinds.count(l.from) || !kinds.count(l.to)) {
      throw InvalidSystem("line '" + l.label + "' references an unknown bus");
    }
    if (sys.contains(l.label)) {
      throw InvalidSystem("duplicate label '" + l.label + "'");
    }
    sys.add_entity(l.label);
  }
  for (const Bus& b : topo.buses) {
    if (b.kind == BusKind::kGenerator) continue;
    Idr idr{sys.id(b.label), {}};
    for (const Line& l : topo.lines) {
      const std::string& head = l.forward ? l.to : l.from;
      const std::string& tail = l.forward ? l.from : l.to;
      if (head != b.label) continue;
      idr.minterms.push_back(Minterm{{sys.id(l.label), sys.id(tail)}});
    }
    if (idr.minterms.empty()) {
      out.warnings.push_back("bus '" + b.label +
                             "' has no inflow; treated as a source");
      continue;
    }
    sys.add_idr(std::move(idr));
  }
  return out;
}

namespace {

struct Point {
  double x, y;
};

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

class GeoIndex {
 public:
  explicit GeoIndex(const std::vector<GeoAsset>& assets) : assets_(assets) {
    for (std::size_t i = 0; i < assets.size(); ++i) {
      if (!by_label_.emplace(assets[i].label, i).second) {
        throw InvalidSystem("duplicate asset label '" + assets[i].label + "'");
      }
    }
    for (const GeoAsset& a : assets) {
      const bool is_edge = a.kind == AssetKind::kTransmissionLine ||
                           a.kind == AssetKind::kFiberLink;
      if (is_edge) {
        if (a.endpoints.size() != 2) {
          throw InvalidSystem("asset '" + a.label + "' needs two endpoints");
        }
        for (const auto& ep : a.endpoints) {
          if (!by_label_.count(ep)) {
            throw InvalidSystem("asset '" + a.label +
                                "' references unknown endpoint '" + ep + "'");
          }
        }
      } else if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
        throw InvalidSystem("asset '" + a.label + "' has a non-finite position");
      }
    }
  }

  const GeoAsset& get(const std::string& label) const {
    return assets_[by_label_.at(label)];
  }

  Point position(const GeoAsset& a) const {
    if (a.kind == AssetKind::kTransmissionLine ||
        a.kind == AssetKind::kFiberLink) {
      const Point p = position(get(a.endpoints[0]));
      const Point q = position(get(a.endpoints[1]));
      return {(p.x + q.x) / 2, (p.y + q.y) / 2};
    }
    return {a.x, a.y};
  }

  double length(const GeoAsset& edge) const {
    return dist(position(get(edge.endpoints[0])),
                position(get(edge.endpoints[1])));
  }

  std::vector<const GeoAsset*> of_kind(AssetKind kind) const {
    std::vector<const GeoAsset*> out;
    for (const auto& a : assets_) {
      if (a.kind == kind) out.push_back(&a);
    }
    return out;
  }

  // The `count` assets of `pool` nearest to `at`, ties broken by label.
  std::vector<const GeoAsset*> nearest(std::vector<const GeoAsset*> pool,
                                       Point at, std::size_t count) const {
    std::sort(pool.begin(), pool.end(),
              [&](const GeoAsset* a, const GeoAsset* b) {
                const double da = dist(position(*a), at);
                const double db = dist(position(*b), at);
                if (da != db) return da < db;
                return a->label < b->label;
              });
    if (pool.size() > count) pool.resize(count);
    return pool;
  }

  // Edge of `kind` incident to `anchor` whose other endpoint is closest to
  // `toward`; nullptr when `anchor` has no such edge.
  const GeoAsset* incident_edge(AssetKind kind, const std::string& anchor,
                                Point toward) const {
    std::vector<const GeoAsset*> pool;
    for (const auto& a : assets_) {
      if (a.kind != kind) continue;
      if (a.endpoints[0] == anchor || a.endpoints[1] == anchor) {
        pool.push_back(&a);
      }
    }
    if (pool.empty()) return nullptr;
    std::sort(pool.begin(), pool.end(),
              [&](const GeoAsset* a, const GeoAsset* b) {
                auto far = [&](const GeoAsset* e) {
                  const auto& other =
                      e->endpoints[0] == anchor ? e->endpoints[1]
                                                : e->endpoints[0];
                  return dist(position(get(other)), toward);
                };
                const double fa = far(a), fb = far(b);
                if (fa != fb) return fa < fb;
                return a->label < b->label;
              });
    return pool.front();
  }

 private:
  const std::vector<GeoAsset>& assets_;
  std::map<std::string, std::size_t> by_label_;
};

double percentile75(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = 0.75 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  return values[lo] + (rank - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

GeneratedSystem gen_interdep_idrs(const std::vector<GeoAsset>& assets,
                                  const GeoParams& params) {
  const GeoIndex index(assets);
  const auto gens = index.of_kind(AssetKind::kGenerator);
  const auto towers = index.of_kind(AssetKind::kCellTower);
  const auto buildings = index.of_kind(AssetKind::kFiberLitBuilding);
  const auto links = index.of_kind(AssetKind::kFiberLink);
  if (gens.size() < 2 || towers.empty() || buildings.empty()) {
    throw InsufficientAssets(
        "need at least two generators, one cell tower and one fiber-lit "
        "building");
  }

  GeneratedSystem out;
  System& sys = out.system;
  for (const auto& a : assets) sys.add_entity(a.label);

  auto synthesize = [&](std::string label) {
    std::string candidate = label;
    for (int k = 2; sys.contains(candidate); ++k) {
      candidate = label + "_" + std::to_string(k);
    }
    out.warnings.push_back("synthesized connector '" + candidate + "'");
    return sys.add_entity(candidate);
  };
  // Synthesized connectors are reused for the same (from, to) pair.
  std::map<std::pair<std::string, std::string>, EntityId> made;
  auto connector = [&](AssetKind kind, const GeoAsset& anchor,
                       const GeoAsset& other) {
    if (const GeoAsset* e =
            index.incident_edge(kind, anchor.label, index.position(other))) {
      return sys.id(e->label);
    }
    const std::string prefix = kind == AssetKind::kFiberLink ? "FL_" : "TL_";
    auto key = std::make_pair(prefix + anchor.label, other.label);
    if (auto it = made.find(key); it != made.end()) return it->second;
    const EntityId id = synthesize(prefix + anchor.label + "_" + other.label);
    made.emplace(key, id);
    return id;
  };

  for (const GeoAsset* g : gens) {
    const Point at = index.position(*g);
    const GeoAsset& tower = *index.nearest(towers, at, 1).front();
    const GeoAsset& building = *index.nearest(buildings, at, 1).front();
    const EntityId link = connector(AssetKind::kFiberLink, building, *g);
    Idr idr{sys.id(g->label), {}};
    idr.minterms.push_back(Minterm{{sys.id(tower.label)}});
    idr.minterms.push_back(Minterm{{sys.id(building.label), link}});
    sys.add_idr(std::move(idr));
  }

  std::vector<const GeoAsset*> consumers = towers;
  consumers.insert(consumers.end(), buildings.begin(), buildings.end());
  std::vector<double> lengths;
  for (const GeoAsset* l : links) lengths.push_back(index.length(*l));
  const double threshold =
      params.long_link_threshold.value_or(percentile75(lengths));
  for (const GeoAsset* l : links) {
    if (index.length(*l) > threshold) consumers.push_back(l);
  }
  // Keep IDR order identical to asset order.
  std::sort(consumers.begin(), consumers.end(),
            [](const GeoAsset* a, const GeoAsset* b) { return a < b; });

  for (const GeoAsset* b : consumers) {
    Idr idr{sys.id(b->label), {}};
    for (const GeoAsset* g : index.nearest(gens, index.position(*b), 2)) {
      const EntityId line = connector(AssetKind::kTransmissionLine, *g, *b);
      idr.minterms.push_back(Minterm{{sys.id(g->label), line}});
    }
    sys.add_idr(std::move(idr));
  }
  return out;
}

namespace {

// Portable bounded draw; std::uniform_int_distribution differs across
// standard libraries.
std::size_t below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// `count` distinct entities other than `self`.
std::vector<EntityId> sample_others(std::mt19937_64& rng, std::size_t n,
                                    std::uint32_t self, std::size_t count) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i != self) pool.push_back(i);
  }
  count = std::min(count, pool.size());
  std::vector<EntityId> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t j = k + below(rng, pool.size() - k);
    std::swap(pool[k], pool[j]);
    out.push_back(EntityId{pool[k]});
  }
  return out;
}

}  // namespace

System gen_random(IdrClass cls, std::size_t n, std::uint64_t seed,
                  const RandomParams& params) {
  if (n == 0) throw std::invalid_argument("gen_random needs n >= 1");
  std::mt19937_64 rng(seed);
  System sys;
  for (std::size_t i = 1; i <= n; ++i) sys.add_entity("e" + std::to_string(i));
  if (n == 1) return sys;
  const std::size_t max_minterms = std::max<std::size_t>(1, params.max_minterms);
  const std::size_t max_size = std::max<std::size_t>(1, params.max_minterm_size);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (unit(rng) < params.source_fraction) continue;
    Idr idr{EntityId{i}, {}};
    switch (cls) {
      case IdrClass::kCaseI:
        idr.minterms.push_back(Minterm{sample_others(rng, n, i, 1)});
        break;
      case IdrClass::kCaseII: {
        const std::size_t count = 1 + below(rng, max_minterms);
        for (EntityId p : sample_others(rng, n, i, count)) {
          idr.minterms.push_back(Minterm{{p}});
        }
        break;
      }
      case IdrClass::kGeneral: {
        const std::size_t count = 1 + below(rng, max_minterms);
        for (std::size_t m = 0; m < count; ++m) {
          const std::size_t size = 1 + below(rng, max_size);
          idr.minterms.push_back(Minterm{sample_others(rng, n, i, size)});
        }
        break;
      }
    }
    sys.add_idr(std::move(idr));
  }
  return sys;
}

namespace {

BusKind bus_kind(const std::string& s) {
  if (s == "generator") return BusKind::kGenerator;
  if (s == "load") return BusKind::kLoad;
  if (s == "neutral") return BusKind::kNeutral;
  throw std::invalid_argument("unknown bus kind '" + s + "'");
}

AssetKind asset_kind(const std::string& s) {
  static const std::map<std::string, AssetKind> kinds = {
      {"generator", AssetKind::kGenerator},
      {"load", AssetKind::kLoad},
      {"transmission_line", AssetKind::kTransmissionLine},
      {"cell_tower", AssetKind::kCellTower},
      {"fiber_lit_building", AssetKind::kFiberLitBuilding},
      {"fiber_link", AssetKind::kFiberLink},
  };
  auto it = kinds.find(s);
  if (it == kinds.end()) throw std::invalid_argument("unknown asset kind '" + s + "'");
  return it->second;
}

}  // namespace

PowerTopology power_topology_from_json(const nlohmann::json& j) {
  PowerTopology topo;
  for (const auto& b : j.at("buses")) {
    topo.buses.push_back(
        {b.at("label").get<std::string>(), bus_kind(b.at("kind").get<std::string>())});
  }
  for (const auto& l : j.value("lines", nlohmann::json::array())) {
    Line line{l.at("label").get<std::string>(), l.at("from").get<std::string>(),
              l.at("to").get<std::string>(), true};
    const std::string flow = l.value("flow", std::string("forward"));
    if (flow == "reverse") {
      line.forward = false;
    } else if (flow != "forward") {
      throw std::invalid_argument("line '" + line.label +
                                  "': flow must be 'forward' or 'reverse'");
    }
    topo.lines.push_back(std::move(line));
  }
  return topo;
}

std::vector<GeoAsset> geo_assets_from_json(const nlohmann::json& j) {
  std::vector<GeoAsset> out;
  for (const auto& a : j.at("assets")) {
    GeoAsset asset;
    asset.label = a.at("label").get<std::string>();
    asset.kind = asset_kind(a.at("kind").get<std::string>());
    asset.x = a.value("x", 0.0);
    asset.y = a.value("y", 0.0);
    if (a.contains("endpoints")) {
      asset.endpoints = a.at("endpoints").get<std::vector<std::string>>();
    }
    out.push_back(std::move(asset));
  }
  return out;
}

GeoParams geo_params_from_json(const nlohmann::json& j) {
  GeoParams p;
  if (j.contains("long_link_threshold")) {
    p.long_link_threshold = j.at("long_link_threshold").get<double>();
  }
  return p;
}

}  // namespace iim
