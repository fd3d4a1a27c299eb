#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scut/nodeset.hpp"
#include "scut/rational.hpp"

namespace scut {

struct WeightedEdge {
    int u = 0, v = 0; // endpoints as written in the file
    Rat w;            // positive capacity / demand
};

// A solver instance: one node set shared by a supply graph (capacities) and a
// demand graph (demands). Both edge lists are simple; a pair may appear in both.
struct Instance {
    int n = 0;
    std::vector<WeightedEdge> supply;
    std::vector<WeightedEdge> demand;

    bool supply_connected() const;
};

struct Cut {
    std::vector<int> members; // sorted node list of the chosen side
    Rat cap_cross;            // total capacity crossing the cut
    Rat dem_cross;            // total demand crossing the cut
    std::optional<Rat> phi;   // cap_cross / dem_cross, absent when dem_cross == 0
};

// Throws std::runtime_error with a line-numbered message on malformed input.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

// side is a bitmask over nodes (requires n <= 64); either side names the cut.
Cut make_cut(const Instance& inst, Mask side);

// phi of a proper cut; std::nullopt when no demand crosses.
std::optional<Rat> sparsity(const Instance& inst, Mask side);

} // namespace scut
