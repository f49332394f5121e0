#pragma once

#include "polycube/mesh.h"

#include <vector>

namespace polycube {

struct CutArc {
    index_t from;
    index_t to;
    double capacity; // >= 0, may be +inf
};

struct CutProblem {
    index_t nb_nodes = 0;
    index_t source = 0;
    index_t sink = 1;
    std::vector<CutArc> arcs;
};

struct CutResult {
    double value = 0.0; // +inf when every cut crosses an infinite arc
    std::vector<bool> source_side;
};

// minimum s-t cut through a max-flow computation
CutResult min_cut(const CutProblem& problem);

} // namespace polycube
