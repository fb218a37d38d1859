#pragma once

#include "curvearr/arrange.hpp"
#include "oracle.hpp"

namespace testsupport {

inline oracle::Graph graph_of(const curvearr::Arrangement& a) {
    oracle::Graph g;
    for (const auto& v : a.pslg.vertices) {
        g.v.push_back({v.x.to_double(), v.y.to_double()});
        g.exact.emplace_back(v.x.to_rational(), v.y.to_rational());
        g.kind.push_back(curvearr::to_string(v.kind));
    }
    for (const auto& e : a.pslg.edges) {
        g.e.push_back({e.u, e.v, e.label == curvearr::EdgeLabel::S ? 'S' : 'T'});
    }
    return g;
}

}  // namespace testsupport
