#pragma once

#include <string>

#include "curvearr/arrange.hpp"

namespace curvearr {

/// {vertices:[{id,x,y,kind}], edges:[{u,v,label}], roots:[{rect}], boxes?:[{rect,depth,class}]}.
/// Coordinates are exact decimal strings; the output is compact and byte-stable.
std::string emit_json(const Arrangement& a, bool include_boxes = false);

/// SVG drawing of the region of interest (y up): S edges, T edges, root markers and
/// optionally the subdivision boxes shaded by class.
std::string emit_svg(const Arrangement& a, const Box2& roi, bool include_boxes = false);

/// Root report: root boxes with their certificate summary and crossing pattern.
std::string emit_roots(const Arrangement& a);

}  // namespace curvearr
