#pragma once

#include <iosfwd>
#include <set>
#include <string>

#include "curvearr/box.hpp"

namespace curvearr {

struct RunConfig {
    std::string f;
    std::string g;
    Box2 roi;
    double eps = 0.05;
    int max_depth = 40;
    std::set<std::string> outputs{"json"};  // subset of {json, svg, roots}
    bool include_boxes = false;
    std::string prefix = "arrangement";  // "-" writes JSON to stdout
    int escalation_depth = 24;
    long precision = 128;
    bool verbose = false;
};

/// "x0,y0,x1,y1" with dyadic decimals. Rejects empty boxes and aspect ratios above 2.
Box2 parse_roi(const std::string& text);
/// Positive decimal or "inf".
double parse_eps(const std::string& text);

/// Command-line entry point. Exit codes: 0 success, 1 bad flags or input,
/// 2 resolution limit or boundary root (JSON diagnostic on err), 3 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvearr
