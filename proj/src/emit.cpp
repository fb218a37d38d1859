#include "curvearr/emit.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace curvearr {

using nlohmann::ordered_json;

namespace {

ordered_json rect_json(const Box2& b) {
    return ordered_json::array({b.x0.to_decimal(), b.y0.to_decimal(), b.x1.to_decimal(), b.y1.to_decimal()});
}

std::string pattern_name(const PatternCase& p) {
    return std::string(p.group == 2 ? "II" : "III") + p.variant;
}

}  // namespace

std::string emit_json(const Arrangement& a, bool include_boxes) {
    ordered_json doc;
    doc["vertices"] = ordered_json::array();
    for (std::size_t i = 0; i < a.pslg.vertices.size(); ++i) {
        const PVertex& v = a.pslg.vertices[i];
        ordered_json jv;
        jv["id"] = i;
        jv["x"] = v.x.to_decimal();
        jv["y"] = v.y.to_decimal();
        jv["kind"] = to_string(v.kind);
        doc["vertices"].push_back(std::move(jv));
    }
    doc["edges"] = ordered_json::array();
    for (const PEdge& e : a.pslg.edges) {
        ordered_json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["label"] = to_string(e.label);
        doc["edges"].push_back(std::move(je));
    }
    doc["roots"] = ordered_json::array();
    for (const RootReport& r : a.roots) {
        ordered_json jr;
        jr["rect"] = rect_json(r.box2);
        doc["roots"].push_back(std::move(jr));
    }
    if (include_boxes) {
        doc["boxes"] = ordered_json::array();
        for (const BoxRecord& b : a.boxes) {
            ordered_json jb;
            jb["rect"] = rect_json(b.box);
            jb["depth"] = b.depth;
            jb["class"] = b.root_box ? "root" : to_string(b.cls);
            doc["boxes"].push_back(std::move(jb));
        }
    }
    return doc.dump();
}

std::string emit_roots(const Arrangement& a) {
    ordered_json doc;
    doc["roots"] = ordered_json::array();
    for (const RootReport& r : a.roots) {
        ordered_json jr;
        jr["rect"] = rect_json(r.box2);
        jr["certified"] = true;
        ordered_json c;
        c["center"] = ordered_json::array({r.cert.cx.to_decimal(), r.cert.cy.to_decimal()});
        c["preconditioner"] = ordered_json::array({ordered_json::array({r.cert.y[0][0], r.cert.y[0][1]}),
                                                   ordered_json::array({r.cert.y[1][0], r.cert.y[1][1]})});
        c["signs"] = {{"left", r.cert.sign_left},
                      {"right", r.cert.sign_right},
                      {"bottom", r.cert.sign_bottom},
                      {"top", r.cert.sign_top}};
        jr["certificate"] = std::move(c);
        jr["pattern"] = pattern_name(r.pattern);
        doc["roots"].push_back(std::move(jr));
    }
    doc["uncertain_signs"] = a.uncertain_signs;
    return doc.dump(2) + "\n";
}

std::string emit_svg(const Arrangement& a, const Box2& roi, bool include_boxes) {
    const double x0 = roi.x0.to_double();
    const double y1 = roi.y1.to_double();
    const double w = roi.width_x().to_double();
    const double h = roi.width_y().to_double();
    const double stroke = std::max(w, h) / 500.0;
    std::ostringstream os;
    os << std::setprecision(17);
    // y is flipped so that the drawing has y pointing up.
    auto px = [](const Dyadic& x) { return x.to_double(); };
    auto py = [](const Dyadic& y) { return -y.to_double(); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << ' ' << -y1 << ' ' << w << ' ' << h
       << "\" width=\"800\" height=\"" << 800.0 * h / w << "\">\n";
    os << "<rect class=\"frame\" x=\"" << x0 << "\" y=\"" << -y1 << "\" width=\"" << w << "\" height=\"" << h
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
    if (include_boxes) {
        os << "<g class=\"boxes\">\n";
        for (const BoxRecord& b : a.boxes) {
            const char* fill = "#ffffff";
            if (b.root_box) {
                fill = "#f4d35e";
            } else if (b.cls == BoxClass::FCandidate) {
                fill = "#dbe7f7";
            } else if (b.cls == BoxClass::GCandidate) {
                fill = "#f7dede";
            } else if (b.cls == BoxClass::FGCandidate) {
                fill = "#e6dcf2";
            }
            os << "<rect x=\"" << px(b.box.x0) << "\" y=\"" << py(b.box.y1) << "\" width=\""
               << b.box.width_x().to_double() << "\" height=\"" << b.box.width_y().to_double() << "\" fill=\""
               << fill << "\" stroke=\"#999999\" stroke-width=\"" << stroke / 4 << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "<g class=\"edges\" stroke-width=\"" << stroke << "\">\n";
    for (const PEdge& e : a.pslg.edges) {
        const PVertex& u = a.pslg.vertices[static_cast<std::size_t>(e.u)];
        const PVertex& v = a.pslg.vertices[static_cast<std::size_t>(e.v)];
        os << "<line x1=\"" << px(u.x) << "\" y1=\"" << py(u.y) << "\" x2=\"" << px(v.x) << "\" y2=\"" << py(v.y)
           << "\" stroke=\"" << (e.label == EdgeLabel::S ? "#1f4e9c" : "#b3261e") << "\"/>\n";
    }
    os << "</g>\n<g class=\"roots\">\n";
    for (const PVertex& v : a.pslg.vertices) {
        if (v.kind == VertexKind::Root) {
            os << "<circle cx=\"" << px(v.x) << "\" cy=\"" << py(v.y) << "\" r=\"" << 3 * stroke
               << "\" fill=\"black\"/>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace curvearr
