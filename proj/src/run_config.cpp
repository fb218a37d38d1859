#include "curvearr/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "curvearr/arrange.hpp"
#include "curvearr/emit.hpp"
#include "json.hpp"

namespace curvearr {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

nlohmann::ordered_json rect_json(const RectText& r) { return nlohmann::ordered_json::array({r[0], r[1], r[2], r[3]}); }

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        err << "cannot write " << path << "\n";
        return false;
    }
    return true;
}

}  // namespace

Box2 parse_roi(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) {
        throw InputError("region of interest must be x0,y0,x1,y1");
    }
    std::array<Dyadic, 4> v;
    for (std::size_t i = 0; i < 4; ++i) {
        std::optional<Dyadic> d;
        try {
            d = Dyadic::from_decimal(parts[i]);
        } catch (const std::invalid_argument&) {
        }
        if (!d) {
            throw InputError("region of interest coordinate is not a dyadic decimal: '" + parts[i] + "'");
        }
        v[i] = *d;
    }
    if (!(v[0] < v[2]) || !(v[1] < v[3])) {
        throw InputError("region of interest is empty");
    }
    const Dyadic wx = v[2] - v[0];
    const Dyadic wy = v[3] - v[1];
    if (Dyadic(2) * wy < wx || Dyadic(2) * wx < wy) {
        throw InputError("region of interest aspect ratio exceeds 2");
    }
    return Box2(v[0], v[1], v[2], v[3]);
}

double parse_eps(const std::string& text) {
    if (text == "inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    double e = 0.0;
    try {
        std::size_t used = 0;
        e = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
    } catch (const std::exception&) {
        throw InputError("tolerance must be a positive decimal or 'inf'");
    }
    if (!(e > 0.0)) {
        throw InputError("tolerance must be positive");
    }
    return e;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified isotopic arrangement of two implicit curves f = 0 and g = 0"};
    RunConfig cfg;
    std::string roi_text;
    std::string eps_text = "0.05";
    std::string out_text = "json";
    long precision = 0;
    app.add_option("--f", cfg.f, "first curve, e.g. \"y - x^2\"")->required();
    app.add_option("--g", cfg.g, "second curve")->required();
    app.add_option("--roi", roi_text, "region of interest x0,y0,x1,y1")->required();
    app.add_option("--eps", eps_text, "Hausdorff tolerance (decimal or inf)");
    app.add_option("--max-depth", cfg.max_depth, "subdivision depth limit")->check(CLI::Range(1, 50));
    app.add_option("--out", out_text, "comma separated outputs: json,svg,roots");
    app.add_flag("--boxes", cfg.include_boxes, "include subdivision boxes in JSON and SVG");
    app.add_option("--prefix", cfg.prefix, "output file prefix; '-' prints JSON to stdout");
    app.add_option("--escalation-depth", cfg.escalation_depth, "depth after which inconclusive boxes use MPFR");
    app.add_option("--precision", precision, "MPFR bits for escalated box evaluation")->check(CLI::Range(53, 4096));
    app.add_flag("-v,--verbose", cfg.verbose, "print stage progress");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    if (const char* env = std::getenv("CURVE_ARRANGE_PRECISION")) {
        try {
            cfg.precision = std::stol(env);
        } catch (const std::exception&) {
            err << "CURVE_ARRANGE_PRECISION is not an integer\n";
            return 1;
        }
    }
    if (precision > 0) {
        cfg.precision = precision;
    }

    try {
        cfg.roi = parse_roi(roi_text);
        cfg.eps = parse_eps(eps_text);
        cfg.outputs.clear();
        for (const std::string& o : split(out_text, ',')) {
            if (o != "json" && o != "svg" && o != "roots") {
                throw InputError("unknown output '" + o + "'");
            }
            cfg.outputs.insert(o);
        }
        CurveSystem sys = CurveSystem::from_text(cfg.f, cfg.g);
        sys.escalation_depth = cfg.escalation_depth;
        sys.escalation_bits = cfg.precision;
        sys.max_sign_bits = std::max<long>(sys.max_sign_bits, cfg.precision);
        ArrangeOptions opt;
        opt.isolate.eps = cfg.eps;
        opt.isolate.max_depth = cfg.max_depth;
        std::function<void(const StageEvent&)> progress;
        if (cfg.verbose) {
            progress = [&err](const StageEvent& e) {
                err << "stage " << e.stage << ": Q0=" << e.q0 << " Qf=" << e.qf << " Qg=" << e.qg << " Qfg=" << e.qfg
                    << " QJC=" << e.qjc << " QMK=" << e.qmk << " QRoot=" << e.qroot << "\n";
            };
        }
        const Arrangement a = build_arrangement(sys, cfg.roi, opt, progress);
        if (a.uncertain_signs > 0) {
            err << "warning: " << a.uncertain_signs << " corner signs could not be certified and were taken as +1\n";
        }
        bool ok = true;
        if (cfg.outputs.count("json")) {
            const std::string doc = emit_json(a, cfg.include_boxes) + "\n";
            if (cfg.prefix == "-") {
                out << doc;
            } else {
                ok = write_file(cfg.prefix + ".json", doc, err) && ok;
            }
        }
        if (cfg.outputs.count("svg") && cfg.prefix != "-") {
            ok = write_file(cfg.prefix + ".svg", emit_svg(a, cfg.roi, cfg.include_boxes), err) && ok;
        }
        if (cfg.outputs.count("roots")) {
            if (cfg.prefix == "-") {
                out << emit_roots(a);
            } else {
                ok = write_file(cfg.prefix + ".roots.json", emit_roots(a), err) && ok;
            }
        }
        return ok ? 0 : 1;
    } catch (const ResolutionLimit& e) {
        nlohmann::ordered_json d;
        d["error"] = "ResolutionLimit";
        d["stage"] = e.stage();
        d["box"] = rect_json(e.box());
        d["depth"] = e.depth();
        d["message"] = e.what();
        err << d.dump() << "\n";
        return 2;
    } catch (const BoundaryRoot& e) {
        nlohmann::ordered_json d;
        d["error"] = "BoundaryRoot";
        d["box"] = rect_json(e.box());
        d["depth"] = e.depth();
        d["message"] = e.what();
        err << d.dump() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        nlohmann::ordered_json d;
        d["error"] = "InternalError";
        d["message"] = e.what();
        err << d.dump() << "\n";
        return 3;
    }
}

}  // namespace curvearr
