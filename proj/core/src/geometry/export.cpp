#include "fairseq/geometry/export.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fairseq/version.hpp"

namespace fairseq::geometry {

namespace {

using json = nlohmann::ordered_json;

json point(Vec2 p) { return json::array({p.x, p.y}); }

json loop_json(std::span<const Vec2> loop) {
    json out = json::array();
    for (Vec2 p : loop) out.push_back(point(p));
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

const char* kFill[] = {"#c6d8f5", "#f5c6c6", "#c9efc9", "#f3e3b5", "#dcc8f0", "#bfe7ea"};
const char* kStroke[] = {"#2a5db0", "#b02a2a", "#2a8a2a", "#a07a10", "#6a3aa0", "#1a8a94"};

}  // namespace

std::string partition_to_json(const ExchangeSystem& system) {
    json j;
    j["schema"] = 1;
    j["kind"] = system.kind == SystemKind::hypercubic ? "hypercubic" : "tijdeman";
    j["alpha"] = std::vector<double>(system.alpha.values().begin(), system.alpha.values().end());
    j["alpha_is_float"] = true;
    j["C"] = system.C;
    j["C_prime"] = system.C_prime;
    json atoms = json::array();
    for (const auto& a : system.atoms) {
        json ja;
        ja["letter"] = a.letter;
        ja["translation"] = point(a.translation);
        ja["area"] = a.area();
        const auto ub = union_boundary(a.polygons);
        ja["component_count"] = ub.components;
        json polys = json::array();
        for (const auto& p : a.polygons) polys.push_back(loop_json(p.vertices()));
        ja["polygons"] = std::move(polys);
        json outlines = json::array();
        for (const auto& l : ub.loops) outlines.push_back(loop_json(l));
        ja["outlines"] = std::move(outlines);
        atoms.push_back(std::move(ja));
    }
    j["atoms"] = std::move(atoms);
    j["total_area"] = system.total_area();
    return j.dump(2) + "\n";
}

std::string partition_to_svg(const ExchangeSystem& system) {
    const double lo = -system.C_prime - 0.1, hi = system.C + 0.1;
    const double size = hi - lo;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- fairseq " << kVersion << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\""
        << num(lo) << ' ' << num(-hi) << ' ' << num(size) << ' ' << num(size) << "\">\n";
    const std::string w = num(size / 400.0);
    // Flip y so the picture reads with the second coordinate upwards.
    auto xy = [](Vec2 p) { return num(p.x) + "," + num(-p.y); };
    out << "<g stroke=\"#888\" stroke-width=\"" << w << "\">\n";
    out << "<line x1=\"" << num(lo) << "\" y1=\"0\" x2=\"" << num(hi) << "\" y2=\"0\"/>\n";
    out << "<line x1=\"0\" y1=\"" << num(-lo) << "\" x2=\"0\" y2=\"" << num(-hi) << "\"/>\n</g>\n";
    for (const auto& a : system.atoms) {
        const std::size_t c = (a.letter - 1u) % 6;
        out << "<g id=\"P" << int(a.letter) << "\" fill=\"" << kFill[c] << "\" stroke=\"" << kStroke[c]
            << "\" stroke-width=\"" << w << "\">\n";
        for (const auto& loop : union_boundary(a.polygons).loops) {
            out << "<polygon points=\"";
            for (std::size_t i = 0; i < loop.size(); ++i) out << (i ? " " : "") << xy(loop[i]);
            out << "\"/>\n";
        }
        const Vec2 centre = a.polygons.empty() ? Vec2{} : a.polygons.front().centroid();
        out << "<text x=\"" << num(centre.x) << "\" y=\"" << num(-centre.y) << "\" font-size=\"" << num(size / 30.0)
            << "\" stroke=\"none\" fill=\"#000\">P" << int(a.letter) << "</text>\n</g>\n";
    }
    // iota([-C', C]^3 ∩ 1^perp): x1, x2 in [-C', C] and x1 + x2 in [-C, C'].
    const double C = system.C, Cp = system.C_prime;
    auto hex = ConvexPolygon::rectangle({-Cp, -Cp}, {C, C});
    std::optional<ConvexPolygon> h = clip(hex, HalfPlane(1.0, 1.0, Cp));
    if (h) h = clip(*h, HalfPlane(-1.0, -1.0, C));
    if (h) {
        out << "<polygon fill=\"none\" stroke=\"#000\" stroke-dasharray=\"" << num(size / 150.0) << "\" stroke-width=\""
            << w << "\" points=\"";
        for (std::size_t i = 0; i < h->size(); ++i) out << (i ? " " : "") << xy((*h)[i]);
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fairseq::geometry
