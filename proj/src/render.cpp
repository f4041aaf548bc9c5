#include "tilerect/render.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace tilerect {

bool is_write_gadget(const std::string& name) {
    return name.rfind("Counter_Write", 0) == 0 || name.rfind("Seed_Bit", 0) == 0 || name.rfind("Seed_Msb", 0) == 0;
}

namespace {

bool bond(const TileSet& ts, const Assembly& a, const Vec3& p, Dir d) {
    auto t = a.at(p), u = a.at(p + offset(d));
    return t && u && binds(ts[*t].glue(d), ts[*u].glue(opposite(d)));
}

std::string xml_escape(const std::string& in) {
    std::string out;
    for (char ch : in) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

RenderTally expected_tally(const TileSet& ts, const Assembly& a) {
    RenderTally r;
    for (const auto& [p, t] : a.cells()) {
        (p.z == 0 ? r.large : r.small) += 1;
        if (bond(ts, a, p, Dir::U)) ++r.disks;
        for (Dir d : {Dir::E, Dir::N})
            if (bond(ts, a, p, d)) (p.z == 0 ? r.thick : r.thin) += 1;
    }
    return r;
}

std::string render_svg(const TileSet& ts, const Assembly& a, const RenderOptions& opt) {
    int x0 = INT_MAX, x1 = INT_MIN, y0 = INT_MAX, y1 = INT_MIN;
    for (const auto& [p, t] : a.cells()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    if (a.empty()) x0 = x1 = y0 = y1 = 0;
    const long long W = static_cast<long long>(x1 - x0 + 1) * opt.cell + 2LL * opt.margin;
    const long long H = static_cast<long long>(y1 - y0 + 1) * opt.cell + 2LL * opt.margin;
    if (W > opt.max_width || H > opt.max_height)
        throw std::invalid_argument("viewport overflow: need " + std::to_string(W) + "x" + std::to_string(H) + " px, limit " +
                                    std::to_string(opt.max_width) + "x" + std::to_string(opt.max_height));
    const double c = opt.cell;
    auto left = [&](int x) { return opt.margin + (x - x0) * c; };
    auto top = [&](int y) { return opt.margin + (y1 - y) * c; };
    auto cx = [&](int x) { return left(x) + c / 2; };
    auto cy = [&](int y) { return top(y) + c / 2; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "<rect class=\"background\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    const auto cells = a.sorted();
    // Layers back to front: large squares, thick bonds, small squares, thin bonds, disks.
    for (const auto& [p, t] : cells) {
        if (p.z != 0) continue;
        const char* fill = opt.shade_write_gadgets && is_write_gadget(ts[t].name) ? "#bdbdbd" : "#ffffff";
        s << "<rect class=\"large\" x=\"" << left(p.x) << "\" y=\"" << top(p.y) << "\" width=\"" << c << "\" height=\"" << c
          << "\" fill=\"" << fill << "\" stroke=\"#555\" stroke-width=\"0.5\"><title>" << xml_escape(ts[t].name) << "</title></rect>\n";
    }
    auto bonds = [&](int z, const char* cls, double width) {
        for (const auto& [p, t] : cells) {
            if (p.z != z) continue;
            for (Dir d : {Dir::E, Dir::N}) {
                if (!bond(ts, a, p, d)) continue;
                Vec3 q = p + offset(d);
                s << "<line class=\"" << cls << "\" x1=\"" << cx(p.x) << "\" y1=\"" << cy(p.y) << "\" x2=\"" << cx(q.x) << "\" y2=\""
                  << cy(q.y) << "\" stroke=\"black\" stroke-width=\"" << width << "\"/>\n";
            }
        }
    };
    bonds(0, "thick", c * 0.25);
    const double inset = c * 0.25;
    for (const auto& [p, t] : cells) {
        if (p.z != 1) continue;
        const char* fill = opt.shade_write_gadgets && is_write_gadget(ts[t].name) ? "#d9d9d9" : "#f4f4f4";
        s << "<rect class=\"small\" x=\"" << left(p.x) + inset << "\" y=\"" << top(p.y) + inset << "\" width=\"" << c - 2 * inset
          << "\" height=\"" << c - 2 * inset << "\" fill=\"" << fill << "\" stroke=\"#222\" stroke-width=\"0.5\"><title>" << xml_escape(ts[t].name)
          << "</title></rect>\n";
    }
    bonds(1, "thin", c * 0.08);
    for (const auto& [p, t] : cells)
        if (p.z == 0 && bond(ts, a, p, Dir::U))
            s << "<circle class=\"disk\" cx=\"" << cx(p.x) << "\" cy=\"" << cy(p.y) << "\" r=\"" << c * 0.12 << "\" fill=\"black\"/>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace tilerect
