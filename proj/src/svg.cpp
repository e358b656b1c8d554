#include "dubfleet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dubfleet/separation.hpp"

namespace dubfleet {

namespace {

constexpr double kMargin = 60.0;

const char* kPalette[12] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};

struct Frame {
    double xmin, ymax;  // world-space anchors of the viewport

    [[nodiscard]] double sx(double x) const { return x - xmin + kMargin; }
    [[nodiscard]] double sy(double y) const { return ymax - y + kMargin; }
};

std::string path_data(const FleetPath& path, const Frame& frame) {
    std::ostringstream d;
    d.precision(10);
    const Complex start = path.start.position();
    d << "M " << frame.sx(start.real()) << " " << frame.sy(start.imag());
    for (const PathPrimitive& prim : path.primitives) {
        if (prim.duration <= 0.0) continue;
        if (prim.kind == PathPrimitive::Kind::Line) {
            const Complex p = prim.position_at(prim.duration);
            d << " L " << frame.sx(p.real()) << " " << frame.sy(p.imag());
            continue;
        }
        // Split arcs above half a turn so the endpoint parametrization stays
        // unambiguous.
        const double sweep = prim.angular_rate * prim.duration;
        const int pieces = std::abs(sweep) > kPi ? 2 : 1;
        const int sweep_flag = prim.angular_rate > 0.0 ? 0 : 1;  // y flip inverts direction
        for (int i = 1; i <= pieces; ++i) {
            const Complex p = prim.position_at(prim.duration * i / pieces);
            d << " A " << prim.radius << " " << prim.radius << " 0 0 " << sweep_flag << " "
              << frame.sx(p.real()) << " " << frame.sy(p.imag());
        }
    }
    return d.str();
}

std::string ground_track_data(const FleetPath& path, Complex wind, const Frame& frame) {
    std::ostringstream d;
    d.precision(10);
    const double tau = path.duration();
    const int steps = std::max(2, static_cast<int>(tau * 4.0));
    for (int i = 0; i <= steps; ++i) {
        const double t = tau * i / steps;
        const Complex p = path.eval(t).position() + wind * t;
        d << (i == 0 ? "M " : " L ") << frame.sx(p.real()) << " " << frame.sy(p.imag());
    }
    return d.str();
}

}  // namespace

void write_paths_svg(const std::string& file_path, const std::vector<FleetPath>& paths,
                     double delta, Complex wind) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin, ymin = xmin, ymax = -xmin;
    const auto grow = [&](Complex p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    };
    for (const FleetPath& path : paths) {
        for (const TimedLeg& leg : timed_legs(path)) {
            const Aabb box = primitive_box(leg.primitive);
            grow({box.xmin, box.ymin});
            grow({box.xmax, box.ymax});
        }
        grow(path.start.position());
        grow(path.end.position() + wind * path.duration());
    }
    if (paths.empty()) xmin = xmax = ymin = ymax = 0.0;

    const Frame frame{xmin, ymax};
    const double width = xmax - xmin + 2.0 * kMargin;
    const double height = ymax - ymin + 2.0 * kMargin;

    std::ofstream out(file_path);
    if (!out) throw std::runtime_error("cannot write SVG file: " + file_path);
    out.precision(10);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\" data-origin-x=\""
        << xmin << "\" data-origin-y=\"" << ymax << "\" data-margin=\"" << kMargin << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t k = 0; k < paths.size(); ++k) {
        const FleetPath& path = paths[k];
        const char* color = kPalette[k % 12];
        const double tau = path.duration();

        // Separation discs at regular sample instants.
        const int discs = 12;
        for (int i = 0; i <= discs; ++i) {
            const double t = tau * i / discs;
            const Complex p = tau > 0.0 ? path.eval(t).position() : path.start.position();
            out << "  <circle cx=\"" << frame.sx(p.real()) << "\" cy=\"" << frame.sy(p.imag())
                << "\" r=\"" << delta / 2.0 << "\" fill=\"" << color
                << "\" fill-opacity=\"0.08\" stroke=\"none\"/>\n";
        }

        if (std::abs(wind) > 0.0 && tau > 0.0) {
            out << "  <path d=\"" << ground_track_data(path, wind, frame)
                << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" opacity=\"0.7\"/>\n";
        }
        out << "  <path class=\"air-path\" d=\"" << path_data(path, frame)
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";

        const Complex s = path.start.position();
        const Complex e = path.end.position();
        out << "  <circle cx=\"" << frame.sx(s.real()) << "\" cy=\"" << frame.sy(s.imag())
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        out << "  <circle cx=\"" << frame.sx(e.real()) << "\" cy=\"" << frame.sy(e.imag())
            << "\" r=\"4\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace dubfleet
