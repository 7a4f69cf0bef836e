#include "smc/csv.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smc {

std::string format_double(double v) {
    std::array<char, 40> buffer{};
    const int written = std::snprintf(buffer.data(), buffer.size(), "%.17g", v);
    return std::string(buffer.data(), static_cast<std::size_t>(written));
}

std::string trajectory_csv(const TrajectoryLog& log) {
    if (log.rows.empty()) throw std::invalid_argument("trajectory_csv: empty log");
    const std::size_t n = log.rows.front().state.size();

    std::ostringstream out;
    out << "t";
    for (std::size_t i = 0; i < n; ++i) out << ",x" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",xd" << i;
    out << ",s,s_phi,K,u,V\n";

    for (std::size_t k = 0; k < log.rows.size(); ++k) {
        const TrajectoryRow& row = log.rows[k];
        out << format_double(log.time(k));
        for (double v : row.state) out << "," << format_double(v);
        for (double v : row.desired) out << "," << format_double(v);
        out << "," << format_double(row.s) << "," << format_double(row.s_phi) << ","
            << format_double(row.K) << "," << format_double(row.u) << "," << format_double(row.V)
            << "\n";
    }
    return out.str();
}

std::string envelope_csv(const TrajectoryLog& log, double eta) {
    if (log.rows.empty()) throw std::invalid_argument("envelope_csv: empty log");
    const double s0 = std::abs(log.rows.front().s_phi);
    std::ostringstream out;
    out << "t,abs_s_phi,envelope\n";
    for (std::size_t k = 0; k < log.rows.size(); ++k) {
        const double t = log.time(k);
        out << format_double(t) << "," << format_double(std::abs(log.rows[k].s_phi)) << ","
            << format_double(s0 - eta * t) << "\n";
    }
    return out.str();
}

namespace {

using Point = std::array<double, 2>;
using Polygon = std::vector<Point>;

/// Keep the part of a convex polygon with a*x + b*y <= c.
Polygon clip_halfplane(const Polygon& poly, double a, double b, double c) {
    Polygon kept;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const double dp = a * p[0] + b * p[1] - c;
        const double dq = a * q[0] + b * q[1] - c;
        if (dp <= 0.0) kept.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double t = dp / (dp - dq);
            kept.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return kept;
}

Polygon rectangle(double half_x, double half_y) {
    return {{-half_x, -half_y}, {half_x, -half_y}, {half_x, half_y}, {-half_x, half_y}};
}

void emit_polygon(std::ostringstream& out, const std::string& shape, const Polygon& poly) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out << shape << "," << i << "," << format_double(poly[i][0]) << ","
            << format_double(poly[i][1]) << "\n";
    }
}

}  // namespace

std::string region_csv(const ConvergenceRegion& reg) {
    if (reg.surface.order_n != 2) {
        throw std::invalid_argument("region_csv: planar geometry is only defined for n = 2");
    }
    const double bx = reg.per_derivative_bounds[0];
    const double by = reg.per_derivative_bounds[1];
    const double c0 = reg.surface.coeffs_c[0];  // lambda
    const double c1 = reg.surface.coeffs_c[1];  // 1

    const Polygon box = rectangle(bx, by);
    const Polygon frame = rectangle(1.5 * bx, 1.5 * by);
    // |c . e| <= phi carved out of the frame / the box.
    auto strip = [&](Polygon poly) {
        poly = clip_halfplane(poly, c0, c1, reg.phi);
        poly = clip_halfplane(poly, -c0, -c1, reg.phi);
        return poly;
    };

    std::ostringstream out;
    out << "shape,idx,e0,e1\n";
    emit_polygon(out, "box", box);
    emit_polygon(out, "layer", strip(frame));
    emit_polygon(out, "region", strip(box));
    return out.str();
}

std::string witness_trace_csv(const WitnessTrace& trace) {
    std::ostringstream out;
    out << "t,s";
    for (std::size_t i = 0; i < trace.derivatives.size(); ++i) out << ",err" << i;
    out << "\n";
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        out << format_double(trace.t[k]) << "," << format_double(trace.s[k]);
        for (const auto& column : trace.derivatives) out << "," << format_double(column[k]);
        out << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_file: cannot open " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write_file: short write to " + path);
}

}  // namespace smc
