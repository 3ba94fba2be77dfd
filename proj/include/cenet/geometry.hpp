#pragma once

#include <array>
#include <vector>

#include "cenet/common.hpp"

namespace cenet {

struct Point {
    double x = 0.0, y = 0.0;

    Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {}
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    double dot(const Point& o) const { return x * o.x + y * o.y; }
    double cross(const Point& o) const { return x * o.y - y * o.x; }
    double norm() const;
};

double dist(const Point& a, const Point& b);

// Axis-aligned box. Degenerate (zero-area) boxes are representable; callers
// that require positive area check explicitly.
struct BoxAA {
    double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;

    BoxAA() = default;
    BoxAA(double x0, double y0, double x1, double y1) : x_min(x0), y_min(y0), x_max(x1), y_max(y1) {}
    static BoxAA from_center(double cx, double cy, double w, double h) {
        return {cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2};
    }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Point center() const { return {(x_min + x_max) / 2, (y_min + y_max) / 2}; }
    bool valid() const { return x_min <= x_max && y_min <= y_max; }
    bool contains(const Point& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    BoxAA united(const BoxAA& o) const;
};

// Simple closed polygon, >= 3 vertices, no repeated consecutive vertices.
struct Polygon {
    std::vector<Point> vertices;

    Polygon() = default;
    explicit Polygon(std::vector<Point> v) : vertices(std::move(v)) {}
    static Polygon from_box(const BoxAA& b) {
        return Polygon({{b.x_min, b.y_min}, {b.x_max, b.y_min}, {b.x_max, b.y_max}, {b.x_min, b.y_max}});
    }
    double signed_area() const;
    double area() const { return std::abs(signed_area()); }
    BoxAA bounding_box() const;
};

struct Polyline {
    std::vector<Point> points;

    double arc_length() const;
    // Point at arc-length position s in [0, arc_length]; clamped outside.
    Point point_at(double s) const;
    // Unit tangent of the segment containing arc-length position s.
    Point tangent_at(double s) const;
};

enum class Orientation { Horizontal, Vertical };

// |A ∩ B| / |A ∪ B|; 0 when disjoint or when either box has zero area.
double iou(const BoxAA& a, const BoxAA& b);

// Region orientation for rectification. Ties go Horizontal.
Orientation orientation(const BoxAA& b);

// Mid-line of a two-chain polygon, ordered from one text end to the other.
// The polygon's two "end" edges are the edges whose midpoints are farthest
// apart along the principal axis of the vertices (first-edge direction when
// the vertex spread is isotropic); the vertex runs between them are the two
// side chains. Throws MalformedPolygon when the split fails.
Polyline center_line(const Polygon& p);

// n axis-aligned boxes centered at arc-length-uniform samples of the center
// line. Extent along the line is arc_length/n, extent across is the local
// distance between the two side chains; the box axes are assigned by the
// dominant component of the local tangent.
std::vector<BoxAA> divide_along_centerline(const Polygon& p, int n);

// Crossing-number point-in-polygon test. Points on the boundary count as
// inside within a small tolerance.
bool point_in_polygon(const Point& pt, const Polygon& poly);

// Convex hull (monotone chain), counter-clockwise in a y-up frame, no
// collinear points kept. Returns the input when fewer than 3 points.
std::vector<Point> convex_hull(std::vector<Point> pts);

// Minimum-area rectangle over a point set (rotating calipers on the hull).
// Returns 4 corners in hull-walk order.
std::array<Point, 4> min_area_rect(const std::vector<Point>& pts);

}  // namespace cenet
