#include "cenet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cenet {

double Point::norm() const { return std::hypot(x, y); }

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

BoxAA BoxAA::united(const BoxAA& o) const {
    return {std::min(x_min, o.x_min), std::min(y_min, o.y_min), std::max(x_max, o.x_max),
            std::max(y_max, o.y_max)};
}

double Polygon::signed_area() const {
    double a = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices[i];
        const Point& q = vertices[(i + 1) % n];
        a += p.cross(q);
    }
    return a / 2.0;
}

BoxAA Polygon::bounding_box() const {
    BoxAA b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point& p : vertices) {
        b.x_min = std::min(b.x_min, p.x);
        b.y_min = std::min(b.y_min, p.y);
        b.x_max = std::max(b.x_max, p.x);
        b.y_max = std::max(b.y_max, p.y);
    }
    return b;
}

double Polyline::arc_length() const {
    double l = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) l += dist(points[i - 1], points[i]);
    return l;
}

Point Polyline::point_at(double s) const {
    if (points.empty()) return {};
    if (s <= 0.0) return points.front();
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double seg = dist(points[i - 1], points[i]);
        if (s <= seg || i + 1 == points.size()) {
            if (seg <= 0.0) return points[i - 1];
            const double t = std::min(s / seg, 1.0);
            return points[i - 1] + (points[i] - points[i - 1]) * t;
        }
        s -= seg;
    }
    return points.back();
}

Point Polyline::tangent_at(double s) const {
    if (points.size() < 2) return {1.0, 0.0};
    double rem = std::max(s, 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double seg = dist(points[i - 1], points[i]);
        if (rem <= seg || i + 1 == points.size()) {
            Point d = points[i] - points[i - 1];
            const double n = d.norm();
            return n > 0.0 ? Point{d.x / n, d.y / n} : Point{1.0, 0.0};
        }
        rem -= seg;
    }
    return {1.0, 0.0};
}

double iou(const BoxAA& a, const BoxAA& b) {
    const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

Orientation orientation(const BoxAA& b) {
    return b.width() >= b.height() ? Orientation::Horizontal : Orientation::Vertical;
}

namespace {

// Principal direction of the vertex cloud. Isotropic spread ties break
// toward the first edge direction.
Point principal_axis(const std::vector<Point>& v) {
    double mx = 0.0, my = 0.0;
    for (const Point& p : v) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(v.size());
    my /= static_cast<double>(v.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Point& p : v) {
        const double dx = p.x - mx, dy = p.y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double tr = sxx + syy;
    const double disc = std::sqrt(std::max(0.0, (sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy));
    if (disc <= 1e-12 * std::max(tr, 1e-300)) {
        Point d = v[1] - v[0];
        const double n = d.norm();
        return n > 0.0 ? Point{d.x / n, d.y / n} : Point{1.0, 0.0};
    }
    const double lam = (tr + disc) / 2.0;  // larger eigenvalue
    // Eigenvector of [[sxx, sxy], [sxy, syy]] for lam.
    Point e = std::abs(sxy) > 1e-300 ? Point{lam - syy, sxy} : (sxx >= syy ? Point{1, 0} : Point{0, 1});
    const double n = e.norm();
    return n > 0.0 ? Point{e.x / n, e.y / n} : Point{1.0, 0.0};
}

struct ChainSplit {
    Polyline side_a, side_b;  // both ordered by increasing axis projection
};

ChainSplit split_chains(const Polygon& p) {
    const std::vector<Point>& v = p.vertices;
    const std::size_t n = v.size();
    if (n < 4) throw MalformedPolygon("two-chain split needs at least 4 vertices");
    if (p.area() <= 0.0) throw MalformedPolygon("polygon has zero area");

    const Point axis = principal_axis(v);
    // End edges: midpoints with extremal projection on the axis.
    std::size_t e_min = 0, e_max = 0;
    double pr_min = std::numeric_limits<double>::max();
    double pr_max = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < n; ++i) {
        const Point mid = (v[i] + v[(i + 1) % n]) * 0.5;
        const double pr = mid.dot(axis);
        if (pr < pr_min) {
            pr_min = pr;
            e_min = i;
        }
        if (pr > pr_max) {
            pr_max = pr;
            e_max = i;
        }
    }
    if (e_min == e_max) throw MalformedPolygon("end edges coincide");

    auto walk = [&](std::size_t from_edge, std::size_t to_edge) {
        // Vertices strictly after from_edge up to the start of to_edge.
        std::vector<Point> out;
        for (std::size_t i = (from_edge + 1) % n;; i = (i + 1) % n) {
            out.push_back(v[i]);
            if (i == to_edge) break;
        }
        return out;
    };
    std::vector<Point> ca = walk(e_min, e_max);
    std::vector<Point> cb = walk(e_max, e_min);
    if (ca.empty() || cb.empty()) throw MalformedPolygon("degenerate side chain");

    auto orient = [&](std::vector<Point>& c) {
        if (c.size() >= 2 && (c.back() - c.front()).dot(axis) < 0.0)
            std::reverse(c.begin(), c.end());
    };
    orient(ca);
    orient(cb);
    return {Polyline{std::move(ca)}, Polyline{std::move(cb)}};
}

Polyline midline_of(const ChainSplit& split) {
    const auto& a = split.side_a.points;
    const auto& b = split.side_b.points;
    Polyline mid;
    if (a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i) mid.points.push_back((a[i] + b[i]) * 0.5);
    } else {
        // Unequal chains: pair by normalized arc length.
        const std::size_t m = std::max<std::size_t>(std::max(a.size(), b.size()), 2);
        const double la = split.side_a.arc_length();
        const double lb = split.side_b.arc_length();
        for (std::size_t i = 0; i < m; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(m - 1);
            mid.points.push_back((split.side_a.point_at(u * la) + split.side_b.point_at(u * lb)) * 0.5);
        }
    }
    // Drop duplicate consecutive points.
    std::vector<Point> clean;
    for (const Point& q : mid.points)
        if (clean.empty() || dist(clean.back(), q) > 1e-12) clean.push_back(q);
    mid.points = std::move(clean);
    if (mid.points.size() < 2 || mid.arc_length() <= 0.0)
        throw MalformedPolygon("center line collapsed to a point");
    return mid;
}

}  // namespace

Polyline center_line(const Polygon& p) { return midline_of(split_chains(p)); }

std::vector<BoxAA> divide_along_centerline(const Polygon& p, int n) {
    if (n < 1) throw Error("divide_along_centerline: n must be >= 1");
    const ChainSplit split = split_chains(p);
    const Polyline mid = midline_of(split);
    const double len = mid.arc_length();
    const double la = split.side_a.arc_length();
    const double lb = split.side_b.arc_length();
    const double along = len / n;

    std::vector<BoxAA> boxes;
    boxes.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        const Point c = mid.point_at(u * len);
        const Point t = mid.tangent_at(u * len);
        const double across = dist(split.side_a.point_at(u * la), split.side_b.point_at(u * lb));
        const double w = std::abs(t.x) >= std::abs(t.y) ? along : across;
        const double h = std::abs(t.x) >= std::abs(t.y) ? across : along;
        boxes.push_back(BoxAA::from_center(c.x, c.y, w, h));
    }
    return boxes;
}

bool point_in_polygon(const Point& pt, const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    // Boundary proximity counts as inside.
    constexpr double kEdgeTol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        const Point ab = b - a, ap = pt - a;
        const double len2 = ab.dot(ab);
        const double t = len2 > 0.0 ? std::clamp(ap.dot(ab) / len2, 0.0, 1.0) : 0.0;
        if (dist(pt, a + ab * t) <= kEdgeTol) return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool cross_y = (v[i].y > pt.y) != (v[j].y > pt.y);
        if (cross_y) {
            const double x_at = v[i].x + (pt.y - v[i].y) / (v[j].y - v[i].y) * (v[j].x - v[i].x);
            if (pt.x < x_at) inside = !inside;
        }
    }
    return inside;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    if (pts.size() < 3) return pts;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {  // lower hull
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(p - hull[k - 2]) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper hull
        while (k >= t && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::array<Point, 4> min_area_rect(const std::vector<Point>& pts) {
    if (pts.empty()) throw Error("min_area_rect: empty point set");
    std::vector<Point> hull = convex_hull(pts);
    if (hull.size() == 1) return {hull[0], hull[0], hull[0], hull[0]};
    if (hull.size() == 2) return {hull[0], hull[1], hull[1], hull[0]};

    double best_area = std::numeric_limits<double>::max();
    std::array<Point, 4> best{};
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point e = hull[(i + 1) % n] - hull[i];
        const double len = e.norm();
        if (len <= 0.0) continue;
        const Point u{e.x / len, e.y / len};
        const Point v{-u.y, u.x};
        double lo_u = std::numeric_limits<double>::max(), hi_u = std::numeric_limits<double>::lowest();
        double lo_v = lo_u, hi_v = hi_u;
        for (const Point& p : hull) {
            const double pu = p.dot(u), pv = p.dot(v);
            lo_u = std::min(lo_u, pu);
            hi_u = std::max(hi_u, pu);
            lo_v = std::min(lo_v, pv);
            hi_v = std::max(hi_v, pv);
        }
        const double area = (hi_u - lo_u) * (hi_v - lo_v);
        if (area < best_area) {
            best_area = area;
            best = {Point{u.x * lo_u + v.x * lo_v, u.y * lo_u + v.y * lo_v},
                    Point{u.x * hi_u + v.x * lo_v, u.y * hi_u + v.y * lo_v},
                    Point{u.x * hi_u + v.x * hi_v, u.y * hi_u + v.y * hi_v},
                    Point{u.x * lo_u + v.x * hi_v, u.y * lo_u + v.y * hi_v}};
        }
    }
    return best;
}

}  // namespace cenet
