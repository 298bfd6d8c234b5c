#pragma once

namespace crdme {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;  // >= 0
};

/// Axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct AxisRect {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }
};

/// Exact area of the intersection of a disk with an axis-aligned rectangle.
///
/// Uses a boundary decomposition (Green's theorem): the intersection is a
/// convex region bounded by circular arcs and straight edge segments, and its
/// area is accumulated piece by piece from closed-form terms. Degenerate
/// rectangles and non-positive radii give 0. Tangential contacts are resolved
/// with a relative tolerance of 1e-13 and contribute nothing.
///
/// Absolute error is a few ulps of max(rect area, pi r^2); in particular it is
/// far below the 1e-12 * max(|rect|, pi r^2) bound the table builders assume.
double circle_rect_area(const Circle& c, const AxisRect& rect);

}  // namespace crdme
