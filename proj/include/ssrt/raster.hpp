#pragma once

#include <span>

#include "ssrt/image.hpp"

namespace ssrt {

// Binary shape rasterisation onto an existing canvas: a pixel is set to 1
// when its center lies inside the shape. Shapes are given in centered pixel
// coordinates; angles are measured from +x towards +y.

void fill_rectangle(GrayImage& canvas, Point2 center, double angle, double length, double width);
void fill_ellipse(GrayImage& canvas, Point2 center, double angle, double semi_major, double semi_minor);
// Closed polygon, either winding.
void fill_polygon(GrayImage& canvas, std::span<const Point2> vertices);

}  // namespace ssrt
