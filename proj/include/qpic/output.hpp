#pragma once

// File emitters: trajectory CSV, SVG contour frames, and a reader for the SVG
// geometry used by regression tests.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qpic/gaussian_state.hpp"
#include "qpic/picture_engine.hpp"

namespace qpic {

inline constexpr const char* kCsvHeader = "t,mean_x,mean_p,cov_xx,cov_xp,cov_pp";

/// Header plus one row per sample, every value as %.16e (17 significant digits).
std::string format_csv(const std::vector<TrajectorySample>& samples);

struct Circle {
  PhaseVector center{};
  double radius = 0.0;
};

struct Segment {
  PhaseVector from{};
  PhaseVector to{};
};

/// Everything drawn in one frame. Phase space [-8, 8]^2 maps onto a
/// 512 x 512 canvas (32 px per unit, p pointing up).
struct FrameScene {
  ContourEllipse contour;
  std::vector<PhaseVector> trajectory;  ///< centroid path
  std::vector<Circle> reference_circles;
  std::vector<Segment> reference_lines;
  std::vector<Circle> vacuum_circles;  ///< 1/e contour of a coherent state, for scale
};

std::string render_svg(const FrameScene& scene);

/// One drawn primitive with its geometry mapped back to phase-space units
/// (lengths in units, angles in radians). Polylines list x0, p0, x1, p1, ...
struct SvgElement {
  std::string tag;
  std::string role;  ///< value of the `class` attribute
  std::vector<double> values;
};

std::vector<SvgElement> read_svg_geometry(std::string_view svg);

/// Writes `content` to `path`, creating parent directories. Throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qpic
