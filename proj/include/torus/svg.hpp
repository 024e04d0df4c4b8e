#pragma once

// Self-contained SVG rendering of stage traces (zonogon layers + domain
// clouds) and overlaid rotation-set hull series.

#include "torus/rotation.hpp"
#include "torus/spreader.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace torus::svg {

// Layered view of a stage trace: each K_i as a stroked path (a marked point
// when degenerate), each D_i cloud as a point group, legend with stage
// indices and gaps. Viewport = bounding box of the final stage inflated 5%.
void render_trace(const spreader::StageTrace& trace, const std::filesystem::path& path);

// Overlaid hulls with an opacity ramp by index; optional target polygon
// overlay (dashed).
void render_hull_series(const std::vector<rotation::RotationEstimate>& estimates,
                        const std::filesystem::path& path,
                        const std::optional<geom::ConvexPolygon>& target = std::nullopt);

// Hulls of the normalized clouds of a generalized estimate.
void render_hull_series(const rotation::GeneralizedRotEstimate& estimate,
                        const std::filesystem::path& path,
                        const std::optional<geom::ConvexPolygon>& target = std::nullopt);

}  // namespace torus::svg
