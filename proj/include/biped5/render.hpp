#pragma once

#include <string>
#include <vector>

#include "biped5/model_params.hpp"
#include "biped5/simulation.hpp"
#include "biped5/types.hpp"

namespace biped5 {

struct RenderOptions {
  double stride = 0.3;         // m, horizontal shift between successive frames
  double pixels_per_meter = 200.0;
  double margin = 20.0;        // px
};

// SVG 1.1 document with one stick figure per posture (five <line> elements
// each, drawn with joint_positions) plus a single ground line at y = 0.
std::string render_svg(const std::vector<Vec5>& postures, const RobotParams& params,
                       const RenderOptions& options = {});

// Indices of `frames` rows spread uniformly in time over the trajectory
// (nearest sample to t0 + i * span / (frames - 1)); frames == 1 picks t0.
std::vector<std::size_t> pick_frames(const std::vector<double>& times, std::size_t frames);

}  // namespace biped5
