#pragma once

#include "gasket/gasket_level.hpp"

#include <string>
#include <vector>

namespace gasket {

struct SvgLayer {
    std::string label;
    std::vector<char> members;  // flag per vertex of the shared level
};

struct SvgStyle {
    int wire_scale = 3;   // cells of this scale are outlined (capped at the level)
    double width = 800;   // pixels
    bool mark_vertices = true;
};

// Deterministic document: Tr outline, wireframe, one translucent fill layer per
// cluster (cells whose corners are all members), vertex marks and a legend.
// Throws std::invalid_argument if a layer does not match the level.
std::string render_svg(const GasketLevel& ctx, const std::vector<SvgLayer>& layers, const SvgStyle& style = {});

}  // namespace gasket
