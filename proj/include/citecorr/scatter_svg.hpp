#pragma once

#include "citecorr/correlator.hpp"

#include <string>

namespace citecorr {

struct ScatterStyle {
    int width = 640;
    int height = 480;
    int margin = 60;
};

/// Density-shaded scatter of ln(citations + 1) against ln(downloads + 1),
/// with log-count ticks and the least-squares line clipped to the plot.
/// Output is deterministic for a given result.
std::string render_scatter(const CorrelationResult& result, const ScatterStyle& style = {});

} // namespace citecorr
