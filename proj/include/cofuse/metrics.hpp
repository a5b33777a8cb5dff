#pragma once

#include "cofuse/decomposition.hpp"
#include "cofuse/image.hpp"

#include <map>
#include <string>

namespace cofuse {

/// Population standard deviation of all pixels, on the 0-255 scale.
double image_std(const GrayImage& img);

struct MetricsReport {
    double std = 0.0;  ///< 0-255 scale
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double residual_norm_1 = 0.0;  ///< ||X1 - Z1 - E1||_F
    double residual_norm_2 = 0.0;
    double pearson_cost = 0.0;     ///< of the final independent components
    double runtime_seconds = 0.0;
    std::map<std::string, double> extra;  ///< additional flat numeric fields

    bool operator==(const MetricsReport&) const = default;
};

MetricsReport build_report(const GrayImage& fused, const DecompositionResult& decomposition, double runtime_seconds,
                           double delta);

/// Flat JSON object; `extra` entries become top-level keys.
std::string to_json(const MetricsReport& report);
MetricsReport report_from_json(const std::string& text);

} // namespace cofuse
