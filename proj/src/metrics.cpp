#include "cofuse/metrics.hpp"

#include "cofuse/error.hpp"

#include <json.hpp>

#include <cmath>

namespace cofuse {

double image_std(const GrayImage& img)
{
    if (img.pixels.size() == 0)
        throw dimension_error("image_std of an empty image");
    // Shifted by the first pixel so that a constant image gives exactly 0.
    const Eigen::ArrayXXd shifted = img.pixels.array() - img.pixels(0, 0);
    const double var = (shifted - shifted.mean()).square().mean();
    return 255.0 * std::sqrt(var);
}

MetricsReport build_report(const GrayImage& fused, const DecompositionResult& decomposition, double runtime_seconds,
                           double delta)
{
    MetricsReport r;
    r.std = image_std(fused);
    r.mean = fused.pixels.mean();
    r.min = fused.pixels.minCoeff();
    r.max = fused.pixels.maxCoeff();
    r.residual_norm_1 = decomposition.residual1.data.norm();
    r.residual_norm_2 = decomposition.residual2.data.norm();
    r.pearson_cost = pearson_cost(decomposition.e1.data, decomposition.e2.data, delta);
    r.runtime_seconds = runtime_seconds;
    return r;
}

std::string to_json(const MetricsReport& report)
{
    nlohmann::ordered_json j;
    j["std"] = report.std;
    j["mean"] = report.mean;
    j["min"] = report.min;
    j["max"] = report.max;
    j["residual_norm_1"] = report.residual_norm_1;
    j["residual_norm_2"] = report.residual_norm_2;
    j["pearson_cost"] = report.pearson_cost;
    j["runtime_seconds"] = report.runtime_seconds;
    for (const auto& [key, value] : report.extra)
        j[key] = value;
    return j.dump(2) + "\n";
}

MetricsReport report_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(std::string("malformed report: ") + e.what());
    }
    if (!j.is_object())
        throw error("report must be a JSON object");

    MetricsReport r;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number())
            throw error("report field " + key + " is not a number");
        const double v = value.get<double>();
        if (key == "std")
            r.std = v;
        else if (key == "mean")
            r.mean = v;
        else if (key == "min")
            r.min = v;
        else if (key == "max")
            r.max = v;
        else if (key == "residual_norm_1")
            r.residual_norm_1 = v;
        else if (key == "residual_norm_2")
            r.residual_norm_2 = v;
        else if (key == "pearson_cost")
            r.pearson_cost = v;
        else if (key == "runtime_seconds")
            r.runtime_seconds = v;
        else
            r.extra[key] = v;
    }
    return r;
}

} // namespace cofuse
