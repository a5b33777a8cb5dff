#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cofuse {

struct ValidationOptions {
    std::uint64_t seed = 1;
    bool quick = false;  ///< smaller instances, a few seconds in total
    int threads = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;  ///< measured quantity, compared against `bound`
    double bound = 0.0;
    std::string detail;
    double seconds = 0.0;
};

/// Self-contained synthetic checks: common supports of random coded pairs,
/// recovery of a planted coupled model, fuse(img, img) == img, fuse(img, 0)
/// == img and the exactness of patch extraction followed by assembly.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

/// One line per check plus a summary line.
std::string format_results(const std::vector<CheckResult>& results);

} // namespace cofuse
