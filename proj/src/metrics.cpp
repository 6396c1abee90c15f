#include "ofs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ofs {

double generational_distance(const std::vector<Objectives>& front,
                             const std::vector<Objectives>& reference) {
    if (front.empty() || reference.empty()) {
        throw std::invalid_argument("generational_distance: empty point set");
    }
    double total = 0.0;
    for (const auto& p : front) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : reference) {
            if (p.size() != r.size()) {
                throw std::invalid_argument("generational_distance: dimension mismatch");
            }
            double d2 = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                const double d = p[k] - r[k];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(front.size());
}

double hypervolume_2d(const std::vector<Objectives>& points, const Objectives& reference) {
    if (reference.size() != 2) {
        throw std::invalid_argument("hypervolume_2d: reference must have two objectives");
    }
    std::vector<Objectives> box;
    for (const auto& p : points) {
        if (p.size() != 2) throw std::invalid_argument("hypervolume_2d: point dimension != 2");
        if (p[0] < reference[0] && p[1] < reference[1]) box.push_back(p);
    }
    auto front = nondominated_filter(box);
    std::sort(front.begin(), front.end());
    // Staircase sweep left to right; after the filter f2 is non-increasing.
    double volume = 0.0;
    double prev_f2 = reference[1];
    for (const auto& p : front) {
        if (p[1] >= prev_f2) continue; // duplicate f1 column already covered
        volume += (reference[0] - p[0]) * (prev_f2 - p[1]);
        prev_f2 = p[1];
    }
    return volume;
}

} // namespace ofs
