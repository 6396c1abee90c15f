#include "ofs/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ofs {

bool dominates(const Objectives& a, const Objectives& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: objective dimension mismatch");
    }
    bool no_worse = true;
    bool better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            no_worse = false;
            break;
        }
        if (a[i] < b[i]) better = true;
    }
    return no_worse && better;
}

std::vector<Objectives> nondominated_filter(const std::vector<Objectives>& points) {
    std::vector<Objectives> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i && dominates(points[j], points[i])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(points[i]);
    }
    return out;
}

std::vector<double> crowding_distances(const std::vector<Objectives>& points) {
    const std::size_t n = points.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    const std::size_t dim = points[0].size();
    const double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[a][m] < points[b][m]; });
        const double lo = points[order.front()][m];
        const double hi = points[order.back()][m];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        if (hi <= lo) continue; // degenerate objective, interior adds nothing
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (dist[order[k]] == inf) continue;
            dist[order[k]] += (points[order[k + 1]][m] - points[order[k - 1]][m]) / (hi - lo);
        }
    }
    return dist;
}

ArchiveOutcome ParetoArchive::insert(Entry entry) {
    if (entry.objectives.empty()) {
        throw std::invalid_argument("ParetoArchive::insert: candidate not evaluated");
    }
    for (const Entry& m : members_) {
        if (m.objectives == entry.objectives || dominates(m.objectives, entry.objectives)) {
            return ArchiveOutcome::kRejectedDominated;
        }
    }
    std::erase_if(members_, [&](const Entry& m) { return dominates(entry.objectives, m.objectives); });
    members_.push_back(std::move(entry));
    if (capacity_ == 0 || members_.size() <= capacity_) {
        return ArchiveOutcome::kAccepted;
    }
    // Over capacity by exactly one: drop the most crowded member. Ties go
    // to the lowest index for reproducible runs.
    std::vector<Objectives> pts;
    pts.reserve(members_.size());
    for (const Entry& m : members_) pts.push_back(m.objectives);
    const std::vector<double> dist = crowding_distances(pts);
    std::size_t victim = 0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
        if (dist[i] < dist[victim]) victim = i;
    }
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(victim));
    return ArchiveOutcome::kAcceptedWithTruncation;
}

ArchiveOutcome ParetoArchive::insert(const Individual& individual) {
    if (!individual.evaluated()) {
        throw std::invalid_argument("ParetoArchive::insert: candidate not evaluated");
    }
    return insert(Entry{individual.genome, individual.objectives});
}

std::vector<Objectives> ParetoArchive::objective_points() const {
    std::vector<Objectives> pts;
    pts.reserve(members_.size());
    for (const Entry& m : members_) pts.push_back(m.objectives);
    return pts;
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

std::vector<ParetoArchive::Entry> canonical_sorted(std::vector<ParetoArchive::Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.objectives != b.objectives) return a.objectives < b.objectives;
        return a.genome < b.genome;
    });
    return entries;
}

void write_front(std::ostream& out, const std::vector<Objectives>& points) {
    for (const Objectives& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ' ';
            out << format_double(p[i]);
        }
        out << '\n';
    }
}

std::vector<Objectives> read_front(std::istream& in) {
    std::vector<Objectives> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Objectives p;
        const char* cur = line.data();
        const char* end = line.data() + line.size();
        while (cur < end) {
            while (cur < end && *cur == ' ') ++cur;
            if (cur == end) break;
            double v = 0;
            auto [next, ec] = std::from_chars(cur, end, v);
            if (ec != std::errc{}) throw std::runtime_error("read_front: malformed value in '" + line + "'");
            p.push_back(v);
            cur = next;
        }
        if (!p.empty()) points.push_back(std::move(p));
    }
    return points;
}

} // namespace ofs
