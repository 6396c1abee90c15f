#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ofs {

/// Objective values of one solution (minimization, all finite).
using Objectives = std::vector<double>;

/// Real-valued decision vector.
using Genome = std::vector<double>;

/// A solution bound to a topology node. Empty objectives mean "not yet
/// evaluated".
struct Individual {
    Genome genome;
    Objectives objectives;
    int node_id = 0;

    bool evaluated() const { return !objectives.empty(); }

    bool operator==(const Individual&) const = default;
};

/// Pareto dominance for minimization: a is nowhere worse and somewhere
/// strictly better. Throws std::invalid_argument on dimension mismatch.
bool dominates(const Objectives& a, const Objectives& b);

/// Keeps exactly the points not dominated by any other input point.
/// Input order of survivors is preserved; duplicates are retained.
std::vector<Objectives> nondominated_filter(const std::vector<Objectives>& points);

/// NSGA-II style crowding distances; boundary points get +infinity.
std::vector<double> crowding_distances(const std::vector<Objectives>& points);

enum class ArchiveOutcome {
    kAccepted,
    kRejectedDominated,
    kAcceptedWithTruncation,
};

/// Bounded store of mutually non-dominated solutions.
///
/// A candidate is rejected when any member dominates it or has equal
/// objectives; otherwise it evicts every member it dominates. When the
/// capacity is exceeded the member with the smallest crowding distance
/// is dropped (ties broken by lowest index). Capacity 0 means unbounded.
class ParetoArchive {
  public:
    struct Entry {
        Genome genome;
        Objectives objectives;

        bool operator==(const Entry&) const = default;
    };

    explicit ParetoArchive(std::size_t capacity = 0) : capacity_(capacity) {}

    ArchiveOutcome insert(Entry entry);
    ArchiveOutcome insert(const Individual& individual);

    const std::vector<Entry>& entries() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::size_t capacity() const { return capacity_; }

    std::vector<Objectives> objective_points() const;

  private:
    std::size_t capacity_;
    std::vector<Entry> members_;
};

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

/// Sorts entries by objectives, then genome (lexicographic), so that a
/// front always serializes to the same bytes regardless of how it was
/// assembled.
std::vector<ParetoArchive::Entry> canonical_sorted(std::vector<ParetoArchive::Entry> entries);

/// Front text format: one point per line, objective values separated by
/// a single space. Lines starting with '#' are comments.
void write_front(std::ostream& out, const std::vector<Objectives>& points);
std::vector<Objectives> read_front(std::istream& in);

} // namespace ofs
