#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sclub/graph.hpp"

namespace sclub {

/// Two interior classes (rows of the owning record's class table) whose
/// members are farther than s apart inside the cluster.
///
/// cells[a*b+b'] is the longest future a-b' connection that would bring the
/// pair within s, or kStar when no such length in [2, s-2] exists.
struct Request {
    std::uint32_t w = 0;
    std::uint32_t z = 0;  // w <= z once canonical
    std::vector<Dist> cells;

    friend bool operator==(const Request&, const Request&) = default;
};

/// Record for one potential s-club that still touches the current bag.
///
/// `boundary` is ascending. `dist` is the |b| x |b| truncated distance table
/// between boundary vertices inside the cluster. `classes` holds one row of
/// length |b| per distinct interior distance vector. Canonical form keeps
/// class rows sorted and unique and requests sorted and unique.
struct ClusterRecord {
    std::vector<Vertex> boundary;
    std::vector<Dist> dist;
    std::vector<Dist> classes;
    std::vector<Request> requests;

    std::size_t width() const noexcept { return boundary.size(); }
    std::size_t row_count() const noexcept { return boundary.empty() ? 0 : classes.size() / boundary.size(); }
    std::span<const Dist> row(std::size_t r) const {
        return std::span<const Dist>(classes).subspan(r * width(), width());
    }
    Dist d(std::size_t a, std::size_t b) const { return dist[a * width() + b]; }

    /// Single-vertex cluster: D = {0}, no classes, no requests.
    static ClusterRecord singleton(Vertex v);

    friend bool operator==(const ClusterRecord&, const ClusterRecord&) = default;
};

struct RequestOutcome {
    enum class Kind { Open, Fulfilled, AllStar };
    Kind kind = Kind::Open;
    std::vector<Dist> cells;  // set for Open
};

/// Cells for the class pair with boundary vectors `wa` and `za` against the
/// boundary table `dist` (|b| x |b|). FULFILLED if some cell already admits the
/// current boundary distance; ALL_STAR if no cell is usable.
RequestOutcome request_from_distances(std::span<const Dist> wa, std::span<const Dist> za,
                                      std::span<const Dist> dist, int s);

/// Merge identical class rows (remapping request references), normalize
/// request endpoints, and merge identical requests. Result is canonical.
ClusterRecord dedup_rows(ClusterRecord record);
void canonicalize(ClusterRecord& record);

/// Back-pointer into the child solution lists.
struct Provenance {
    std::int32_t left = -1;
    std::int32_t right = -1;
};

struct Solution {
    std::vector<ClusterRecord> clusters;  // canonical: ordered by smallest boundary vertex
    int counter = 0;
    Provenance from;
    /// Shadow mode only: per-vertex cluster label, -1 outside the subtree.
    std::vector<int> shadow;
};

void canonicalize(Solution& sol);

/// Byte encoding of everything but the counter (and provenance/shadow).
/// Order-insensitive: clusters, class rows and requests are canonicalized first.
std::string canonical_key(const Solution& sol);

/// Encoding of an already canonical solution (no copy).
void encode_canonical(const Solution& sol, std::string& out);

/// Signature of the bag partition (boundaries only).
std::string boundary_signature(const Solution& sol);

/// Map from canonical key to the lowest-counter solution seen for it.
class SolutionSet {
public:
    /// Returns true if `sol` was stored (new key or strictly lower counter).
    bool insert(Solution sol);
    bool insert(std::string key, Solution sol);

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Solution* find(const std::string& key) const;

    /// Solutions ordered by canonical key.
    std::vector<Solution> take_sorted() &&;

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Solution> items_;
    std::vector<std::string> keys_;
};

}  // namespace sclub
