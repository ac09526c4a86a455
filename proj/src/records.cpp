#include "sclub/records.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sclub {

ClusterRecord ClusterRecord::singleton(Vertex v) {
    ClusterRecord rec;
    rec.boundary = {v};
    rec.dist = {0};
    return rec;
}

RequestOutcome request_from_distances(std::span<const Dist> wa, std::span<const Dist> za,
                                      std::span<const Dist> dist, int s) {
    const std::size_t b = wa.size();
    if (za.size() != b || dist.size() != b * b)
        throw std::invalid_argument("request_from_distances: boundary size mismatch");
    RequestOutcome out;
    out.cells.assign(b * b, kStar);
    bool any = false;
    for (std::size_t a = 0; a < b; ++a) {
        for (std::size_t c = a + 1; c < b; ++c) {
            const Dist delta = std::min(add_capped(wa[a], za[c], s), add_capped(wa[c], za[a], s));
            if (delta == kInf || int(delta) >= s - 1) continue;
            const Dist cell = Dist(s - int(delta));
            if (dist[a * b + c] != kInf && dist[a * b + c] <= cell) return {RequestOutcome::Kind::Fulfilled, {}};
            out.cells[a * b + c] = out.cells[c * b + a] = cell;
            any = true;
        }
    }
    if (!any) return {RequestOutcome::Kind::AllStar, {}};
    return out;
}

namespace {

bool row_less(std::span<const Dist> x, std::span<const Dist> y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

bool request_less(const Request& x, const Request& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.z != y.z) return x.z < y.z;
    return x.cells < y.cells;
}

}  // namespace

void canonicalize(ClusterRecord& rec) {
    const std::size_t b = rec.width();
    const std::size_t rows = rec.row_count();
    if (b > 0 && rec.classes.size() % b != 0) throw std::logic_error("class table not a multiple of the boundary");

    std::vector<std::uint32_t> order(rows);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) { return row_less(rec.row(x), rec.row(y)); });

    std::vector<std::uint32_t> remap(rows);
    std::vector<Dist> classes;
    classes.reserve(rec.classes.size());
    std::uint32_t kept = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        const auto r = rec.row(order[i]);
        if (i > 0 && std::equal(r.begin(), r.end(), rec.row(order[i - 1]).begin()))
            remap[order[i]] = kept - 1;
        else {
            classes.insert(classes.end(), r.begin(), r.end());
            remap[order[i]] = kept++;
        }
    }
    rec.classes = std::move(classes);

    for (auto& q : rec.requests) {
        if (q.w >= rows || q.z >= rows) throw std::logic_error("request references a missing class row");
        q.w = remap[q.w];
        q.z = remap[q.z];
        if (q.w > q.z) std::swap(q.w, q.z);
    }
    std::sort(rec.requests.begin(), rec.requests.end(), request_less);
    rec.requests.erase(std::unique(rec.requests.begin(), rec.requests.end()), rec.requests.end());
}

ClusterRecord dedup_rows(ClusterRecord record) {
    canonicalize(record);
    return record;
}

void canonicalize(Solution& sol) {
    for (auto& c : sol.clusters) canonicalize(c);
    std::sort(sol.clusters.begin(), sol.clusters.end(),
              [](const ClusterRecord& x, const ClusterRecord& y) { return x.boundary.front() < y.boundary.front(); });
}

namespace {

void put_u32(std::string& out, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back(char((x >> (8 * i)) & 0xFF));
}

void put_bytes(std::string& out, std::span<const Dist> bytes) {
    out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

}  // namespace

void encode_canonical(const Solution& sol, std::string& out) {
    out.clear();
    put_u32(out, std::uint32_t(sol.clusters.size()));
    for (const auto& c : sol.clusters) {
        put_u32(out, std::uint32_t(c.width()));
        for (Vertex v : c.boundary) put_u32(out, std::uint32_t(v));
        put_bytes(out, c.dist);
        put_u32(out, std::uint32_t(c.row_count()));
        put_bytes(out, c.classes);
        put_u32(out, std::uint32_t(c.requests.size()));
        for (const auto& q : c.requests) {
            put_u32(out, q.w);
            put_u32(out, q.z);
            put_bytes(out, q.cells);
        }
    }
}

std::string canonical_key(const Solution& sol) {
    Solution copy;
    copy.clusters = sol.clusters;
    canonicalize(copy);
    std::string key;
    encode_canonical(copy, key);
    return key;
}

std::string boundary_signature(const Solution& sol) {
    std::string out;
    for (const auto& c : sol.clusters) {
        put_u32(out, std::uint32_t(c.width()));
        for (Vertex v : c.boundary) put_u32(out, std::uint32_t(v));
    }
    return out;
}

bool SolutionSet::insert(Solution sol) {
    canonicalize(sol);
    std::string key;
    encode_canonical(sol, key);
    return insert(std::move(key), std::move(sol));
}

bool SolutionSet::insert(std::string key, Solution sol) {
    auto [it, fresh] = index_.try_emplace(key, items_.size());
    if (fresh) {
        items_.push_back(std::move(sol));
        keys_.push_back(std::move(key));
        return true;
    }
    auto& incumbent = items_[it->second];
    if (sol.counter < incumbent.counter) {
        incumbent = std::move(sol);
        return true;
    }
    return false;
}

const Solution* SolutionSet::find(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<Solution> SolutionSet::take_sorted() && {
    std::vector<std::size_t> order(items_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys_[x] < keys_[y]; });
    std::vector<Solution> out;
    out.reserve(items_.size());
    for (std::size_t i : order) out.push_back(std::move(items_[i]));
    index_.clear();
    items_.clear();
    keys_.clear();
    return out;
}

}  // namespace sclub
