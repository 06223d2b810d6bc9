#include "tautchern/combin.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tautchern {

MarkedSpace MarkedSpace::make(int genus, std::vector<std::string> markings) {
    if (genus < 1) throw std::invalid_argument("MarkedSpace: genus must be >= 1");
    if (markings.empty()) throw std::invalid_argument("MarkedSpace: markings must be nonempty");
    std::sort(markings.begin(), markings.end());
    if (std::adjacent_find(markings.begin(), markings.end()) != markings.end())
        throw std::invalid_argument("MarkedSpace: duplicate marking label");
    if (!std::binary_search(markings.begin(), markings.end(), std::string(kAnchor)))
        throw std::invalid_argument("MarkedSpace: anchor marking \"1\" is required");
    MarkedSpace out;
    out.genus = genus;
    out.markings = std::move(markings);
    return out;
}

int MarkedSpace::marking_index(const std::string& label) const {
    auto it = std::lower_bound(markings.begin(), markings.end(), label);
    if (it == markings.end() || *it != label) return -1;
    return static_cast<int>(it - markings.begin());
}

bool Bipartition::contains(const std::string& label) const {
    return std::binary_search(side.begin(), side.end(), label);
}

std::string Bipartition::str() const {
    std::string out = "(" + std::to_string(h) + ",{";
    for (std::size_t i = 0; i < side.size(); ++i) {
        if (i) out += ",";
        out += side[i];
    }
    return out + "})";
}

bool bipartition_valid(const MarkedSpace& space, const Bipartition& b) {
    if (b.h < 0 || b.h > space.genus) return false;
    if (!std::is_sorted(b.side.begin(), b.side.end())) return false;
    if (std::adjacent_find(b.side.begin(), b.side.end()) != b.side.end()) return false;
    if (!b.contains(MarkedSpace::kAnchor)) return false;
    for (const auto& label : b.side)
        if (space.marking_index(label) < 0) return false;
    std::size_t comp = space.markings.size() - b.side.size();
    if (b.h == 0 && b.side.size() < 2) return false;
    if (b.h == space.genus && comp < 2) return false;
    return true;
}

std::vector<Bipartition> stable_bipartitions(const MarkedSpace& space) {
    if (space.genus < 1) throw std::invalid_argument("stable_bipartitions: invalid space");
    // Subsets of the non-anchor markings, in lexicographic order of the
    // resulting sorted label sets.
    std::vector<std::string> rest;
    for (const auto& m : space.markings)
        if (m != MarkedSpace::kAnchor) rest.push_back(m);
    std::vector<std::vector<std::string>> subsets;
    std::size_t n = rest.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::string> side{MarkedSpace::kAnchor};
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) side.push_back(rest[i]);
        std::sort(side.begin(), side.end());
        subsets.push_back(std::move(side));
    }
    std::vector<Bipartition> out;
    for (int h = 0; h <= space.genus; ++h)
        for (const auto& side : subsets) {
            Bipartition b{h, side};
            if (bipartition_valid(space, b)) out.push_back(std::move(b));
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool bipartition_leq(const Bipartition& a, const Bipartition& b) {
    return a.h <= b.h &&
           std::includes(b.side.begin(), b.side.end(), a.side.begin(), a.side.end());
}

std::vector<Chain> enumerate_chains(const MarkedSpace& space, int length) {
    if (length < 0) throw std::invalid_argument("enumerate_chains: negative length");
    std::vector<Chain> out;
    if (length == 0) {
        out.push_back({});
        return out;
    }
    std::vector<Bipartition> all = stable_bipartitions(space);
    Chain cur;
    // Depth-first over the full list at every level: the enumeration order
    // does not refine the partial order (a strict subset may sort later),
    // so successors can sit anywhere in the list.
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (const auto& cand : all) {
            if (!cur.empty() &&
                !(bipartition_leq(cur.back(), cand) && cur.back() != cand))
                continue;
            cur.push_back(cand);
            self(self);
            cur.pop_back();
        }
    };
    extend(extend);
    return out;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    if (total < 1 || parts < 1) throw std::invalid_argument("compositions: total and parts must be >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int slots) -> void {
        if (slots == 1) {
            if (remaining >= 1) {
                cur.push_back(remaining);
                out.push_back(cur);
                cur.pop_back();
            }
            return;
        }
        for (int first = 1; first <= remaining - (slots - 1); ++first) {
            cur.push_back(first);
            self(self, remaining - first, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, total, parts);
    return out;
}

}  // namespace tautchern
