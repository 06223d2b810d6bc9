#pragma once

#include <compare>
#include <string>
#include <vector>

namespace tautchern {

/*
 * The ambient space: a genus g >= 1 together with a nonempty set of marking
 * labels containing the distinguished anchor "1". Every subset S appearing
 * in a bipartition is normalized to contain the anchor, so the complement
 * representative of a boundary divisor is never materialized.
 */
struct MarkedSpace {
    int genus = 0;
    std::vector<std::string> markings;  // sorted, distinct

    static constexpr const char* kAnchor = "1";

    // Validates g >= 1, nonempty distinct labels, anchor present.
    static MarkedSpace make(int genus, std::vector<std::string> markings);

    int dimension() const { return 3 * genus - 3 + static_cast<int>(markings.size()); }
    int marking_count() const { return static_cast<int>(markings.size()); }
    // Index of a label, or -1.
    int marking_index(const std::string& label) const;

    bool operator==(const MarkedSpace&) const = default;
};

/*
 * A stable bipartition (h, S): 0 <= h <= g, S a subset of the markings with
 * the anchor inside, |S| >= 2 when h = 0 and |S^c| >= 2 when h = g. The
 * default comparison gives the documented total enumeration order,
 * lexicographic in (h, S).
 */
struct Bipartition {
    int h = 0;
    std::vector<std::string> side;  // sorted labels, contains the anchor

    auto operator<=>(const Bipartition&) const = default;

    bool contains(const std::string& label) const;
    std::string str() const;
};

bool bipartition_valid(const MarkedSpace& space, const Bipartition& b);

// All stable bipartitions in enumeration order.
std::vector<Bipartition> stable_bipartitions(const MarkedSpace& space);

// The partial order: a <= b iff a.h <= b.h and a.S is a subset of b.S.
bool bipartition_leq(const Bipartition& a, const Bipartition& b);

using Chain = std::vector<Bipartition>;  // strictly increasing

// All strictly increasing chains of the given length; length 0 yields the
// empty chain alone.
std::vector<Chain> enumerate_chains(const MarkedSpace& space, int length);

// Ordered sequences of `parts` positive integers summing to `total`.
std::vector<std::vector<int>> compositions(int total, int parts);

}  // namespace tautchern
