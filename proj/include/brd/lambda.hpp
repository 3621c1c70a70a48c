#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "brd/error.hpp"

namespace brd {

enum class Ordering { LT, EQ, GT };

// One letter of the branch alphabet: iota_n, (w i) or (w* i).
//
// The total order puts all iota letters first (ascending by index), then the
// omega letters ascending by index, then the omega-star letters in reverse:
//   i0 < i1 < ... < (w0) < (w1) < ... < ... < (w*2) < (w*1) < (w*0).
struct LambdaSymbol {
    enum class Kind : uint8_t { Iota, OmegaEdge, OmegaStarEdge };

    Kind kind;
    uint32_t index;

    static LambdaSymbol iota(uint32_t n) { return {Kind::Iota, n}; }
    static LambdaSymbol omega(uint32_t i) { return {Kind::OmegaEdge, i}; }
    static LambdaSymbol omega_star(uint32_t i) { return {Kind::OmegaStarEdge, i}; }

    bool operator==(const LambdaSymbol&) const = default;
};

Ordering lambda_compare(const LambdaSymbol& a, const LambdaSymbol& b);

std::string to_string(const LambdaSymbol& s);

// A root-to-leaf path of a tree in S, written as a word over the branch
// alphabet. The "+" vertex labels and the mandatory leaf label 1 are not
// recorded (they are recoverable from the term).
struct BranchString {
    std::vector<LambdaSymbol> letters;

    BranchString() = default;
    explicit BranchString(std::vector<LambdaSymbol> ls) : letters(std::move(ls)) {}

    bool operator==(const BranchString&) const = default;
    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
};

// Lexicographic extension of the letter order. Distinct maximal branches of a
// common tree are never prefixes of one another; a strict prefix pair is
// reported as PrefixViolation.
Ordering branch_compare(const BranchString& x, const BranchString& y);

// Strict-weak-order wrapper usable with std::sort / std::set. Treats a strict
// prefix as smaller instead of throwing, so it is safe on arbitrary words.
bool branch_less(const BranchString& x, const BranchString& y);

// Text form: dot-separated letters, e.g. "i0.(w3).(w*1)"; the empty branch
// prints as "".
std::string to_string(const BranchString& b);
BranchString parse_branch_string(const std::string& text);

} // namespace brd
