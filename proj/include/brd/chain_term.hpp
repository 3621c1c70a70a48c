#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brd/lambda.hpp"

namespace brd {

enum class TermKind : uint8_t { Leaf0, Leaf1, Plus, OmegaSum, OmegaStarSum, AtomQ };

// A finitely presented tree denoting a countable chain.
//
//   Leaf0            the empty chain
//   Leaf1            the one-element chain
//   Plus(c0..cn)     the finite sum ||c0|| + ... + ||cn||
//   OmegaSum(B)      sum over k in w of (||B0|| + ... + ||Bn||), same block at
//                    every k (uniform presentation)
//   OmegaStarSum(B)  the reversed analogue
//   AtomQ            the chain of the rationals; allowed only at the root
//
// Text form: "0" | "1" | "Q" | "(+ t...)" | "(w t...)" | "(w* t...)".
class ChainTerm {
public:
    ChainTerm() : kind_(TermKind::Leaf1) {}

    static ChainTerm leaf0() { return ChainTerm(TermKind::Leaf0, {}); }
    static ChainTerm leaf1() { return ChainTerm(TermKind::Leaf1, {}); }
    static ChainTerm atom_q() { return ChainTerm(TermKind::AtomQ, {}); }
    static ChainTerm plus(std::vector<ChainTerm> children);
    static ChainTerm omega_sum(std::vector<ChainTerm> block);
    static ChainTerm omega_star_sum(std::vector<ChainTerm> block);

    TermKind kind() const { return kind_; }
    const std::vector<ChainTerm>& children() const { return children_; }

    bool is_leaf() const { return kind_ == TermKind::Leaf0 || kind_ == TermKind::Leaf1; }
    bool contains_atom_q() const;
    bool contains_leaf0() const;

    // AtomQ only at the root, all interior nodes nonempty.
    void validate() const;

    bool operator==(const ChainTerm&) const = default;

private:
    ChainTerm(TermKind k, std::vector<ChainTerm> cs) : kind_(k), children_(std::move(cs)) {}

    TermKind kind_;
    std::vector<ChainTerm> children_;
};

ChainTerm parse_chain_term(const std::string& text);
std::string to_string(const ChainTerm& term);

// Removes every Leaf0 from the term, collapsing sums that become trivial.
// Fails with EmptyChain when the whole term denotes the empty chain. Also
// hoists a singleton Plus block of an infinite sum, so that "(w (+ a b))" and
// "(w a b)" normalize identically (they present the same tree).
ChainTerm normalize_drop_zero(const ChainTerm& term);

// r(leaf) = 0, r(Plus) = max over children, r(infinite sum) = 1 + max over
// the block. Exact on normalized uniform terms, an upper bound otherwise.
uint32_t hausdorff_rank(const ChainTerm& term);

// The finite approximation of a chain term: its branches restricted to the
// first m indices of every infinite sum, in lexicographic order.
struct FiniteChainApprox {
    std::vector<BranchString> branches;
};

// Every OmegaSum restricted to indices {0..m-1}; every OmegaStarSum keeps its
// last m indices, which under the reversed labelling are also {0..m-1}.
FiniteChainApprox truncate(const ChainTerm& term, uint32_t m);

struct SpectrumInfo {
    bool finite;                  // always true for representable terms
    bool scattered;               // false exactly for AtomQ
    std::optional<uint32_t> rank; // present when scattered
};

// Decides finiteness of the big Ramsey spectrum of the denoted chain: true
// for the non-scattered atom and for every scattered term (such terms always
// have finite rank). Reports the rank alongside.
SpectrumInfo term_spectrum_finite(const ChainTerm& term);

// An ordinal below w^w in Cantor normal form (strictly decreasing finite
// exponents, positive coefficients), or the distinguished value w^w itself.
// Text form: "w^3*2 + w^1*1 + 5", "w^w" for the flag; "w" abbreviates w^1*1,
// a bare number is the exponent-0 term.
struct CnfOrdinal {
    bool omega_omega = false;
    std::vector<std::pair<uint32_t, uint64_t>> terms; // (exponent, coefficient)

    bool operator==(const CnfOrdinal&) const = default;
};

CnfOrdinal parse_cnf_ordinal(const std::string& text);
std::string to_string(const CnfOrdinal& alpha);

// True exactly when alpha < w^w, i.e. the flag is absent.
bool cnf_spectrum_finite(const CnfOrdinal& alpha);

} // namespace brd
