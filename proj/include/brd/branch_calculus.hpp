#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "brd/chain_term.hpp"

namespace brd {

// An infinite subset of the naturals, carried as a strictly increasing finite
// prefix plus an optional arithmetic generator so that any index actually
// materialized by a truncation can be resolved.
struct IndexSet {
    std::vector<uint32_t> prefix;
    struct Arithmetic {
        uint32_t start;
        uint32_t step;
    };
    std::optional<Arithmetic> generator;

    static IndexSet arithmetic(uint32_t start, uint32_t step);
    static IndexSet evens() { return arithmetic(0, 2); }
    static IndexSet odds() { return arithmetic(1, 2); }
    static IndexSet from_list(std::vector<uint32_t> values);

    // i-th element; extends via the generator when the prefix runs out.
    uint32_t at(size_t i) const;

    void validate() const;
};

// An embedding of the finite chain n into the branches of sigma, stored as
// the n branches in lexicographic order.
struct SigmaEmbedding {
    ChainTerm sigma;
    std::vector<BranchString> branches;
};

// Checks that b traverses term root-to-leaf; throws InvalidBranch otherwise.
void validate_branch(const ChainTerm& term, const BranchString& b);

SigmaEmbedding make_sigma_embedding(const ChainTerm& sigma, std::vector<BranchString> branches);

enum class VertexLabel : uint8_t { One, Plus, Omega, OmegaStar };

const char* vertex_label_name(VertexLabel v);

// The subtree of sigma induced by a set of branches, BFS-numbered, with
// vertex labels and concrete edge labels intact.
struct LabelledTree {
    struct Node {
        uint32_t parent;                  // root points to itself
        VertexLabel label;
        std::optional<LambdaSymbol> edge; // label of the edge from the parent
    };
    std::vector<Node> nodes; // BFS order; children of a node appear in sibling order

    std::vector<uint32_t> children_of(uint32_t v) const;
};

// The type of an embedding: the induced subtree with vertices renumbered
// 0..p-1 in BFS order and the numeric labels of edges leaving infinite-sum
// vertices erased (iota labels are kept). Two embeddings have equal types
// exactly when these structures are identical.
struct EmbType {
    struct Node {
        uint32_t parent;
        VertexLabel label;
        std::optional<uint32_t> iota; // kept edge label; nullopt = erased
    };
    std::vector<Node> nodes;
    std::string key; // canonical s-expression, used for ordering and caching

    std::vector<uint32_t> children_of(uint32_t v) const;

    bool operator==(const EmbType& o) const { return key == o.key; }
    bool operator<(const EmbType& o) const { return key < o.key; }
};

// Canonical s-expression of a type, e.g. "(w (_ 1) (_ 1))" for two branches
// of the plain omega tree, "(+ (i0 1) (i1 1))" for a two-leaf finite sum.
std::string type_to_sexp(const EmbType& t);
EmbType type_from_sexp(const std::string& text);

struct RestrictedTree {
    ChainTerm term;  // structurally identical to the input under uniformity
    IndexSet table;  // index translation k -> v_k
};

// Restriction of a uniform term to the index set V: the tree is unchanged up
// to re-indexing, so the value of the operation is the translation table.
RestrictedTree restrict_tree(const ChainTerm& term, const IndexSet& v);

// The letterwise re-indexing embedding: iota letters fixed, (w i) -> (w v_i),
// (w* i) -> (w* v_i).
BranchString g_hat(const IndexSet& v, const BranchString& b);

LabelledTree induced_subtree(const SigmaEmbedding& f);

EmbType tp(const SigmaEmbedding& f);
EmbType type_of_labelled_tree(const LabelledTree& tree);

inline constexpr uint64_t kDefaultSubsetBudget = 20'000'000;

// All types realized by n-element subsets of the branches of truncate(sigma, m).
std::set<EmbType> enumerate_types(const ChainTerm& sigma, uint32_t n, uint32_t m,
    uint64_t subset_budget = kDefaultSubsetBudget);

struct StabilizedTypes {
    std::set<EmbType> types;
    uint32_t m_star;
};

// Smallest m* <= n+2 with enumerate_types(sigma,n,m*) == enumerate_types(sigma,n,m*+1).
StabilizedTypes type_stabilization(const ChainTerm& sigma, uint32_t n,
    uint64_t subset_budget = kDefaultSubsetBudget);

} // namespace brd
