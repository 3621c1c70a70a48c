#include "brd/branch_calculus.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <span>

namespace brd {

IndexSet IndexSet::arithmetic(uint32_t start, uint32_t step)
{
    if (step == 0)
        throw Error(ErrorKind::InvalidInput, "index set step must be positive");
    IndexSet v;
    v.generator = Arithmetic{start, step};
    return v;
}

IndexSet IndexSet::from_list(std::vector<uint32_t> values)
{
    IndexSet v;
    v.prefix = std::move(values);
    v.validate();
    return v;
}

uint32_t IndexSet::at(size_t i) const
{
    if (generator)
        return generator->start + generator->step * static_cast<uint32_t>(i);
    if (i < prefix.size())
        return prefix[i];
    throw Error(ErrorKind::InvalidInput,
        "index set prefix exhausted at position " + std::to_string(i) + " and no generator given");
}

void IndexSet::validate() const
{
    if (prefix.empty() && !generator)
        throw Error(ErrorKind::InvalidInput, "index set must have a prefix or a generator");
    for (size_t i = 1; i < prefix.size(); ++i)
        if (prefix[i - 1] >= prefix[i])
            throw Error(ErrorKind::InvalidInput, "index set prefix must strictly increase");
}

const char* vertex_label_name(VertexLabel v)
{
    switch (v) {
    case VertexLabel::One: return "1";
    case VertexLabel::Plus: return "+";
    case VertexLabel::Omega: return "w";
    case VertexLabel::OmegaStar: return "w*";
    }
    return "?";
}

namespace {

// Position inside the tree presented by a term. A multi-element block of an
// infinite sum sits below a '+' vertex that the term does not spell out;
// block_plus marks that virtual vertex.
struct WalkPos {
    const ChainTerm* node;
    bool block_plus = false;

    VertexLabel label() const
    {
        if (block_plus)
            return VertexLabel::Plus;
        switch (node->kind()) {
        case TermKind::Leaf1: return VertexLabel::One;
        case TermKind::Plus: return VertexLabel::Plus;
        case TermKind::OmegaSum: return VertexLabel::Omega;
        case TermKind::OmegaStarSum: return VertexLabel::OmegaStar;
        case TermKind::Leaf0:
            throw Error(ErrorKind::InvalidBranch, "branch passes through an empty leaf");
        case TermKind::AtomQ:
            throw Error(ErrorKind::NotScattered, "branches are only defined for scattered terms");
        }
        throw Error(ErrorKind::InvalidTerm, "unreachable term kind");
    }

    WalkPos step(const LambdaSymbol& s) const
    {
        if (block_plus || node->kind() == TermKind::Plus) {
            const auto& cs = node->children();
            if (s.kind != LambdaSymbol::Kind::Iota)
                throw Error(ErrorKind::InvalidBranch, "expected an iota letter below a finite sum");
            if (s.index >= cs.size())
                throw Error(ErrorKind::InvalidBranch,
                    "iota index " + std::to_string(s.index) + " out of range");
            return WalkPos{&cs[s.index], false};
        }
        switch (node->kind()) {
        case TermKind::OmegaSum:
            if (s.kind != LambdaSymbol::Kind::OmegaEdge)
                throw Error(ErrorKind::InvalidBranch, "expected an omega letter below an omega sum");
            break;
        case TermKind::OmegaStarSum:
            if (s.kind != LambdaSymbol::Kind::OmegaStarEdge)
                throw Error(ErrorKind::InvalidBranch, "expected an omega* letter below an omega* sum");
            break;
        case TermKind::Leaf1:
        case TermKind::Leaf0:
            throw Error(ErrorKind::InvalidBranch, "branch continues past a leaf");
        case TermKind::AtomQ:
            throw Error(ErrorKind::NotScattered, "branches are only defined for scattered terms");
        default:
            throw Error(ErrorKind::InvalidTerm, "unreachable term kind");
        }
        if (node->children().size() == 1)
            return WalkPos{&node->children()[0], false};
        return WalkPos{node, true};
    }
};

} // namespace

void validate_branch(const ChainTerm& term, const BranchString& b)
{
    WalkPos pos{&term, false};
    for (const auto& s : b.letters)
        pos = pos.step(s);
    if (pos.label() != VertexLabel::One)
        throw Error(ErrorKind::InvalidBranch, "branch '" + to_string(b) + "' does not end at a leaf");
}

SigmaEmbedding make_sigma_embedding(const ChainTerm& sigma, std::vector<BranchString> branches)
{
    sigma.validate();
    for (const auto& b : branches)
        validate_branch(sigma, b);
    std::sort(branches.begin(), branches.end(), branch_less);
    for (size_t i = 1; i < branches.size(); ++i)
        if (branches[i - 1] == branches[i])
            throw Error(ErrorKind::InvalidBranch, "duplicate branch '" + to_string(branches[i]) + "'");
    return SigmaEmbedding{sigma, std::move(branches)};
}

std::vector<uint32_t> LabelledTree::children_of(uint32_t v) const
{
    std::vector<uint32_t> out;
    for (uint32_t i = 1; i < nodes.size(); ++i)
        if (nodes[i].parent == v)
            out.push_back(i);
    return out;
}

std::vector<uint32_t> EmbType::children_of(uint32_t v) const
{
    std::vector<uint32_t> out;
    for (uint32_t i = 1; i < nodes.size(); ++i)
        if (nodes[i].parent == v)
            out.push_back(i);
    return out;
}

namespace {

struct RawNode {
    VertexLabel label;
    std::optional<LambdaSymbol> edge;
    std::vector<uint32_t> children;
};

// Builds the prefix tree of the given sorted, distinct branches, walking the
// term alongside to recover vertex labels.
uint32_t build_raw(std::vector<RawNode>& raw, std::span<const BranchString> branches, size_t lo,
    size_t hi, size_t depth, const WalkPos& pos, std::optional<LambdaSymbol> edge)
{
    uint32_t self = static_cast<uint32_t>(raw.size());
    raw.push_back(RawNode{pos.label(), edge, {}});

    // a branch ending at this depth equals the shared prefix of the range, so
    // it sorts first; it may not coexist with proper extensions
    if (branches[lo].size() == depth) {
        if (hi - lo > 1)
            throw Error(ErrorKind::PrefixViolation,
                "branch '" + to_string(branches[lo]) + "' is a prefix of another branch");
        return self;
    }
    size_t i = lo;
    while (i < hi) {
        const LambdaSymbol head = branches[i].letters[depth];
        size_t j = i;
        while (j < hi && branches[j].letters[depth] == head)
            ++j;
        uint32_t child = build_raw(raw, branches, i, j, depth + 1, pos.step(head), head);
        raw[self].children.push_back(child);
        i = j;
    }
    return self;
}

LabelledTree bfs_tree(const std::vector<RawNode>& raw)
{
    LabelledTree tree;
    tree.nodes.reserve(raw.size());
    std::vector<uint32_t> order; // raw indices in BFS order
    std::vector<uint32_t> renumber(raw.size(), 0);
    order.push_back(0);
    for (size_t head = 0; head < order.size(); ++head) {
        uint32_t r = order[head];
        renumber[r] = static_cast<uint32_t>(head);
        for (uint32_t c : raw[r].children)
            order.push_back(c);
    }
    for (size_t head = 0; head < order.size(); ++head) {
        const RawNode& r = raw[order[head]];
        tree.nodes.push_back(LabelledTree::Node{0, r.label, r.edge});
    }
    for (size_t head = 0; head < order.size(); ++head)
        for (uint32_t c : raw[order[head]].children)
            tree.nodes[renumber[c]].parent = static_cast<uint32_t>(head);
    return tree;
}

LabelledTree induced_tree_impl(const ChainTerm& sigma, std::span<const BranchString> branches)
{
    if (branches.empty())
        throw Error(ErrorKind::InvalidInput, "an embedding needs at least one branch");
    std::vector<RawNode> raw;
    raw.reserve(branches.size() * 4);
    build_raw(raw, branches, 0, branches.size(), 0, WalkPos{&sigma, false}, std::nullopt);
    return bfs_tree(raw);
}

std::string build_type_key(const std::vector<EmbType::Node>& nodes)
{
    // children lists in BFS order
    std::vector<std::vector<uint32_t>> kids(nodes.size());
    for (uint32_t i = 1; i < nodes.size(); ++i)
        kids[nodes[i].parent].push_back(i);
    std::string out;
    auto rec = [&](auto&& self, uint32_t v) -> void {
        if (kids[v].empty()) {
            out += vertex_label_name(nodes[v].label);
            return;
        }
        out += '(';
        out += vertex_label_name(nodes[v].label);
        for (uint32_t c : kids[v]) {
            out += ' ';
            if (nodes[c].iota)
                out += 'i' + std::to_string(*nodes[c].iota);
            else
                out += '_';
            out += ':';
            self(self, c);
        }
        out += ')';
    };
    rec(rec, 0);
    return out;
}

EmbType type_impl(const LabelledTree& tree)
{
    EmbType t;
    t.nodes.reserve(tree.nodes.size());
    for (const auto& n : tree.nodes) {
        std::optional<uint32_t> iota;
        if (n.edge && n.edge->kind == LambdaSymbol::Kind::Iota)
            iota = n.edge->index;
        t.nodes.push_back(EmbType::Node{n.parent, n.label, iota});
    }
    t.key = build_type_key(t.nodes);
    return t;
}

EmbType tp_impl(const ChainTerm& sigma, std::span<const BranchString> branches)
{
    return type_impl(induced_tree_impl(sigma, branches));
}

} // namespace

RestrictedTree restrict_tree(const ChainTerm& term, const IndexSet& v)
{
    term.validate();
    if (term.contains_atom_q())
        throw Error(ErrorKind::NotScattered, "restriction is only defined for scattered terms");
    v.validate();
    return RestrictedTree{term, v};
}

BranchString g_hat(const IndexSet& v, const BranchString& b)
{
    v.validate();
    BranchString out;
    out.letters.reserve(b.letters.size());
    for (const auto& s : b.letters) {
        switch (s.kind) {
        case LambdaSymbol::Kind::Iota:
            out.letters.push_back(s);
            break;
        case LambdaSymbol::Kind::OmegaEdge:
            out.letters.push_back(LambdaSymbol::omega(v.at(s.index)));
            break;
        case LambdaSymbol::Kind::OmegaStarEdge:
            out.letters.push_back(LambdaSymbol::omega_star(v.at(s.index)));
            break;
        }
    }
    return out;
}

LabelledTree induced_subtree(const SigmaEmbedding& f)
{
    return induced_tree_impl(f.sigma, f.branches);
}

EmbType tp(const SigmaEmbedding& f)
{
    return tp_impl(f.sigma, f.branches);
}

EmbType type_of_labelled_tree(const LabelledTree& tree)
{
    return type_impl(tree);
}

std::string type_to_sexp(const EmbType& t)
{
    return t.key;
}

namespace {

struct SexpParser {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::Syntax, what + " at position " + std::to_string(pos) + " in type");
    }

    VertexLabel label()
    {
        if (text.compare(pos, 2, "w*") == 0) {
            pos += 2;
            return VertexLabel::OmegaStar;
        }
        if (text.compare(pos, 1, "w") == 0) {
            ++pos;
            return VertexLabel::Omega;
        }
        if (text.compare(pos, 1, "+") == 0) {
            ++pos;
            return VertexLabel::Plus;
        }
        if (text.compare(pos, 1, "1") == 0) {
            ++pos;
            return VertexLabel::One;
        }
        fail("expected vertex label");
    }

    void node(std::vector<EmbType::Node>& nodes, uint32_t parent, std::optional<uint32_t> iota)
    {
        uint32_t self = static_cast<uint32_t>(nodes.size());
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            nodes.push_back(EmbType::Node{parent, label(), iota});
            std::vector<std::pair<std::optional<uint32_t>, size_t>> pending; // edge, sexp start
            while (pos < text.size() && text[pos] == ' ') {
                ++pos;
                std::optional<uint32_t> edge;
                if (text[pos] == 'i') {
                    ++pos;
                    uint64_t v = 0;
                    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                        fail("expected iota index");
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                        v = v * 10 + static_cast<uint64_t>(text[pos++] - '0');
                    edge = static_cast<uint32_t>(v);
                }
                else if (text[pos] == '_') {
                    ++pos;
                }
                else {
                    fail("expected edge label");
                }
                if (pos >= text.size() || text[pos] != ':')
                    fail("expected ':'");
                ++pos;
                node(nodes, self, edge);
            }
            if (pos >= text.size() || text[pos] != ')')
                fail("expected ')'");
            ++pos;
        }
        else {
            nodes.push_back(EmbType::Node{parent, label(), iota});
        }
    }
};

std::vector<EmbType::Node> bfs_renumber(const std::vector<EmbType::Node>& dfs_nodes)
{
    std::vector<std::vector<uint32_t>> kids(dfs_nodes.size());
    for (uint32_t i = 1; i < dfs_nodes.size(); ++i)
        kids[dfs_nodes[i].parent].push_back(i);
    std::vector<uint32_t> order{0};
    std::vector<uint32_t> renumber(dfs_nodes.size(), 0);
    for (size_t head = 0; head < order.size(); ++head) {
        renumber[order[head]] = static_cast<uint32_t>(head);
        for (uint32_t c : kids[order[head]])
            order.push_back(c);
    }
    std::vector<EmbType::Node> out;
    out.reserve(dfs_nodes.size());
    for (size_t head = 0; head < order.size(); ++head) {
        EmbType::Node n = dfs_nodes[order[head]];
        n.parent = head == 0 ? 0 : renumber[n.parent];
        out.push_back(n);
    }
    return out;
}

} // namespace

EmbType type_from_sexp(const std::string& text)
{
    SexpParser p{text};
    std::vector<EmbType::Node> dfs_nodes;
    p.node(dfs_nodes, 0, std::nullopt);
    if (p.pos != text.size())
        p.fail("trailing input");
    EmbType t;
    t.nodes = bfs_renumber(dfs_nodes);
    t.key = build_type_key(t.nodes);
    return t;
}

namespace {

uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i; // integral at every step
        if (result > cap)
            return cap + 1;
    }
    return static_cast<uint64_t>(result);
}

} // namespace

std::set<EmbType> enumerate_types(const ChainTerm& sigma, uint32_t n, uint32_t m,
    uint64_t subset_budget)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidInput, "type enumeration needs n >= 1");
    if (m < n)
        throw Error(ErrorKind::InvalidInput, "truncation depth must be at least n");
    const std::vector<BranchString> branches = truncate(sigma, m).branches;
    std::set<EmbType> types;
    if (branches.size() < n)
        return types;
    if (binomial_capped(branches.size(), n, subset_budget) > subset_budget)
        throw Error(ErrorKind::BudgetExceeded,
            "subset count for n=" + std::to_string(n) + ", m=" + std::to_string(m) + " exceeds budget");

    std::vector<BranchString> pick(n);
    auto rec = [&](auto&& self, size_t next, uint32_t chosen) -> void {
        if (chosen == n) {
            types.insert(tp_impl(sigma, pick));
            return;
        }
        size_t remaining_needed = n - chosen;
        for (size_t i = next; i + remaining_needed <= branches.size(); ++i) {
            pick[chosen] = branches[i];
            self(self, i + 1, chosen + 1);
        }
    };
    rec(rec, 0, 0);
    return types;
}

StabilizedTypes type_stabilization(const ChainTerm& sigma, uint32_t n, uint64_t subset_budget)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidInput, "type stabilization needs n >= 1");
    std::set<EmbType> current = enumerate_types(sigma, n, n, subset_budget);
    for (uint32_t m = n; m <= n + 2; ++m) {
        std::set<EmbType> next = enumerate_types(sigma, n, m + 1, subset_budget);
        if (next == current)
            return StabilizedTypes{std::move(current), m};
        current = std::move(next);
    }
    throw Error(ErrorKind::NoStabilization,
        "types did not stabilize by m = " + std::to_string(n + 2));
}

} // namespace brd
