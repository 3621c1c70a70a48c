#include "brd/pq.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace brd {

namespace {

int64_t checked_int64(__int128 v, const char* what)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(ErrorKind::InvalidInput, std::string("rational overflow in ") + what);
    return static_cast<int64_t>(v);
}

} // namespace

Rational::Rational(int64_t n, int64_t d)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidInput, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0)
        g = 1;
    num = n / g;
    den = d / g;
}

bool operator<(const Rational& a, const Rational& b)
{
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational operator+(const Rational& a, const Rational& b)
{
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return Rational(checked_int64(n, "+"), checked_int64(d, "+"));
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + Rational(-b.num, b.den);
}

Rational operator*(const Rational& a, const Rational& b)
{
    // cross-reduce before multiplying to keep intermediates small
    int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    if (g1 == 0)
        g1 = 1;
    if (g2 == 0)
        g2 = 1;
    __int128 n = static_cast<__int128>(a.num / g1) * (b.num / g2);
    __int128 d = static_cast<__int128>(a.den / g2) * (b.den / g1);
    return Rational(checked_int64(n, "*"), checked_int64(d, "*"));
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num == 0)
        throw Error(ErrorKind::InvalidInput, "division by zero rational");
    return a * Rational(b.den, b.num);
}

std::string to_string(const Rational& q)
{
    if (q.den == 1)
        return std::to_string(q.num);
    return std::to_string(q.num) + "/" + std::to_string(q.den);
}

Rational parse_rational(const std::string& text)
{
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational::integer(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    catch (const std::logic_error&) {
        throw Error(ErrorKind::Syntax, "bad rational '" + text + "'");
    }
}

namespace {

// j-th positive rational in the Calkin-Wilf order (j >= 1): the bits of j
// after the leading one, read from the top, walk the Calkin-Wilf tree.
Rational calkin_wilf(uint64_t j)
{
    int top = 63;
    while (top > 0 && !(j >> top))
        --top;
    int64_t p = 1, q = 1;
    for (int bit = top - 1; bit >= 0; --bit) {
        if ((j >> bit) & 1)
            p += q; // right child (p+q)/q
        else
            q += p; // left child p/(p+q)
    }
    return Rational(p, q);
}

uint64_t calkin_wilf_index(const Rational& r)
{
    int64_t p = r.num, q = r.den;
    std::vector<bool> bits; // from the node up to the root
    while (!(p == 1 && q == 1)) {
        if (p > q) {
            int64_t k = p / q;
            int64_t rem = p % q;
            if (rem == 0) {
                k -= 1;
                rem = q;
            }
            bits.insert(bits.end(), static_cast<size_t>(k), true);
            p = rem;
        }
        else {
            int64_t k = q / p;
            int64_t rem = q % p;
            if (rem == 0) {
                k -= 1;
                rem = p;
            }
            bits.insert(bits.end(), static_cast<size_t>(k), false);
            q = rem;
        }
        if (bits.size() > 62)
            throw Error(ErrorKind::InvalidInput, "rational too deep for a 64-bit index");
    }
    uint64_t j = 1;
    for (auto it = bits.rbegin(); it != bits.rend(); ++it)
        j = (j << 1) | (*it ? 1u : 0u);
    return j;
}

} // namespace

Rational xi(uint64_t k)
{
    if (k == 0)
        return Rational::integer(0);
    uint64_t j = (k + 1) / 2;
    Rational r = calkin_wilf(j);
    return k % 2 == 1 ? r : Rational(-r.num, r.den);
}

uint64_t xi_inv(const Rational& q)
{
    if (q.num == 0)
        return 0;
    if (q.num > 0)
        return 2 * calkin_wilf_index(q) - 1;
    return 2 * calkin_wilf_index(Rational(-q.num, q.den));
}

void validate(const PartialMapQ& f)
{
    for (const auto& [i, v] : f.entries) {
        (void)v;
        if (i >= f.domain_size)
            throw Error(ErrorKind::InvalidInput,
                "entry " + std::to_string(i) + " outside domain of size "
                    + std::to_string(f.domain_size));
    }
}

std::string to_string(const NType& t)
{
    std::string out = "(";
    for (size_t j = 0; j < t.parts.size(); ++j) {
        if (j)
            out += ' ';
        out += '{';
        for (size_t i = 0; i < t.parts[j].size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(t.parts[j][i]);
        }
        out += '}';
    }
    out += ')';
    return out;
}

NType tp_pq(const PartialMapQ& f)
{
    validate(f);
    auto rational_less = [](const Rational& a, const Rational& b) { return a < b; };
    std::map<Rational, std::vector<uint32_t>, decltype(rational_less)> groups(rational_less);
    for (const auto& [i, v] : f.entries)
        groups[v].push_back(i);
    NType t;
    for (auto& [v, part] : groups) {
        (void)v;
        std::sort(part.begin(), part.end());
        t.parts.push_back(std::move(part));
    }
    return t;
}

EmbeddingGerm EmbeddingGerm::from_graph(std::vector<std::pair<Rational, Rational>> points,
    bool auto_extend)
{
    std::sort(points.begin(), points.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    EmbeddingGerm g{std::move(points), auto_extend};
    g.validate();
    return g;
}

void EmbeddingGerm::validate() const
{
    for (size_t i = 1; i < graph.size(); ++i) {
        if (!(graph[i - 1].first < graph[i].first))
            throw Error(ErrorKind::InvalidInput, "germ arguments must strictly increase");
        if (!(graph[i - 1].second < graph[i].second))
            throw Error(ErrorKind::InvalidInput, "germ is not strictly increasing");
    }
}

Rational EmbeddingGerm::apply(const Rational& q) const
{
    auto it = std::lower_bound(graph.begin(), graph.end(), q,
        [](const auto& p, const Rational& x) { return p.first < x; });
    if (it != graph.end() && it->first == q)
        return it->second;
    if (!auto_extend)
        throw Error(ErrorKind::GermGap, "germ has no value at " + to_string(q));
    if (graph.empty())
        return q;
    if (it == graph.begin())
        return it->second - (it->first - q);
    if (it == graph.end()) {
        const auto& last = graph.back();
        return last.second + (q - last.first);
    }
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    return lo.second + (hi.second - lo.second) * ((q - lo.first) / (hi.first - lo.first));
}

EmbeddingGerm EmbeddingGerm::extended_with(const std::vector<Rational>& arguments) const
{
    std::vector<std::pair<Rational, Rational>> points = graph;
    for (const auto& q : arguments) {
        bool known = std::any_of(points.begin(), points.end(),
            [&](const auto& p) { return p.first == q; });
        if (!known)
            points.emplace_back(q, apply(q));
    }
    return from_graph(std::move(points), auto_extend);
}

PartialMapQ compose_pq(const EmbeddingGerm& h, const PartialMapQ& f)
{
    validate(f);
    PartialMapQ out{f.domain_size, {}};
    for (const auto& [i, v] : f.entries)
        out.entries.emplace(i, h.apply(v));
    return out;
}

PartialMapQ oplus(const std::vector<PartialMapQ>& fs)
{
    PartialMapQ out{0, {}};
    uint64_t offset = 0;
    for (const auto& f : fs) {
        validate(f);
        for (const auto& [i, v] : f.entries)
            out.entries.emplace(static_cast<uint32_t>(offset + i), v);
        offset += f.domain_size;
    }
    if (offset > 0xffffffffULL)
        throw Error(ErrorKind::SizeMismatch, "concatenated domain too large");
    out.domain_size = static_cast<uint32_t>(offset);
    return out;
}

std::vector<PartialMapQ> split(const PartialMapQ& f, const std::vector<uint32_t>& sizes)
{
    validate(f);
    uint64_t total = 0;
    for (uint32_t s : sizes)
        total += s;
    if (total != f.domain_size)
        throw Error(ErrorKind::SizeMismatch,
            "sizes sum to " + std::to_string(total) + ", domain is "
                + std::to_string(f.domain_size));
    std::vector<PartialMapQ> out;
    uint32_t offset = 0;
    for (uint32_t s : sizes) {
        PartialMapQ part{s, {}};
        auto lo = f.entries.lower_bound(offset);
        auto hi = f.entries.lower_bound(offset + s);
        for (auto it = lo; it != hi; ++it)
            part.entries.emplace(it->first - offset, it->second);
        out.push_back(std::move(part));
        offset += s;
    }
    return out;
}

PartialMapQ pad(const PartialMapQ& p, size_t j, const std::vector<uint32_t>& sizes)
{
    if (j >= sizes.size())
        throw Error(ErrorKind::SizeMismatch, "slot index out of range");
    if (p.domain_size != sizes[j])
        throw Error(ErrorKind::SizeMismatch,
            "map has domain " + std::to_string(p.domain_size) + " but slot "
                + std::to_string(j) + " has size " + std::to_string(sizes[j]));
    std::vector<PartialMapQ> parts;
    for (size_t i = 0; i < sizes.size(); ++i)
        parts.push_back(i == j ? p : PartialMapQ::empty(sizes[i]));
    return oplus(parts);
}

PartialMapQ unpad(const PartialMapQ& f, size_t j, const std::vector<uint32_t>& sizes)
{
    if (j >= sizes.size())
        throw Error(ErrorKind::SizeMismatch, "slot index out of range");
    return split(f, sizes)[j];
}

uint32_t TypeBlockLayout::total() const
{
    uint32_t t = 0;
    for (uint32_t c : child_counts)
        t += c;
    return t;
}

TypeBlockLayout type_block_layout(const EmbType& tau)
{
    TypeBlockLayout layout;
    for (uint32_t v = 0; v < tau.nodes.size(); ++v) {
        if (tau.nodes[v].label == VertexLabel::Omega || tau.nodes[v].label == VertexLabel::OmegaStar) {
            layout.vertices.push_back(v);
            layout.child_counts.push_back(static_cast<uint32_t>(tau.children_of(v).size()));
        }
    }
    return layout;
}

PartialMapQ psi_encode(const ChainTerm& sigma, const EmbType& tau, const SigmaEmbedding& f)
{
    if (!(f.sigma == sigma))
        throw Error(ErrorKind::TypeMismatch, "embedding belongs to a different term");
    if (!(tp(f) == tau))
        throw Error(ErrorKind::TypeMismatch, "embedding is not of the given type");
    TypeBlockLayout layout = type_block_layout(tau);
    if (layout.vertices.empty())
        throw Error(ErrorKind::NoInfiniteVertex,
            "type has no infinite-sum vertex; the constant-map convention applies instead");
    LabelledTree tree = induced_subtree(f);
    PartialMapQ out{layout.total(), {}};
    uint32_t offset = 0;
    for (size_t i = 0; i < layout.vertices.size(); ++i) {
        std::vector<uint32_t> labels;
        for (uint32_t c : tree.children_of(layout.vertices[i]))
            labels.push_back(tree.nodes[c].edge->index);
        std::sort(labels.begin(), labels.end());
        for (size_t r = 0; r < labels.size(); ++r)
            out.entries.emplace(offset + static_cast<uint32_t>(r), xi(labels[r]));
        offset += layout.child_counts[i];
    }
    return out;
}

SigmaEmbedding phi_decode(const ChainTerm& sigma, const EmbType& tau, const PartialMapQ& p)
{
    validate(p);
    TypeBlockLayout layout = type_block_layout(tau);

    if (layout.vertices.empty()) {
        // singleton-domain convention: any nonempty map encodes the unique
        // embedding of this type
        if (p.domain_size != 1 || p.entries.empty())
            throw Error(ErrorKind::NotInM,
                "types without infinite-sum vertices are coded by nonempty maps on a singleton");
        std::vector<BranchString> branches;
        std::vector<LambdaSymbol> path;
        auto rec = [&](auto&& self, uint32_t v) -> void {
            auto kids = tau.children_of(v);
            if (kids.empty()) {
                branches.emplace_back(path);
                return;
            }
            for (uint32_t c : kids) {
                path.push_back(LambdaSymbol::iota(*tau.nodes[c].iota));
                self(self, c);
                path.pop_back();
            }
        };
        rec(rec, 0);
        return make_sigma_embedding(sigma, std::move(branches));
    }

    if (p.domain_size != layout.total() || !p.is_total())
        throw Error(ErrorKind::NotInM,
            "code must be a total map on a domain of size " + std::to_string(layout.total()));

    // per infinite vertex: the strictly increasing label list of its block
    std::vector<std::vector<uint32_t>> block_labels(tau.nodes.size());
    uint32_t offset = 0;
    for (size_t i = 0; i < layout.vertices.size(); ++i) {
        std::vector<uint32_t> labels;
        for (uint32_t r = 0; r < layout.child_counts[i]; ++r) {
            uint64_t k = xi_inv(p.entries.at(offset + r));
            if (k > 0xffffffffULL)
                throw Error(ErrorKind::NotInM, "decoded label does not fit an edge index");
            if (!labels.empty() && labels.back() >= k)
                throw Error(ErrorKind::NotInM,
                    "block " + std::to_string(i) + " is not strictly increasing");
            labels.push_back(static_cast<uint32_t>(k));
        }
        block_labels[layout.vertices[i]] = std::move(labels);
        offset += layout.child_counts[i];
    }

    std::vector<BranchString> branches;
    std::vector<LambdaSymbol> path;
    auto rec = [&](auto&& self, uint32_t v) -> void {
        auto kids = tau.children_of(v);
        if (kids.empty()) {
            branches.emplace_back(path);
            return;
        }
        const bool infinite = tau.nodes[v].label == VertexLabel::Omega
            || tau.nodes[v].label == VertexLabel::OmegaStar;
        const bool star = tau.nodes[v].label == VertexLabel::OmegaStar;
        for (size_t ci = 0; ci < kids.size(); ++ci) {
            uint32_t c = kids[ci];
            if (tau.nodes[c].iota) {
                path.push_back(LambdaSymbol::iota(*tau.nodes[c].iota));
            }
            else if (infinite) {
                // sibling order carries ascending labels under w and
                // descending labels under w*
                const auto& labels = block_labels[v];
                uint32_t k = star ? labels[labels.size() - 1 - ci] : labels[ci];
                path.push_back(star ? LambdaSymbol::omega_star(k) : LambdaSymbol::omega(k));
            }
            else {
                throw Error(ErrorKind::NotInM, "erased edge below a finite-sum vertex");
            }
            self(self, c);
            path.pop_back();
        }
    };
    rec(rec, 0);
    return make_sigma_embedding(sigma, std::move(branches));
}

std::string partial_map_to_json(const PartialMapQ& f)
{
    nlohmann::json j;
    j["n"] = f.domain_size;
    j["entries"] = nlohmann::json::object();
    for (const auto& [i, v] : f.entries)
        j["entries"][std::to_string(i)] = to_string(v);
    return j.dump();
}

PartialMapQ partial_map_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("n"))
        throw Error(ErrorKind::Syntax, "bad partial map JSON");
    PartialMapQ f{j["n"].get<uint32_t>(), {}};
    if (j.contains("entries"))
        for (const auto& [key, value] : j["entries"].items())
            f.entries.emplace(static_cast<uint32_t>(std::stoul(key)),
                parse_rational(value.get<std::string>()));
    validate(f);
    return f;
}

} // namespace brd
