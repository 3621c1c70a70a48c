#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brd/branch_calculus.hpp"

namespace brd {

// Exact rational with reduced numerator/denominator. Comparisons never go
// through floating point.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d);
    static Rational integer(int64_t n) { return Rational(n, 1); }

    bool operator==(const Rational&) const = default;
};

bool operator<(const Rational& a, const Rational& b);
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text); // "1/2", "-3"

// The fixed bijection between the naturals and the rationals: 0 first, then
// the Calkin-Wilf enumeration of the positive rationals interleaved with its
// negation: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, ...
Rational xi(uint64_t k);
uint64_t xi_inv(const Rational& q);

// A morphism n -> Q of the partial-map category: a partial function from
// {0..n-1} into the rationals.
struct PartialMapQ {
    uint32_t domain_size = 0;
    std::map<uint32_t, Rational> entries;

    static PartialMapQ empty(uint32_t n) { return PartialMapQ{n, {}}; }

    bool defined(uint32_t i) const { return entries.count(i) > 0; }
    bool is_total() const { return entries.size() == domain_size; }

    bool operator==(const PartialMapQ&) const = default;
};

void validate(const PartialMapQ& f);

// The ordered-partition type of a partial map: parts group positions with
// equal values, listed by increasing common value. The empty map has the
// empty type.
struct NType {
    std::vector<std::vector<uint32_t>> parts;

    size_t length() const { return parts.size(); }
    bool operator==(const NType&) const = default;
};

std::string to_string(const NType& t);

NType tp_pq(const PartialMapQ& f);

// A finite strictly increasing partial self-map of the rationals standing in
// for an embedding Q -> Q. Points outside the recorded graph are resolved by
// linear interpolation between neighbours (unit slope beyond the ends), which
// keeps the extension strictly increasing and consistent across calls.
struct EmbeddingGerm {
    std::vector<std::pair<Rational, Rational>> graph; // sorted by argument
    bool auto_extend = true;

    static EmbeddingGerm identity() { return EmbeddingGerm{{}, true}; }
    static EmbeddingGerm from_graph(std::vector<std::pair<Rational, Rational>> points,
        bool auto_extend = true);

    // Value at q; throws GermGap when q is off the graph and extension is off.
    Rational apply(const Rational& q) const;

    // A new germ whose graph additionally records the given arguments.
    EmbeddingGerm extended_with(const std::vector<Rational>& arguments) const;

    void validate() const;
};

// h after f: same domain, values mapped through the germ.
PartialMapQ compose_pq(const EmbeddingGerm& h, const PartialMapQ& f);

// Concatenation: domain sizes add, the j-th map lands at its block offset.
PartialMapQ oplus(const std::vector<PartialMapQ>& fs);

// Inverse bookkeeping of oplus for the recorded sizes.
std::vector<PartialMapQ> split(const PartialMapQ& f, const std::vector<uint32_t>& sizes);

// Places p at slot j among empty maps of the given sizes.
PartialMapQ pad(const PartialMapQ& p, size_t j, const std::vector<uint32_t>& sizes);
PartialMapQ unpad(const PartialMapQ& f, size_t j, const std::vector<uint32_t>& sizes);

// Positions of the infinite-sum vertices of a type, in BFS order, together
// with their child counts. The encoded domain size is the sum of the counts.
struct TypeBlockLayout {
    std::vector<uint32_t> vertices;
    std::vector<uint32_t> child_counts;
    uint32_t total() const;
};

TypeBlockLayout type_block_layout(const EmbType& tau);

// Encodes an embedding of type tau as a total map on the block layout: block
// i lists the sorted numeric edge labels below the i-th infinite-sum vertex,
// each passed through xi. Injective for fixed (sigma, tau).
PartialMapQ psi_encode(const ChainTerm& sigma, const EmbType& tau, const SigmaEmbedding& f);

// The inverse of psi_encode on its image; rejects anything outside with
// NotInM. For a type without infinite-sum vertices the code is any nonempty
// map on a singleton domain and the result is the unique embedding of that
// type (the constant-map convention).
SigmaEmbedding phi_decode(const ChainTerm& sigma, const EmbType& tau, const PartialMapQ& p);

std::string partial_map_to_json(const PartialMapQ& f);
PartialMapQ partial_map_from_json(const std::string& text);

} // namespace brd
