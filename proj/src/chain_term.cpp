#include "brd/chain_term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace brd {

ChainTerm ChainTerm::plus(std::vector<ChainTerm> children)
{
    if (children.empty())
        throw Error(ErrorKind::ArityViolation, "finite sum needs at least one summand");
    return ChainTerm(TermKind::Plus, std::move(children));
}

ChainTerm ChainTerm::omega_sum(std::vector<ChainTerm> block)
{
    if (block.empty())
        throw Error(ErrorKind::ArityViolation, "omega sum needs a nonempty block");
    return ChainTerm(TermKind::OmegaSum, std::move(block));
}

ChainTerm ChainTerm::omega_star_sum(std::vector<ChainTerm> block)
{
    if (block.empty())
        throw Error(ErrorKind::ArityViolation, "omega* sum needs a nonempty block");
    return ChainTerm(TermKind::OmegaStarSum, std::move(block));
}

bool ChainTerm::contains_atom_q() const
{
    if (kind_ == TermKind::AtomQ)
        return true;
    for (const auto& c : children_)
        if (c.contains_atom_q())
            return true;
    return false;
}

bool ChainTerm::contains_leaf0() const
{
    if (kind_ == TermKind::Leaf0)
        return true;
    for (const auto& c : children_)
        if (c.contains_leaf0())
            return true;
    return false;
}

void ChainTerm::validate() const
{
    for (const auto& c : children_) {
        if (c.contains_atom_q())
            throw Error(ErrorKind::InvalidTerm, "Q is only allowed as the whole term");
        c.validate();
    }
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::Syntax, what + " at position " + std::to_string(pos));
    }

    void skip_ws()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eof()
    {
        skip_ws();
        return pos >= text.size();
    }

    ChainTerm term()
    {
        skip_ws();
        if (pos >= text.size())
            fail("expected term");
        char c = text[pos];
        if (c == '0') {
            ++pos;
            return ChainTerm::leaf0();
        }
        if (c == '1') {
            ++pos;
            return ChainTerm::leaf1();
        }
        if (c == 'Q') {
            ++pos;
            return ChainTerm::atom_q();
        }
        if (c != '(')
            fail(std::string("unexpected character '") + c + "'");
        ++pos;
        skip_ws();
        TermKind kind;
        if (pos < text.size() && text[pos] == '+') {
            kind = TermKind::Plus;
            ++pos;
        }
        else if (pos < text.size() && text[pos] == 'w') {
            ++pos;
            if (pos < text.size() && text[pos] == '*') {
                kind = TermKind::OmegaStarSum;
                ++pos;
            }
            else {
                kind = TermKind::OmegaSum;
            }
        }
        else {
            fail("expected '+', 'w' or 'w*'");
        }
        std::vector<ChainTerm> children;
        while (true) {
            skip_ws();
            if (pos >= text.size())
                fail("unterminated '('");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            children.push_back(term());
        }
        if (children.empty())
            throw Error(ErrorKind::ArityViolation,
                "empty operator application at position " + std::to_string(pos));
        switch (kind) {
        case TermKind::Plus: return ChainTerm::plus(std::move(children));
        case TermKind::OmegaSum: return ChainTerm::omega_sum(std::move(children));
        default: return ChainTerm::omega_star_sum(std::move(children));
        }
    }
};

} // namespace

ChainTerm parse_chain_term(const std::string& text)
{
    Parser p(text);
    ChainTerm t = p.term();
    if (!p.eof())
        p.fail("trailing input");
    t.validate();
    return t;
}

std::string to_string(const ChainTerm& term)
{
    switch (term.kind()) {
    case TermKind::Leaf0: return "0";
    case TermKind::Leaf1: return "1";
    case TermKind::AtomQ: return "Q";
    default: break;
    }
    std::string out = "(";
    out += term.kind() == TermKind::Plus ? "+" : term.kind() == TermKind::OmegaSum ? "w" : "w*";
    for (const auto& c : term.children()) {
        out += ' ';
        out += to_string(c);
    }
    out += ')';
    return out;
}

namespace {

// Empty result means the subterm denotes the empty chain.
std::optional<ChainTerm> normalize_rec(const ChainTerm& t)
{
    switch (t.kind()) {
    case TermKind::Leaf0: return std::nullopt;
    case TermKind::Leaf1: return ChainTerm::leaf1();
    case TermKind::AtomQ: return ChainTerm::atom_q();
    case TermKind::Plus: {
        std::vector<ChainTerm> kept;
        for (const auto& c : t.children())
            if (auto n = normalize_rec(c))
                kept.push_back(std::move(*n));
        if (kept.empty())
            return std::nullopt;
        if (kept.size() == 1)
            return std::move(kept.front());
        return ChainTerm::plus(std::move(kept));
    }
    case TermKind::OmegaSum:
    case TermKind::OmegaStarSum: {
        std::vector<ChainTerm> kept;
        for (const auto& c : t.children())
            if (auto n = normalize_rec(c))
                kept.push_back(std::move(*n));
        if (kept.empty())
            return std::nullopt;
        // a singleton Plus block presents the same tree as the flat block
        if (kept.size() == 1 && kept.front().kind() == TermKind::Plus) {
            std::vector<ChainTerm> hoisted = kept.front().children();
            kept = std::move(hoisted);
        }
        return t.kind() == TermKind::OmegaSum ? ChainTerm::omega_sum(std::move(kept))
                                              : ChainTerm::omega_star_sum(std::move(kept));
    }
    }
    throw Error(ErrorKind::InvalidTerm, "unreachable term kind");
}

} // namespace

ChainTerm normalize_drop_zero(const ChainTerm& term)
{
    term.validate();
    auto n = normalize_rec(term);
    if (!n)
        throw Error(ErrorKind::EmptyChain, "term denotes the empty chain");
    return std::move(*n);
}

uint32_t hausdorff_rank(const ChainTerm& term)
{
    switch (term.kind()) {
    case TermKind::Leaf0:
    case TermKind::Leaf1:
        return 0;
    case TermKind::AtomQ:
        throw Error(ErrorKind::NotScattered, "rank undefined for the non-scattered atom");
    case TermKind::Plus: {
        uint32_t r = 0;
        for (const auto& c : term.children())
            r = std::max(r, hausdorff_rank(c));
        return r;
    }
    case TermKind::OmegaSum:
    case TermKind::OmegaStarSum: {
        uint32_t r = 0;
        for (const auto& c : term.children())
            r = std::max(r, hausdorff_rank(c));
        return 1 + r;
    }
    }
    throw Error(ErrorKind::InvalidTerm, "unreachable term kind");
}

namespace {

void emit_branches(const ChainTerm& t, uint32_t m, std::vector<LambdaSymbol>& prefix,
    std::vector<BranchString>& out)
{
    switch (t.kind()) {
    case TermKind::Leaf0:
        return;
    case TermKind::Leaf1:
        out.emplace_back(prefix);
        return;
    case TermKind::AtomQ:
        throw Error(ErrorKind::NotScattered, "cannot truncate the non-scattered atom");
    case TermKind::Plus: {
        for (size_t j = 0; j < t.children().size(); ++j) {
            prefix.push_back(LambdaSymbol::iota(static_cast<uint32_t>(j)));
            emit_branches(t.children()[j], m, prefix, out);
            prefix.pop_back();
        }
        return;
    }
    case TermKind::OmegaSum:
    case TermKind::OmegaStarSum: {
        bool star = t.kind() == TermKind::OmegaStarSum;
        for (uint32_t step = 0; step < m; ++step) {
            // the omega* family descends by index, so emitting m-1..0 keeps
            // the output lexicographically sorted
            uint32_t k = star ? m - 1 - step : step;
            prefix.push_back(star ? LambdaSymbol::omega_star(k) : LambdaSymbol::omega(k));
            if (t.children().size() == 1) {
                emit_branches(t.children()[0], m, prefix, out);
            }
            else {
                for (size_t j = 0; j < t.children().size(); ++j) {
                    prefix.push_back(LambdaSymbol::iota(static_cast<uint32_t>(j)));
                    emit_branches(t.children()[j], m, prefix, out);
                    prefix.pop_back();
                }
            }
            prefix.pop_back();
        }
        return;
    }
    }
}

} // namespace

FiniteChainApprox truncate(const ChainTerm& term, uint32_t m)
{
    if (m == 0)
        throw Error(ErrorKind::InvalidInput, "truncation depth must be at least 1");
    term.validate();
    FiniteChainApprox approx;
    std::vector<LambdaSymbol> prefix;
    emit_branches(term, m, prefix, approx.branches);
    return approx;
}

SpectrumInfo term_spectrum_finite(const ChainTerm& term)
{
    term.validate();
    if (term.kind() == TermKind::AtomQ)
        return SpectrumInfo{true, false, std::nullopt};
    return SpectrumInfo{true, true, hausdorff_rank(term)};
}

namespace {

uint64_t parse_nat(const std::string& text, size_t& pos)
{
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw Error(ErrorKind::Syntax, "expected number at position " + std::to_string(pos));
    uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
        ++pos;
    }
    return v;
}

} // namespace

CnfOrdinal parse_cnf_ordinal(const std::string& text)
{
    CnfOrdinal alpha;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip_ws();
    if (text.compare(pos, 3, "w^w") == 0) {
        pos += 3;
        skip_ws();
        if (pos != text.size())
            throw Error(ErrorKind::Syntax, "trailing input after w^w");
        alpha.omega_omega = true;
        return alpha;
    }
    if (text.compare(pos, 1, "0") == 0) {
        ++pos;
        skip_ws();
        if (pos != text.size())
            throw Error(ErrorKind::Syntax, "trailing input after 0");
        return alpha;
    }
    bool first = true;
    while (true) {
        skip_ws();
        if (!first) {
            if (pos >= text.size())
                break;
            if (text[pos] != '+')
                throw Error(ErrorKind::Syntax, "expected '+' at position " + std::to_string(pos));
            ++pos;
            skip_ws();
        }
        if (pos >= text.size())
            throw Error(ErrorKind::Syntax, "expected summand at position " + std::to_string(pos));
        uint32_t expo = 0;
        uint64_t coef = 0;
        if (text[pos] == 'w') {
            ++pos;
            expo = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                uint64_t e = parse_nat(text, pos);
                if (e > 0xffffffffULL)
                    throw Error(ErrorKind::Syntax, "exponent too large");
                expo = static_cast<uint32_t>(e);
            }
            coef = 1;
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                coef = parse_nat(text, pos);
            }
        }
        else {
            expo = 0;
            coef = parse_nat(text, pos);
        }
        if (coef == 0)
            throw Error(ErrorKind::Syntax, "coefficients must be positive");
        if (!alpha.terms.empty() && alpha.terms.back().first <= expo)
            throw Error(ErrorKind::Syntax, "exponents must strictly decrease");
        alpha.terms.emplace_back(expo, coef);
        first = false;
        skip_ws();
        if (pos >= text.size())
            break;
    }
    return alpha;
}

std::string to_string(const CnfOrdinal& alpha)
{
    if (alpha.omega_omega)
        return "w^w";
    if (alpha.terms.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto [expo, coef] : alpha.terms) {
        if (!first)
            out << " + ";
        first = false;
        if (expo == 0) {
            out << coef;
        }
        else {
            out << "w";
            if (expo != 1)
                out << "^" << expo;
            if (coef != 1)
                out << "*" << coef;
        }
    }
    return out.str();
}

bool cnf_spectrum_finite(const CnfOrdinal& alpha)
{
    return !alpha.omega_omega;
}

} // namespace brd
