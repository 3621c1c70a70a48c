#include "brd/lambda.hpp"

#include <sstream>

namespace brd {

const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::ArityViolation: return "ArityViolation";
    case ErrorKind::EmptyChain: return "EmptyChain";
    case ErrorKind::NotScattered: return "NotScattered";
    case ErrorKind::InvalidTerm: return "InvalidTerm";
    case ErrorKind::PrefixViolation: return "PrefixViolation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::InvalidBranch: return "InvalidBranch";
    case ErrorKind::GermGap: return "GermGap";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NoInfiniteVertex: return "NoInfiniteVertex";
    case ErrorKind::NotInM: return "NotInM";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NonInjective: return "NonInjective";
    case ErrorKind::PremiseFails: return "PremiseFails";
    case ErrorKind::PairMismatch: return "PairMismatch";
    case ErrorKind::EmptyHomset: return "EmptyHomset";
    case ErrorKind::BadCategory: return "BadCategory";
    case ErrorKind::LanguageMismatch: return "LanguageMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotChaining: return "NotChaining";
    case ErrorKind::NotMinimalDecomposition: return "NotMinimalDecomposition";
    case ErrorKind::ClassNotStable: return "ClassNotStable";
    case ErrorKind::OracleBound: return "OracleBound";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

Ordering lambda_compare(const LambdaSymbol& a, const LambdaSymbol& b)
{
    auto family = [](LambdaSymbol::Kind k) {
        switch (k) {
        case LambdaSymbol::Kind::Iota: return 0;
        case LambdaSymbol::Kind::OmegaEdge: return 1;
        case LambdaSymbol::Kind::OmegaStarEdge: return 2;
        }
        return 3;
    };
    int fa = family(a.kind), fb = family(b.kind);
    if (fa != fb)
        return fa < fb ? Ordering::LT : Ordering::GT;
    if (a.index == b.index)
        return Ordering::EQ;
    // the omega-star family is ordered by descending index
    bool less = a.kind == LambdaSymbol::Kind::OmegaStarEdge ? a.index > b.index : a.index < b.index;
    return less ? Ordering::LT : Ordering::GT;
}

std::string to_string(const LambdaSymbol& s)
{
    std::ostringstream out;
    switch (s.kind) {
    case LambdaSymbol::Kind::Iota: out << "i" << s.index; break;
    case LambdaSymbol::Kind::OmegaEdge: out << "(w" << s.index << ")"; break;
    case LambdaSymbol::Kind::OmegaStarEdge: out << "(w*" << s.index << ")"; break;
    }
    return out.str();
}

Ordering branch_compare(const BranchString& x, const BranchString& y)
{
    size_t n = std::min(x.letters.size(), y.letters.size());
    for (size_t i = 0; i < n; ++i) {
        Ordering o = lambda_compare(x.letters[i], y.letters[i]);
        if (o != Ordering::EQ)
            return o;
    }
    if (x.letters.size() == y.letters.size())
        return Ordering::EQ;
    throw Error(ErrorKind::PrefixViolation,
        "'" + to_string(x) + "' and '" + to_string(y) + "' are comparable by prefix");
}

bool branch_less(const BranchString& x, const BranchString& y)
{
    size_t n = std::min(x.letters.size(), y.letters.size());
    for (size_t i = 0; i < n; ++i) {
        Ordering o = lambda_compare(x.letters[i], y.letters[i]);
        if (o != Ordering::EQ)
            return o == Ordering::LT;
    }
    return x.letters.size() < y.letters.size();
}

std::string to_string(const BranchString& b)
{
    std::string out;
    for (size_t i = 0; i < b.letters.size(); ++i) {
        if (i)
            out += '.';
        out += to_string(b.letters[i]);
    }
    return out;
}

namespace {

uint32_t parse_index(const std::string& text, size_t& pos)
{
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw Error(ErrorKind::Syntax, "expected digit at position " + std::to_string(pos) + " in branch string");
    uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<uint64_t>(text[pos] - '0');
        if (value > 0xffffffffULL)
            throw Error(ErrorKind::Syntax, "index too large in branch string");
        ++pos;
    }
    return static_cast<uint32_t>(value);
}

} // namespace

BranchString parse_branch_string(const std::string& text)
{
    BranchString out;
    size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == 'i') {
            ++pos;
            out.letters.push_back(LambdaSymbol::iota(parse_index(text, pos)));
        }
        else if (c == '(') {
            ++pos;
            if (pos >= text.size() || text[pos] != 'w')
                throw Error(ErrorKind::Syntax, "expected 'w' at position " + std::to_string(pos));
            ++pos;
            bool star = pos < text.size() && text[pos] == '*';
            if (star)
                ++pos;
            uint32_t idx = parse_index(text, pos);
            if (pos >= text.size() || text[pos] != ')')
                throw Error(ErrorKind::Syntax, "expected ')' at position " + std::to_string(pos));
            ++pos;
            out.letters.push_back(star ? LambdaSymbol::omega_star(idx) : LambdaSymbol::omega(idx));
        }
        else {
            throw Error(ErrorKind::Syntax,
                std::string("unexpected character '") + c + "' at position " + std::to_string(pos));
        }
        if (pos < text.size()) {
            if (text[pos] != '.')
                throw Error(ErrorKind::Syntax, "expected '.' at position " + std::to_string(pos));
            ++pos;
            if (pos == text.size())
                throw Error(ErrorKind::Syntax, "trailing '.' in branch string");
        }
    }
    return out;
}

} // namespace brd
