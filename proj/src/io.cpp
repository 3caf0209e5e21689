#include "posetbraid/io.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace pb {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> words;
    std::istringstream in(s);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

// Line reader that skips blank lines and tracks the 1-based line number.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank line, trimmed. Returns false at end of input.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            out = trim(raw);
            if (!out.empty()) return true;
        }
        return false;
    }

    std::string require(const std::string& what) {
        std::string s;
        if (!next(s)) throw ParseError(line_ + 1, "missing " + what);
        return s;
    }

    int line() const { return line_; }

private:
    std::istream& in_;
    int line_ = 0;
};

// The remainder of a `keyword: ...` line, or a located error.
std::string keyword_rest(const LineReader& r, const std::string& line,
                         const std::string& keyword) {
    if (line.compare(0, keyword.size(), keyword) != 0)
        throw ParseError(r.line(), "expected `" + keyword + "`");
    return trim(line.substr(keyword.size()));
}

int element_index(const LineReader& r, const Poset& p, const std::string& label) {
    try {
        return p.index_of(label);
    } catch (const std::invalid_argument&) {
        throw ParseError(r.line(), "unknown element '" + label + "'");
    }
}

} // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Poset read_poset(std::istream& in) {
    LineReader r(in);
    if (r.require("posetfile header") != "posetfile v1")
        throw ParseError(r.line(), "expected `posetfile v1` header");

    const auto labels = split_words(keyword_rest(r, r.require("elements line"), "elements:"));
    if (labels.empty()) throw ParseError(r.line(), "empty element list");

    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& word :
         split_words(keyword_rest(r, r.require("covers line"), "covers:"))) {
        const auto lt = word.find('<');
        if (lt == std::string::npos || lt == 0 || lt + 1 == word.size())
            throw ParseError(r.line(), "malformed cover '" + word + "', expected a<b");
        covers.emplace_back(word.substr(0, lt), word.substr(lt + 1));
    }

    std::string extra;
    if (r.next(extra)) throw ParseError(r.line(), "unexpected trailing line");

    try {
        return Poset::from_cover_relations(labels, covers);
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line(), e.what());
    }
}

void write_poset(std::ostream& out, const Poset& p) {
    out << "posetfile v1\n";
    out << "elements:";
    for (const auto& label : p.labels()) out << ' ' << label;
    out << "\ncovers:";
    for (const auto& [a, b] : p.cover_pairs()) out << ' ' << p.label(a) << '<' << p.label(b);
    out << '\n';
}

LambdaTensor read_lambda(std::istream& in, std::shared_ptr<const IntervalBasis> basis,
                         bool transpose_ingest) {
    LineReader r(in);
    if (r.require("lambdafile header") != "lambdafile v1")
        throw ParseError(r.line(), "expected `lambdafile v1` header");

    Field f = Field::rationals();
    try {
        f = Field::parse(keyword_rest(r, r.require("field line"), "field:"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line(), e.what());
    }

    const Poset& p = basis->poset();
    LambdaTensor t(std::move(basis), f);
    std::set<std::array<int, 8>> seen;
    std::string line;
    while (r.next(line)) {
        const auto eq = line.find('=');
        const auto words = split_words(eq == std::string::npos ? line : line.substr(0, eq));
        const std::string value = eq == std::string::npos ? "" : trim(line.substr(eq + 1));
        if (eq == std::string::npos || words.size() != 9 || words[4] != "|" || value.empty())
            throw ParseError(r.line(), "malformed record, expected `a b c d | e f g h = value`");

        int e[8];
        for (int i = 0; i < 8; ++i)
            e[i] = element_index(r, p, words[i < 4 ? i : i + 1]);
        for (int i = 0; i < 8; i += 2)
            if (!p.leq(e[i], e[i + 1]))
                throw ParseError(r.line(), "pair " + p.label(e[i]) + " " + p.label(e[i + 1]) +
                                               " is not an interval");
        if (transpose_ingest) {
            std::swap(e[0], e[4]), std::swap(e[1], e[5]);
            std::swap(e[2], e[6]), std::swap(e[3], e[7]);
        }

        Scalar v = Scalar::zero(f);
        try {
            v = Scalar::parse(f, value);
        } catch (const std::invalid_argument& err) {
            throw ParseError(r.line(), err.what());
        }
        if (!seen.insert({e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]}).second)
            throw ParseError(r.line(), "duplicate record");
        t.set_coeff_pairs(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], v);
    }
    return t;
}

void write_lambda(std::ostream& out, const LambdaTensor& t) {
    out << "lambdafile v1\n";
    out << "field: " << t.field().name() << '\n';
    const IntervalBasis& basis = t.basis();
    const Poset& p = basis.poset();
    auto pair_labels = [&](int i) {
        const auto& [lo, hi] = basis.pair_at(i);
        return p.label(lo) + " " + p.label(hi);
    };
    for (const auto& [key, value] : t.entries())
        out << pair_labels(key.in1) << ' ' << pair_labels(key.in2) << " | "
            << pair_labels(key.out1) << ' ' << pair_labels(key.out2) << " = " << value.str()
            << '\n';
}

std::string instance_signature(const FamilyInstance& inst) {
    std::string out = inst.family_id + "(";
    bool first = true;
    for (const auto& [name, value] : inst.params) {
        if (!first) out += ", ";
        out += name + "=" + value.str();
        first = false;
    }
    return out + ")";
}

void write_census(std::ostream& out, const SearchResult& res) {
    out << "censusfile v1\n";
    for (const auto& entry : res.solutions) {
        out << '\n';
        write_lambda(out, entry.tensor);
        if (entry.matches.empty()) out << "matches: none\n";
        for (const auto& m : entry.matches) out << "matches: " << instance_signature(m) << '\n';
    }
}

} // namespace pb
