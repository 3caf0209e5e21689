#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include "posetbraid/search.hpp"

namespace pb {

// Malformed input, reported with the 1-based line it was found on. what()
// already carries the "line N:" prefix.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// posetfile v1: the header line, `elements: x y z`, `covers: x<y z<y`.
// The covers line is required and may be empty after the keyword.
Poset read_poset(std::istream& in);
void write_poset(std::ostream& out, const Poset& p);

// lambdafile v1: the header line, `field: Q` or `field: GF(5)`, then one
// record `a b c d | e f g h = value` per nonzero coefficient with inputs
// (a,b),(c,d) left of the bar and outputs (e,f),(g,h) right of it.
// transpose_ingest reads records written the other way around (outputs left
// of the bar).
LambdaTensor read_lambda(std::istream& in, std::shared_ptr<const IntervalBasis> basis,
                         bool transpose_ingest = false);
void write_lambda(std::ostream& out, const LambdaTensor& t);

// Renders an instance as `id(name=value, ...)` with parameters in name order.
std::string instance_signature(const FamilyInstance& inst);

// censusfile v1: the header line, then one lambda block per solution, each
// followed by its `matches:` lines (`matches: none` when no family matches)
// and separated by blank lines. Each block parses back with read_lambda.
void write_census(std::ostream& out, const SearchResult& res);

} // namespace pb
