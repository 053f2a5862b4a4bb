#pragma once

#include "mqr/error.hpp"
#include "mqr/syntax.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mqr {

// Position of the first character of a parsed fragment within its file,
// so that errors inside embedded formulas point at the right place.
struct text_origin
{
    int line = 1;
    int column = 1;
};

// Reason code is "syntax" for malformed text and "wrong-system" when a
// box or relation symbol is not part of the requested system.
class parse_error : public mqr_error
{
public:
    parse_error( std::string code, int line, int column, std::vector< std::string > expected,
                 const std::string& message );

    [[nodiscard]] int line() const { return _line; }
    [[nodiscard]] int column() const { return _column; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _expected; }

private:
    int _line;
    int _column;
    std::vector< std::string > _expected;
};

// Grammar (tightest binding first): prefix ~ [] [M] [P] <> <M> <P>, then &,
// then |, then -> (right associative), then <-> (non associative).
// Defined connectives are expanded while parsing. With no system given,
// every relation symbol is accepted.
mformula parse_mformula( std::string_view input, std::optional< proof_system > system = std::nullopt,
                         text_origin origin = {} );

// `x : A` or `x U y`, `x M y`, `x P y`.
formula parse_formula( std::string_view input, std::optional< proof_system > system = std::nullopt,
                       text_origin origin = {} );

} // namespace mqr
