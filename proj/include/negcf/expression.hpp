#pragma once

#include "negcf/coefficient_stream.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace negcf {

enum class Convention { Negative, Regular };

struct CfExpression {
    std::string source;
    CoefficientStream stream;
    Convention convention = Convention::Negative;
};

/// Parses
///
///   expr    := ["reg:"] "[" intlist [";" "(" intlist ")"] "]" | builtin
///   intlist := int {"," int}
///   builtin := "@example1" | "@example2" | "@example3" | "@example4"
///
/// Whitespace between tokens is ignored. "reg:" reads the list as a regular
/// continued fraction and converts it. Eventually periodic results are
/// canonical. Throws ParseError carrying the offending position.
CfExpression parse_cf(std::string_view text);

/// Text that parse_cf maps back to the same canonical stream. Generators
/// print as their builtin name.
std::string print_cf(const CoefficientStream& s);

/// The four named generator streams, or nothing for an unknown name.
std::optional<Generator> builtin_stream(std::string_view name);

}  // namespace negcf
