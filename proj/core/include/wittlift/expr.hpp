#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wittlift/pd_rings.hpp"
#include "wittlift/series.hpp"

namespace wittlift {

/// Parsed polynomial expression. Grammar: integer literals, identifiers,
/// `+ - * ^`, parentheses; `^` takes a literal natural exponent; `p`
/// denotes the prime. Example: "T^3 - p*T".
struct ExprNode {
    enum class Kind { Number, Ident, Add, Sub, Mul, Pow, Neg };
    Kind kind;
    std::uint64_t number = 0;
    std::string ident;
    std::uint32_t exponent = 0;
    std::vector<ExprNode> children;
    std::size_t line = 1, column = 1;
};

ExprNode parse_expression(std::string_view src);

/// Evaluate with identifiers as series variables.
TruncatedSeries eval_series_expr(const ExprNode& node, const SeriesContext& ctx);
TruncatedSeries parse_series_expr(std::string_view src, const SeriesContext& ctx);

/// Evaluate with identifiers as ring basis symbols (e.g. "9*g1 + eps").
RingElem eval_ring_expr(const ExprNode& node, const RingPtr& ring);
RingElem parse_ring_expr(std::string_view src, const RingPtr& ring);

} // namespace wittlift
