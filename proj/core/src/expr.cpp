#include "wittlift/expr.hpp"

#include <cctype>

namespace wittlift {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    std::uint64_t number = 0;
    std::string ident;
    std::size_t line, column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                src_[pos_] == '\r')) {
            bump(src_[pos_]);
        }
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                std::uint64_t digit = static_cast<std::uint64_t>(src_[pos_] - '0');
                if (v > (UINT64_MAX - digit) / 10)
                    throw ParseError("integer literal too large", line_, col_);
                v = v * 10 + digit;
                bump(src_[pos_]);
            }
            tok_.kind = Token::Kind::Number;
            tok_.number = v;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                id += src_[pos_];
                bump(src_[pos_]);
            }
            tok_.kind = Token::Kind::Ident;
            tok_.ident = std::move(id);
            return;
        }
        bump(c);
        switch (c) {
        case '+': tok_.kind = Token::Kind::Plus; return;
        case '-': tok_.kind = Token::Kind::Minus; return;
        case '*': tok_.kind = Token::Kind::Star; return;
        case '^': tok_.kind = Token::Kind::Caret; return;
        case '(': tok_.kind = Token::Kind::LParen; return;
        case ')': tok_.kind = Token::Kind::RParen; return;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", tok_.line,
                             tok_.column);
        }
    }

    void bump(char c) {
        ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, col_ = 1;
    Token tok_{Token::Kind::End, 0, "", 1, 1};
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExprNode parse() {
        ExprNode e = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("unexpected trailing input", t.line, t.column);
        return e;
    }

  private:
    ExprNode sum() {
        ExprNode left = product();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Plus && t.kind != Token::Kind::Minus)
                return left;
            Token op = lex_.take();
            ExprNode right = product();
            ExprNode node;
            node.kind = op.kind == Token::Kind::Plus ? ExprNode::Kind::Add
                                                     : ExprNode::Kind::Sub;
            node.line = op.line;
            node.column = op.column;
            node.children.push_back(std::move(left));
            node.children.push_back(std::move(right));
            left = std::move(node);
        }
    }

    ExprNode product() {
        ExprNode left = unary();
        for (;;) {
            if (lex_.peek().kind != Token::Kind::Star)
                return left;
            Token op = lex_.take();
            ExprNode right = unary();
            ExprNode node;
            node.kind = ExprNode::Kind::Mul;
            node.line = op.line;
            node.column = op.column;
            node.children.push_back(std::move(left));
            node.children.push_back(std::move(right));
            left = std::move(node);
        }
    }

    // unary minus binds below '^', so -x^2 reads as -(x^2)
    ExprNode unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            Token op = lex_.take();
            ExprNode node;
            node.kind = ExprNode::Kind::Neg;
            node.line = op.line;
            node.column = op.column;
            node.children.push_back(unary());
            return node;
        }
        return power();
    }

    ExprNode power() {
        ExprNode base = atom();
        if (lex_.peek().kind != Token::Kind::Caret)
            return base;
        Token op = lex_.take();
        Token e = lex_.take();
        if (e.kind != Token::Kind::Number)
            throw ParseError("exponent must be a natural number literal", e.line, e.column);
        if (e.number > 0xFFFF)
            throw ParseError("exponent too large", e.line, e.column);
        ExprNode node;
        node.kind = ExprNode::Kind::Pow;
        node.exponent = static_cast<std::uint32_t>(e.number);
        node.line = op.line;
        node.column = op.column;
        node.children.push_back(std::move(base));
        return node;
    }

    ExprNode atom() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::Number: {
            ExprNode node;
            node.kind = ExprNode::Kind::Number;
            node.number = t.number;
            node.line = t.line;
            node.column = t.column;
            return node;
        }
        case Token::Kind::Ident: {
            ExprNode node;
            node.kind = ExprNode::Kind::Ident;
            node.ident = t.ident;
            node.line = t.line;
            node.column = t.column;
            return node;
        }
        case Token::Kind::LParen: {
            ExprNode inner = sum();
            Token close = lex_.take();
            if (close.kind != Token::Kind::RParen)
                throw ParseError("expected ')'", close.line, close.column);
            return inner;
        }
        default:
            throw ParseError("expected a number, identifier or '('", t.line, t.column);
        }
    }

    Lexer lex_;
};

} // namespace

ExprNode parse_expression(std::string_view src) {
    return Parser(src).parse();
}

TruncatedSeries eval_series_expr(const ExprNode& node, const SeriesContext& ctx) {
    switch (node.kind) {
    case ExprNode::Kind::Number:
        return TruncatedSeries::constant(ctx, node.number % ctx.modulus());
    case ExprNode::Kind::Ident: {
        if (node.ident == "p")
            return TruncatedSeries::constant(ctx, ctx.params.p);
        for (std::size_t i = 0; i < ctx.nvars(); ++i)
            if ((*ctx.vars)[i] == node.ident)
                return TruncatedSeries::variable(ctx, i);
        throw ParseError("unknown variable '" + node.ident + "'", node.line, node.column);
    }
    case ExprNode::Kind::Add:
        return eval_series_expr(node.children[0], ctx) +
               eval_series_expr(node.children[1], ctx);
    case ExprNode::Kind::Sub:
        return eval_series_expr(node.children[0], ctx) -
               eval_series_expr(node.children[1], ctx);
    case ExprNode::Kind::Mul:
        return eval_series_expr(node.children[0], ctx) *
               eval_series_expr(node.children[1], ctx);
    case ExprNode::Kind::Neg: {
        TruncatedSeries s = eval_series_expr(node.children[0], ctx);
        return s.scaled(ctx.modulus() - 1);
    }
    case ExprNode::Kind::Pow: {
        TruncatedSeries base = eval_series_expr(node.children[0], ctx);
        TruncatedSeries acc = TruncatedSeries::constant(ctx, 1);
        for (std::uint32_t i = 0; i < node.exponent; ++i)
            acc = acc * base;
        return acc;
    }
    }
    throw Error("unreachable expression kind");
}

TruncatedSeries parse_series_expr(std::string_view src, const SeriesContext& ctx) {
    return eval_series_expr(parse_expression(src), ctx);
}

RingElem eval_ring_expr(const ExprNode& node, const RingPtr& ring) {
    switch (node.kind) {
    case ExprNode::Kind::Number:
        return ring->from_scalar(node.number);
    case ExprNode::Kind::Ident: {
        if (node.ident == "p")
            return ring->from_scalar(ring->prime());
        const auto& basis = ring->basis();
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == node.ident)
                return ring->basis_element(i);
        throw ParseError("unknown basis symbol '" + node.ident + "' in " +
                             ring->descriptor().name(),
                         node.line, node.column);
    }
    case ExprNode::Kind::Add:
        return eval_ring_expr(node.children[0], ring) +
               eval_ring_expr(node.children[1], ring);
    case ExprNode::Kind::Sub:
        return eval_ring_expr(node.children[0], ring) -
               eval_ring_expr(node.children[1], ring);
    case ExprNode::Kind::Mul:
        return eval_ring_expr(node.children[0], ring) *
               eval_ring_expr(node.children[1], ring);
    case ExprNode::Kind::Neg:
        return -eval_ring_expr(node.children[0], ring);
    case ExprNode::Kind::Pow:
        return eval_ring_expr(node.children[0], ring).pow(node.exponent);
    }
    throw Error("unreachable expression kind");
}

RingElem parse_ring_expr(std::string_view src, const RingPtr& ring) {
    return eval_ring_expr(parse_expression(src), ring);
}

} // namespace wittlift
