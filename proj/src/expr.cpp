#include "arithdyn/expr.hpp"

#include <cctype>

namespace arithdyn {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    static ExprPtr node(Expr::Kind kind, std::size_t pos, std::vector<ExprPtr> children = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->position = pos;
        e->children = std::move(children);
        return e;
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const std::size_t at = pos_++;
            lhs = node(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, at, {lhs, term()});
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            const char c = peek();
            if (c == '*' || c == '/') {
                const std::size_t at = pos_++;
                lhs = node(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, at, {lhs, unary()});
            } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
                lhs = node(Expr::Kind::Mul, pos_, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        const char c = peek();
        if (c == '-' || c == '+') {
            const std::size_t at = pos_++;
            ExprPtr inner = unary();
            return c == '-' ? node(Expr::Kind::Neg, at, {inner}) : inner;
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (peek() != '^') return base;
        const std::size_t at = pos_++;
        bool parens = false;
        if (peek() == '(') {
            parens = true;
            ++pos_;
        }
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent", pos_);
        if (pos_ - start > 6) throw ParseError("exponent too large", start);
        long k = std::stol(std::string(text_.substr(start, pos_ - start)));
        if (parens) {
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Pow;
        e->position = at;
        e->exponent = negative ? -k : k;
        e->children = {base};
        return e;
    }

    ExprPtr primary() {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->position = at;
            e->number = Int(std::string(text_.substr(at, pos_ - at)), 10);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Variable;
            e->position = at;
            e->name = std::string(text_.substr(at, pos_ - at));
            return e;
        }
        if (c == '\0') throw ParseError("unexpected end of expression", pos_);
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace arithdyn
