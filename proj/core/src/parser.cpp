#include <cctype>
#include <charconv>
#include <numbers>

#include "cexpr/errors.hpp"
#include "cexpr/expression.hpp"

namespace cexpr {

namespace {

using Op = Expression::Op;

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := ('-' | '+') unary | power
// power   := primary ('^' exponent)*
// exponent:= ('-' | '+')? primary
// primary := number | name | name '(' expr ')' | '(' expr ')'
class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    Expression parse_all() {
        Expression result = expr();
        skip_space();
        if (pos_ < text_.size()) {
            throw ParseError(pos_, "operator or end of input");
        }
        return result;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(pos_, std::string("'") + c + "'");
        }
    }

    Expression expr() {
        Expression lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = lhs + term();
            } else if (accept('-')) {
                lhs = lhs - term();
            } else {
                return lhs;
            }
        }
    }

    Expression term() {
        Expression lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * unary();
            } else if (accept('/')) {
                lhs = lhs / unary();
            } else {
                return lhs;
            }
        }
    }

    Expression unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    Expression power() {
        Expression base = primary();
        while (accept('^')) {
            skip_space();
            const std::size_t exponent_pos = pos_;
            Expression exponent;
            if (accept('-')) {
                exponent = -primary();
            } else {
                accept('+');
                exponent = primary();
            }
            if (!exponent.is_variable_free()) {
                throw ParseError(exponent_pos, "constant exponent");
            }
            base = Expression::power(base, exponent.eval(0.0));
        }
        return base;
    }

    Expression primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError(pos_, "expression");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return name();
        }
        throw ParseError(pos_, "expression");
    }

    Expression number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const auto result = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (result.ec != std::errc{}) {
            throw ParseError(start, "number");
        }
        pos_ = static_cast<std::size_t>(result.ptr - text_.data());
        return Expression::constant(value);
    }

    Expression name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = text_.substr(start, pos_ - start);

        static constexpr std::pair<std::string_view, Op> functions[] = {
            {"sin", Op::Sin}, {"cos", Op::Cos},   {"exp", Op::Exp},
            {"ln", Op::Ln},   {"sqrt", Op::Sqrt}, {"abs", Op::Abs},
        };
        for (const auto& [fname, op] : functions) {
            if (id == fname) {
                expect('(');
                Expression arg = expr();
                expect(')');
                return Expression::unary(op, std::move(arg));
            }
        }
        if (id == options_.variable) {
            return Expression::variable();
        }
        if (const auto it = options_.constants.find(id); it != options_.constants.end()) {
            return Expression::constant(it->second);
        }
        if (id == "pi") {
            return Expression::constant(std::numbers::pi);
        }
        if (id == "e") {
            return Expression::constant(std::numbers::e);
        }
        throw ParseError(start, "known identifier, got '" + std::string(id) + "'");
    }

    std::string_view text_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

} // namespace

Expression parse(std::string_view text, const ParseOptions& options) {
    return Parser(text, options).parse_all();
}

Expression parse(std::string_view text, const ConstantMap& constants) {
    ParseOptions options;
    options.constants = constants;
    return parse(text, options);
}

double parse_constant(std::string_view text, const ConstantMap& constants) {
    ParseOptions options;
    options.constants = constants;
    options.variable.clear();
    const Expression e = parse(text, options);
    if (!e.is_variable_free()) {
        throw ParseError(0, "constant expression");
    }
    return e.eval(0.0);
}

} // namespace cexpr
