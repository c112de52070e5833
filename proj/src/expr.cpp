#include "bihsphere/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace bihsphere {

namespace {

struct Token {
    enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
    double number = 0.0;
    bool integral = false;  // number token had no fraction/exponent part
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.pos = pos_;
        if (pos_ >= src_.size()) {
            t.type = Token::End;
            return t;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; t.type = Token::Plus; return t;
            case '-': ++pos_; t.type = Token::Minus; return t;
            case '*': ++pos_; t.type = Token::Star; return t;
            case '/': ++pos_; t.type = Token::Slash; return t;
            case '^': ++pos_; t.type = Token::Caret; return t;
            case '(': ++pos_; t.type = Token::LParen; return t;
            case ')': ++pos_; t.type = Token::RParen; return t;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            t.type = Token::Ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

private:
    Token lex_number() {
        Token t;
        t.pos = pos_;
        t.type = Token::Number;
        std::size_t start = pos_;
        bool has_digits = false, has_fraction = false, has_exponent = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
            has_digits = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            has_fraction = true;
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                has_digits = true;
            }
        }
        if (!has_digits) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                has_exponent = true;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to a following identifier, not this number
            }
        }
        t.text = src_.substr(start, pos_ - start);
        t.number = std::strtod(t.text.c_str(), nullptr);
        t.integral = !has_fraction && !has_exponent;
        return t;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

std::optional<ExprFunc> function_named(const std::string& name) {
    if (name == "sin") return ExprFunc::Sin;
    if (name == "cos") return ExprFunc::Cos;
    if (name == "exp") return ExprFunc::Exp;
    if (name == "sqrt") return ExprFunc::Sqrt;
    if (name == "log") return ExprFunc::Log;
    return std::nullopt;
}

class Parser {
public:
    Parser(const std::string& src, std::span<const std::string> params)
        : lexer_(src), params_(params) {
        advance();
    }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (tok_.type != Token::End) throw ParseError("unexpected trailing input", tok_.pos);
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    bool accept(Token::Type t) {
        if (tok_.type != t) return false;
        advance();
        return true;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (tok_.type == Token::Plus || tok_.type == Token::Minus) {
            ExprKind k = tok_.type == Token::Plus ? ExprKind::Add : ExprKind::Sub;
            advance();
            ExprPtr rhs = term();
            lhs = binary(k, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (tok_.type == Token::Star || tok_.type == Token::Slash) {
            ExprKind k = tok_.type == Token::Star ? ExprKind::Mul : ExprKind::Div;
            advance();
            ExprPtr rhs = factor();
            lhs = binary(k, lhs, rhs);
        }
        return lhs;
    }

    // Exponentiation binds tighter than unary minus: -u^2 = -(u^2).
    ExprPtr factor() {
        if (tok_.type == Token::Minus) {
            advance();
            ExprPtr inner = factor();
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Neg;
            e->a = inner;
            return e;
        }
        ExprPtr base = primary();
        if (accept(Token::Caret)) {
            int sign = 1;
            if (tok_.type == Token::Minus) {
                sign = -1;
                advance();
            }
            if (tok_.type != Token::Number) throw ParseError("expected integer exponent", tok_.pos);
            if (!tok_.integral || tok_.number != std::floor(tok_.number))
                throw ParseError("non-integer exponent '" + tok_.text + "'", tok_.pos);
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Pow;
            e->exponent = sign * static_cast<int>(tok_.number);
            e->a = base;
            advance();
            return e;
        }
        return base;
    }

    ExprPtr primary() {
        if (tok_.type == Token::Number) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Number;
            e->number = tok_.number;
            advance();
            return e;
        }
        if (tok_.type == Token::Ident) {
            std::string name = tok_.text;
            std::size_t pos = tok_.pos;
            advance();
            if (auto f = function_named(name)) {
                if (!accept(Token::LParen))
                    throw ParseError("function '" + name + "' requires an argument list", tok_.pos);
                ExprPtr arg = expr();
                if (!accept(Token::RParen))
                    throw ParseError("expected ')' closing call to '" + name + "'", tok_.pos);
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Call;
                e->func = *f;
                e->a = arg;
                return e;
            }
            if (name == "pi") {
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Pi;
                return e;
            }
            for (std::size_t i = 0; i < params_.size(); ++i) {
                if (params_[i] == name) {
                    auto e = std::make_shared<Expr>();
                    e->kind = ExprKind::Param;
                    e->param = static_cast<int>(i);
                    e->param_name = name;
                    return e;
                }
            }
            throw ParseError("unknown identifier '" + name + "'", pos);
        }
        if (tok_.type == Token::LParen) {
            advance();
            ExprPtr e = expr();
            if (!accept(Token::RParen)) throw ParseError("expected ')'", tok_.pos);
            return e;
        }
        if (tok_.type == Token::End) throw ParseError("unexpected end of input", tok_.pos);
        throw ParseError("unexpected token", tok_.pos);
    }

    static ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(a);
        e->b = std::move(b);
        return e;
    }

    Lexer lexer_;
    std::span<const std::string> params_;
    Token tok_;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

void render(const Expr& e, std::string& out, int parent_prec) {
    const int prec = precedence(e);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", e.number);
            out += buf;
            break;
        }
        case ExprKind::Param: out += e.param_name; break;
        case ExprKind::Pi: out += "pi"; break;
        case ExprKind::Neg:
            out += '-';
            render(*e.a, out, prec + (e.a->kind == ExprKind::Neg ? 1 : 0));
            break;
        case ExprKind::Add:
            render(*e.a, out, prec);
            out += " + ";
            render(*e.b, out, prec + 1);
            break;
        case ExprKind::Sub:
            render(*e.a, out, prec);
            out += " - ";
            render(*e.b, out, prec + 1);
            break;
        case ExprKind::Mul:
            render(*e.a, out, prec);
            out += "*";
            render(*e.b, out, prec + 1);
            break;
        case ExprKind::Div:
            render(*e.a, out, prec);
            out += "/";
            render(*e.b, out, prec + 1);
            break;
        case ExprKind::Pow:
            render(*e.a, out, prec + 1);
            out += '^';
            out += std::to_string(e.exponent);
            break;
        case ExprKind::Call: {
            static const char* names[] = {"sin", "cos", "exp", "sqrt", "log"};
            out += names[static_cast<int>(e.func)];
            out += '(';
            render(*e.a, out, 0);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse_expression(const std::string& src, std::span<const std::string> params) {
    return Parser(src, params).parse();
}

std::string to_string(const Expr& e) {
    std::string out;
    render(e, out, 0);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number: return a.number == b.number;
        case ExprKind::Param: return a.param == b.param && a.param_name == b.param_name;
        case ExprKind::Pi: return true;
        case ExprKind::Neg: return expr_equal(*a.a, *b.a);
        case ExprKind::Pow: return a.exponent == b.exponent && expr_equal(*a.a, *b.a);
        case ExprKind::Call: return a.func == b.func && expr_equal(*a.a, *b.a);
        default: return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
    }
}

Jet eval_expression(const Expr& e, std::span<const double> point, int num_vars, int order) {
    if (static_cast<int>(point.size()) != num_vars)
        throw std::invalid_argument("eval_expression: point length does not match num_vars");
    switch (e.kind) {
        case ExprKind::Number: return Jet::constant(e.number, num_vars, order);
        case ExprKind::Pi: return Jet::constant(std::numbers::pi, num_vars, order);
        case ExprKind::Param:
            if (e.param < 0 || e.param >= num_vars)
                throw EvalError("parameter '" + e.param_name + "' out of range");
            return Jet::variable(e.param, point[e.param], num_vars, order);
        case ExprKind::Neg: return -eval_expression(*e.a, point, num_vars, order);
        case ExprKind::Add:
            return eval_expression(*e.a, point, num_vars, order) +
                   eval_expression(*e.b, point, num_vars, order);
        case ExprKind::Sub:
            return eval_expression(*e.a, point, num_vars, order) -
                   eval_expression(*e.b, point, num_vars, order);
        case ExprKind::Mul:
            return eval_expression(*e.a, point, num_vars, order) *
                   eval_expression(*e.b, point, num_vars, order);
        case ExprKind::Div: {
            Jet num = eval_expression(*e.a, point, num_vars, order);
            Jet den = eval_expression(*e.b, point, num_vars, order);
            try {
                return num / den;
            } catch (const std::domain_error& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(*e.b) + "'");
            }
        }
        case ExprKind::Pow: {
            Jet base = eval_expression(*e.a, point, num_vars, order);
            try {
                return pow(base, e.exponent);
            } catch (const std::domain_error& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(e) + "'");
            }
        }
        case ExprKind::Call: {
            Jet arg = eval_expression(*e.a, point, num_vars, order);
            static constexpr Elementary map[] = {Elementary::Sin, Elementary::Cos, Elementary::Exp,
                                                 Elementary::Sqrt, Elementary::Log};
            try {
                return apply(map[static_cast<int>(e.func)], arg);
            } catch (const std::domain_error& err) {
                throw EvalError(std::string(err.what()) + " in '" + to_string(e) + "'");
            }
        }
    }
    throw EvalError("eval_expression: malformed AST");
}

}  // namespace bihsphere
