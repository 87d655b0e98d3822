#include "eipflow/expression.hpp"

#include <cctype>
#include <charconv>

namespace eipflow {

const char* to_string(EvalError::Kind kind) {
    switch (kind) {
        case EvalError::Kind::MissingPath: return "missing-path";
        case EvalError::Kind::MissingHeader: return "missing-header";
        case EvalError::Kind::TypeMismatch: return "type-mismatch";
        case EvalError::Kind::UnknownFunction: return "unknown-function";
        case EvalError::Kind::BadArgument: return "bad-argument";
    }
    return "?";
}

namespace detail {

enum class Op { Eq, Ne, Lt, Le, Gt, Ge };

struct ExprNode {
    enum class Type { Literal, Path, Header, Exists, HasHeader, Count, Call, Compare, And, Or, Not };

    Type type;
    Scalar literal;
    BodyPath path;
    std::string name;
    Op op = Op::Eq;
    std::vector<ExprNode> children;
};

namespace {

struct Token {
    enum class Kind { End, Ident, Path, String, Number, Op, LParen, RParen, Comma };
    Kind kind = Kind::End;
    std::string text;
    std::size_t pos = 0;
};

bool is_path_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
           c == '/' || c == '[' || c == ']';
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.pos = pos_;
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (c == '(') { tok_ = {Token::Kind::LParen, "(", pos_++}; return; }
        if (c == ')') { tok_ = {Token::Kind::RParen, ")", pos_++}; return; }
        if (c == ',') { tok_ = {Token::Kind::Comma, ",", pos_++}; return; }
        if (c == '"' || c == '\'') { lex_string(c); return; }
        if (c == '/') { lex_path(); return; }
        if (c == '=' || c == '!' || c == '<' || c == '>') { lex_op(); return; }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') { lex_ident(); return; }
        throw ExprParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void lex_string(char quote) {
        std::size_t start = pos_++;
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != quote) {
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
            out += src_[pos_++];
        }
        if (pos_ >= src_.size()) throw ExprParseError("unterminated string literal", start);
        ++pos_;
        tok_ = {Token::Kind::String, std::move(out), start};
    }

    void lex_path() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_path_char(src_[pos_])) ++pos_;
        tok_ = {Token::Kind::Path, src_.substr(start, pos_ - start), start};
    }

    void lex_op() {
        std::size_t start = pos_;
        char c = src_[pos_++];
        std::string op(1, c);
        if (pos_ < src_.size() && src_[pos_] == '=') {
            op += '=';
            ++pos_;
        }
        if (op == "!") throw ExprParseError("lone '!' (use != or not)", start);
        if (op == "==") op = "=";
        tok_ = {Token::Kind::Op, std::move(op), start};
    }

    void lex_number() {
        std::size_t start = pos_;
        if (src_[pos_] == '-') ++pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            ++pos_;
        }
        tok_ = {Token::Kind::Number, src_.substr(start, pos_ - start), start};
    }

    void lex_ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_')) {
            ++pos_;
        }
        tok_ = {Token::Kind::Ident, src_.substr(start, pos_ - start), start};
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ExprNode parse() {
        ExprNode e = parse_or();
        if (lex_.peek().kind != Token::Kind::End)
            throw ExprParseError("trailing input after expression", lex_.peek().pos);
        return e;
    }

private:
    ExprNode parse_or() {
        ExprNode left = parse_and();
        while (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "or") {
            lex_.take();
            ExprNode node;
            node.type = ExprNode::Type::Or;
            node.children.push_back(std::move(left));
            node.children.push_back(parse_and());
            left = std::move(node);
        }
        return left;
    }

    ExprNode parse_and() {
        ExprNode left = parse_unary();
        while (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "and") {
            lex_.take();
            ExprNode node;
            node.type = ExprNode::Type::And;
            node.children.push_back(std::move(left));
            node.children.push_back(parse_unary());
            left = std::move(node);
        }
        return left;
    }

    ExprNode parse_unary() {
        if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "not") {
            lex_.take();
            ExprNode node;
            node.type = ExprNode::Type::Not;
            node.children.push_back(parse_unary());
            return node;
        }
        return parse_comparison();
    }

    ExprNode parse_comparison() {
        ExprNode left = parse_operand();
        if (lex_.peek().kind == Token::Kind::Op) {
            Token op = lex_.take();
            ExprNode node;
            node.type = ExprNode::Type::Compare;
            node.op = op_from(op);
            node.children.push_back(std::move(left));
            node.children.push_back(parse_operand());
            return node;
        }
        return left;
    }

    static Op op_from(const Token& tok) {
        if (tok.text == "=") return Op::Eq;
        if (tok.text == "!=") return Op::Ne;
        if (tok.text == "<") return Op::Lt;
        if (tok.text == "<=") return Op::Le;
        if (tok.text == ">") return Op::Gt;
        if (tok.text == ">=") return Op::Ge;
        throw ExprParseError("unknown operator " + tok.text, tok.pos);
    }

    ExprNode parse_operand() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Token::Kind::LParen: {
                lex_.take();
                ExprNode inner = parse_or();
                expect(Token::Kind::RParen, ")");
                return inner;
            }
            case Token::Kind::Path: {
                Token tok = lex_.take();
                ExprNode node;
                node.type = ExprNode::Type::Path;
                node.path = parse_path_token(tok);
                return node;
            }
            case Token::Kind::String: {
                Token tok = lex_.take();
                ExprNode node;
                node.type = ExprNode::Type::Literal;
                node.literal = Scalar(tok.text);
                return node;
            }
            case Token::Kind::Number: {
                Token tok = lex_.take();
                ExprNode node;
                node.type = ExprNode::Type::Literal;
                node.literal = number_literal(tok);
                return node;
            }
            case Token::Kind::Ident:
                return parse_ident();
            default:
                throw ExprParseError("expected operand", t.pos);
        }
    }

    static Scalar number_literal(const Token& tok) {
        if (tok.text.find('.') != std::string::npos) {
            double v = 0;
            auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
            if (res.ec != std::errc{})
                throw ExprParseError("bad number " + tok.text, tok.pos);
            return Scalar(v);
        }
        std::int64_t v = 0;
        auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (res.ec != std::errc{})
            throw ExprParseError("bad number " + tok.text, tok.pos);
        return Scalar(v);
    }

    static BodyPath parse_path_token(const Token& tok) {
        try {
            return parse_body_path(tok.text);
        } catch (const std::exception& e) {
            throw ExprParseError(e.what(), tok.pos);
        }
    }

    ExprNode parse_ident() {
        Token name = lex_.take();
        if (name.text == "true" || name.text == "false") {
            ExprNode node;
            node.type = ExprNode::Type::Literal;
            node.literal = Scalar(name.text == "true");
            return node;
        }
        expect(Token::Kind::LParen, "(");
        ExprNode node;
        if (name.text == "header" || name.text == "has_header") {
            Token arg = lex_.take();
            if (arg.kind != Token::Kind::String)
                throw ExprParseError(name.text + "() expects a quoted header name", arg.pos);
            node.type = name.text == "header" ? ExprNode::Type::Header : ExprNode::Type::HasHeader;
            node.name = arg.text;
        } else if (name.text == "exists" || name.text == "count") {
            Token arg = lex_.take();
            if (arg.kind != Token::Kind::Path)
                throw ExprParseError(name.text + "() expects a body path", arg.pos);
            node.type = name.text == "exists" ? ExprNode::Type::Exists : ExprNode::Type::Count;
            node.path = parse_path_token(arg);
        } else {
            node.type = ExprNode::Type::Call;
            node.name = name.text;
            if (lex_.peek().kind != Token::Kind::RParen) {
                node.children.push_back(parse_or());
                while (lex_.peek().kind == Token::Kind::Comma) {
                    lex_.take();
                    node.children.push_back(parse_or());
                }
            }
        }
        expect(Token::Kind::RParen, ")");
        return node;
    }

    void expect(Token::Kind kind, const char* what) {
        Token t = lex_.take();
        if (t.kind != kind)
            throw ExprParseError(std::string("expected ") + what, t.pos);
    }

    Lexer lex_;
};

EvalResult eval_node(const ExprNode& node, const Message& msg, const FunctionRegistry* fns);

std::variant<bool, EvalError> eval_bool(const ExprNode& node, const Message& msg,
                                        const FunctionRegistry* fns) {
    EvalResult r = eval_node(node, msg, fns);
    if (!eval_ok(r)) return eval_error(r);
    const Scalar& v = eval_value(r);
    if (!v.is_bool())
        return EvalError{EvalError::Kind::TypeMismatch, "expected boolean, found " + v.to_text()};
    return v.as_bool();
}

EvalResult compare(Op op, const Scalar& lhs, const Scalar& rhs) {
    auto outcome = [&](int cmp) -> Scalar {
        switch (op) {
            case Op::Eq: return Scalar(cmp == 0);
            case Op::Ne: return Scalar(cmp != 0);
            case Op::Lt: return Scalar(cmp < 0);
            case Op::Le: return Scalar(cmp <= 0);
            case Op::Gt: return Scalar(cmp > 0);
            case Op::Ge: return Scalar(cmp >= 0);
        }
        return Scalar(false);
    };
    if (lhs.is_numeric() && rhs.is_numeric()) {
        if (lhs.is_int() && rhs.is_int()) {
            auto a = lhs.as_int(), b = rhs.as_int();
            return outcome(a < b ? -1 : a > b ? 1 : 0);
        }
        double a = lhs.numeric(), b = rhs.numeric();
        return outcome(a < b ? -1 : a > b ? 1 : 0);
    }
    if (lhs.is_string() && rhs.is_string())
        return outcome(lhs.as_string().compare(rhs.as_string()));
    if (lhs.is_bool() && rhs.is_bool()) {
        if (op != Op::Eq && op != Op::Ne)
            return EvalError{EvalError::Kind::TypeMismatch, "booleans only support = and !="};
        return outcome(lhs.as_bool() == rhs.as_bool() ? 0 : 1);
    }
    return EvalError{EvalError::Kind::TypeMismatch,
                     "cannot compare " + std::string(to_string(lhs.kind())) + " with " +
                         to_string(rhs.kind())};
}

EvalResult eval_node(const ExprNode& node, const Message& msg, const FunctionRegistry* fns) {
    switch (node.type) {
        case ExprNode::Type::Literal:
            return node.literal;
        case ExprNode::Type::Path: {
            const BodyNode* found = msg.body.find(node.path);
            if (!found)
                return EvalError{EvalError::Kind::MissingPath, body_path_to_string(node.path)};
            if (!found->is_leaf())
                return EvalError{EvalError::Kind::TypeMismatch,
                                 body_path_to_string(node.path) + " is not a scalar"};
            return *found->value;
        }
        case ExprNode::Type::Header: {
            const std::string* v = msg.headers.get(node.name);
            if (!v) return EvalError{EvalError::Kind::MissingHeader, node.name};
            return Scalar(*v);
        }
        case ExprNode::Type::HasHeader:
            return Scalar(msg.headers.contains(node.name));
        case ExprNode::Type::Exists:
            return Scalar(msg.body.find(node.path) != nullptr);
        case ExprNode::Type::Count: {
            BodyPath parent(node.path.begin(), node.path.end() - 1);
            return Scalar(static_cast<std::int64_t>(
                msg.body.count_at(parent, node.path.back().name)));
        }
        case ExprNode::Type::Call: {
            if (!fns)
                return EvalError{EvalError::Kind::UnknownFunction, node.name};
            const HostFunction* fn = fns->find(node.name);
            if (!fn) return EvalError{EvalError::Kind::UnknownFunction, node.name};
            std::vector<Scalar> args;
            args.reserve(node.children.size());
            for (const auto& child : node.children) {
                EvalResult r = eval_node(child, msg, fns);
                if (!eval_ok(r)) return r;
                args.push_back(eval_value(r));
            }
            return (*fn)(args, msg);
        }
        case ExprNode::Type::Compare: {
            EvalResult lhs = eval_node(node.children[0], msg, fns);
            if (!eval_ok(lhs)) return lhs;
            EvalResult rhs = eval_node(node.children[1], msg, fns);
            if (!eval_ok(rhs)) return rhs;
            return compare(node.op, eval_value(lhs), eval_value(rhs));
        }
        case ExprNode::Type::And: {
            auto lhs = eval_bool(node.children[0], msg, fns);
            if (std::holds_alternative<EvalError>(lhs)) return std::get<EvalError>(lhs);
            if (!std::get<bool>(lhs)) return Scalar(false);
            auto rhs = eval_bool(node.children[1], msg, fns);
            if (std::holds_alternative<EvalError>(rhs)) return std::get<EvalError>(rhs);
            return Scalar(std::get<bool>(rhs));
        }
        case ExprNode::Type::Or: {
            auto lhs = eval_bool(node.children[0], msg, fns);
            if (std::holds_alternative<EvalError>(lhs)) return std::get<EvalError>(lhs);
            if (std::get<bool>(lhs)) return Scalar(true);
            auto rhs = eval_bool(node.children[1], msg, fns);
            if (std::holds_alternative<EvalError>(rhs)) return std::get<EvalError>(rhs);
            return Scalar(std::get<bool>(rhs));
        }
        case ExprNode::Type::Not: {
            auto inner = eval_bool(node.children[0], msg, fns);
            if (std::holds_alternative<EvalError>(inner)) return std::get<EvalError>(inner);
            return Scalar(!std::get<bool>(inner));
        }
    }
    return EvalError{EvalError::Kind::BadArgument, "unreachable"};
}

} // namespace
} // namespace detail

EvalResult Expression::evaluate(const Message& msg, const FunctionRegistry* fns) const {
    if (!root_) return EvalError{EvalError::Kind::BadArgument, "empty expression"};
    return detail::eval_node(*root_, msg, fns);
}

std::variant<bool, EvalError> Expression::test(const Message& msg,
                                               const FunctionRegistry* fns) const {
    EvalResult r = evaluate(msg, fns);
    if (!eval_ok(r)) return eval_error(r);
    const Scalar& v = eval_value(r);
    if (!v.is_bool())
        return EvalError{EvalError::Kind::TypeMismatch,
                         "condition did not yield a boolean: " + v.to_text()};
    return v.as_bool();
}

Expression parse_expression(const std::string& text) {
    detail::Parser parser(text);
    Expression expr;
    expr.root_ = std::make_shared<detail::ExprNode>(parser.parse());
    expr.text_ = text;
    return expr;
}

bool expression_parses(const std::string& text, std::string* error) {
    try {
        parse_expression(text);
        return true;
    } catch (const ExprParseError& e) {
        if (error) *error = e.what();
        return false;
    }
}

} // namespace eipflow
