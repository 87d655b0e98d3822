#pragma once

#include "eipflow/message.hpp"

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eipflow {

// Typed evaluation failure. Evaluation is total: every (expression, message)
// pair yields a value or one of these; the caller decides whether that means
// invalid-message routing.
struct EvalError {
    enum class Kind {
        MissingPath,
        MissingHeader,
        TypeMismatch,
        UnknownFunction,
        BadArgument,
    };

    Kind kind;
    std::string detail;
};

const char* to_string(EvalError::Kind kind);

using EvalResult = std::variant<Scalar, EvalError>;

inline bool eval_ok(const EvalResult& r) { return std::holds_alternative<Scalar>(r); }
inline const Scalar& eval_value(const EvalResult& r) { return std::get<Scalar>(r); }
inline const EvalError& eval_error(const EvalResult& r) { return std::get<EvalError>(r); }

// Host functions let the embedder extend the closed language; they must be
// deterministic and free of side effects.
using HostFunction =
    std::function<EvalResult(const std::vector<Scalar>& args, const Message& msg)>;

class FunctionRegistry {
public:
    void register_function(const std::string& name, HostFunction fn) { fns_[name] = std::move(fn); }
    const HostFunction* find(const std::string& name) const {
        auto it = fns_.find(name);
        return it == fns_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::string, HostFunction> fns_;
};

class ExprParseError : public std::runtime_error {
public:
    ExprParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {
struct ExprNode;
}

// Immutable parsed expression. Predicates and value expressions share one
// grammar: comparisons (=, !=, <, <=, >, >=) over body paths, header(...)
// lookups, literals and registered functions, combined with and/or/not, plus
// exists(path) and has_header(name) existence tests.
class Expression {
public:
    Expression() = default;

    const std::string& text() const { return text_; }
    bool empty() const { return root_ == nullptr; }

    EvalResult evaluate(const Message& msg, const FunctionRegistry* fns = nullptr) const;

    // Evaluates and requires a boolean result; a non-bool value is a
    // TypeMismatch error.
    std::variant<bool, EvalError> test(const Message& msg,
                                       const FunctionRegistry* fns = nullptr) const;

    friend Expression parse_expression(const std::string& text);

private:
    std::shared_ptr<const detail::ExprNode> root_;
    std::string text_;
};

// Throws ExprParseError on malformed input.
Expression parse_expression(const std::string& text);

// Non-throwing probe used by validation.
bool expression_parses(const std::string& text, std::string* error = nullptr);

} // namespace eipflow
