#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace eipflow {

enum class ScalarKind { String, Int, Decimal, Bool };

// Leaf value of a body tree. Decimal is IEEE double; canonical text uses
// shortest round-trip formatting so serialized forms are stable.
class Scalar {
public:
    Scalar() : value_(std::string{}) {}
    Scalar(std::string v) : value_(std::move(v)) {}
    Scalar(const char* v) : value_(std::string(v)) {}
    Scalar(std::int64_t v) : value_(v) {}
    Scalar(int v) : value_(static_cast<std::int64_t>(v)) {}
    Scalar(double v) : value_(v) {}
    Scalar(bool v) : value_(v) {}

    ScalarKind kind() const;

    bool is_string() const { return std::holds_alternative<std::string>(value_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(value_); }
    bool is_decimal() const { return std::holds_alternative<double>(value_); }
    bool is_bool() const { return std::holds_alternative<bool>(value_); }
    bool is_numeric() const { return is_int() || is_decimal(); }

    const std::string& as_string() const { return std::get<std::string>(value_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
    double as_decimal() const { return std::get<double>(value_); }
    bool as_bool() const { return std::get<bool>(value_); }

    // Numeric value regardless of int/decimal representation.
    double numeric() const;

    // Canonical text form, also used when sizing messages.
    std::string to_text() const;

    // Inverse of to_text given the kind.
    static Scalar from_text(ScalarKind kind, const std::string& text);

    bool operator==(const Scalar& other) const { return value_ == other.value_; }
    bool operator!=(const Scalar& other) const { return !(*this == other); }

private:
    std::variant<std::string, std::int64_t, double, bool> value_;
};

const char* to_string(ScalarKind kind);
bool scalar_kind_from_string(const std::string& text, ScalarKind& out);

} // namespace eipflow
