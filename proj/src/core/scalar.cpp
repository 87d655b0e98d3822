#include "eipflow/scalar.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace eipflow {

ScalarKind Scalar::kind() const {
    if (is_string()) return ScalarKind::String;
    if (is_int()) return ScalarKind::Int;
    if (is_decimal()) return ScalarKind::Decimal;
    return ScalarKind::Bool;
}

double Scalar::numeric() const {
    if (is_int()) return static_cast<double>(as_int());
    return as_decimal();
}

std::string Scalar::to_text() const {
    switch (kind()) {
        case ScalarKind::String:
            return as_string();
        case ScalarKind::Int:
            return std::to_string(as_int());
        case ScalarKind::Bool:
            return as_bool() ? "true" : "false";
        case ScalarKind::Decimal: {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, as_decimal());
            return std::string(buf, res.ptr);
        }
    }
    return {};
}

Scalar Scalar::from_text(ScalarKind kind, const std::string& text) {
    switch (kind) {
        case ScalarKind::String:
            return Scalar(text);
        case ScalarKind::Bool:
            if (text == "true") return Scalar(true);
            if (text == "false") return Scalar(false);
            throw std::invalid_argument("not a boolean: " + text);
        case ScalarKind::Int: {
            std::int64_t v = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw std::invalid_argument("not an integer: " + text);
            return Scalar(v);
        }
        case ScalarKind::Decimal: {
            double v = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw std::invalid_argument("not a decimal: " + text);
            return Scalar(v);
        }
    }
    throw std::invalid_argument("unknown scalar kind");
}

const char* to_string(ScalarKind kind) {
    switch (kind) {
        case ScalarKind::String: return "string";
        case ScalarKind::Int: return "int";
        case ScalarKind::Decimal: return "decimal";
        case ScalarKind::Bool: return "bool";
    }
    return "?";
}

bool scalar_kind_from_string(const std::string& text, ScalarKind& out) {
    if (text == "string") { out = ScalarKind::String; return true; }
    if (text == "int") { out = ScalarKind::Int; return true; }
    if (text == "decimal") { out = ScalarKind::Decimal; return true; }
    if (text == "bool") { out = ScalarKind::Bool; return true; }
    return false;
}

} // namespace eipflow
