#include "eipflow/expression.hpp"

#include "support/builders.hpp"

#include <doctest.h>

#include <random>

using namespace eipflow;
using namespace eipflow::testing;

namespace {

Message fig1_inbound() {
    Message m = make_message("fsn-1", order_body({{"a", 1}}, 250.0), "FSN");
    m.headers.set("type", "FSN");
    return m;
}

bool must_test(const Expression& e, const Message& m) {
    auto r = e.test(m);
    REQUIRE(std::holds_alternative<bool>(r));
    return std::get<bool>(r);
}

// Independent existence oracle: walk the tree level by level counting
// repetitions instead of using BodyTree::find.
bool exists_oracle(const BodyTree& tree, const std::string& path_text) {
    BodyPath path = parse_body_path(path_text);
    const std::vector<BodyNode>* level = &tree.roots;
    for (std::size_t i = 0; i < path.size(); ++i) {
        int wanted = path[i].index;
        const BodyNode* hit = nullptr;
        int seen = 0;
        for (const auto& child : *level) {
            if (child.name == path[i].name && ++seen == wanted) {
                hit = &child;
                break;
            }
        }
        if (!hit) return false;
        level = &hit->children;
    }
    return true;
}

} // namespace

TEST_CASE("comparison on a body path") {
    Message m = fig1_inbound(); // total = 250
    CHECK(must_test(parse_expression("/order/total > 100"), m));
    CHECK(!must_test(parse_expression("/order/total > 300"), m));
    CHECK(must_test(parse_expression("/order/customer = \"acme\""), m));
}

TEST_CASE("header lookup matches the scenario inbound type") {
    Message m = fig1_inbound();
    CHECK(must_test(parse_expression("header(\"type\") = \"FSN\""), m));
    CHECK(!must_test(parse_expression("header(\"type\") = \"ISO\""), m));
}

TEST_CASE("exists on an absent repetition returns false") {
    Message m = make_message("m", order_body({{"x", 1}, {"y", 2}}, 1.0));
    Expression e = parse_expression("exists(/order/item[3])");
    CHECK(!must_test(e, m));
    CHECK(must_test(parse_expression("exists(/order/item[2])"), m));

    // DERIVED oracle: repetition-counting tree walk agrees on random paths
    std::vector<std::string> probes = {
        "/order", "/order/item[1]", "/order/item[2]", "/order/item[3]",
        "/order/item[1]/sku", "/order/total", "/order/missing", "/other",
    };
    for (const auto& p : probes) {
        CAPTURE(p);
        CHECK(must_test(parse_expression("exists(" + p + ")"), m) == exists_oracle(m.body, p));
    }
}

TEST_CASE("boolean connectives and not") {
    Message m = fig1_inbound();
    CHECK(must_test(parse_expression("/order/total > 100 and header(\"type\") = \"FSN\""), m));
    CHECK(must_test(parse_expression("/order/total > 300 or /order/total > 100"), m));
    CHECK(must_test(parse_expression("not (/order/total > 300)"), m));
    CHECK(must_test(parse_expression("has_header(\"type\") and not has_header(\"nope\")"), m));
}

TEST_CASE("count() counts sibling repetitions") {
    Message m = make_message("m", order_body({{"x", 1}, {"y", 2}, {"z", 3}}, 1.0));
    auto r = parse_expression("count(/order/item)").evaluate(m);
    REQUIRE(eval_ok(r));
    CHECK(eval_value(r).as_int() == 3);
    CHECK(must_test(parse_expression("count(/order/item) = 3"), m));
}

TEST_CASE("typed evaluation errors instead of failures") {
    Message m = fig1_inbound();

    auto missing = parse_expression("/order/nothing > 1").evaluate(m);
    REQUIRE(!eval_ok(missing));
    CHECK(eval_error(missing).kind == EvalError::Kind::MissingPath);

    auto mismatch = parse_expression("/order/customer > 10").evaluate(m);
    REQUIRE(!eval_ok(mismatch));
    CHECK(eval_error(mismatch).kind == EvalError::Kind::TypeMismatch);

    auto no_header = parse_expression("header(\"gone\") = \"x\"").evaluate(m);
    REQUIRE(!eval_ok(no_header));
    CHECK(eval_error(no_header).kind == EvalError::Kind::MissingHeader);

    auto unknown_fn = parse_expression("frobnicate(/order/total)").evaluate(m);
    REQUIRE(!eval_ok(unknown_fn));
    CHECK(eval_error(unknown_fn).kind == EvalError::Kind::UnknownFunction);

    auto non_bool = parse_expression("/order/total").test(m);
    REQUIRE(std::holds_alternative<EvalError>(non_bool));
    CHECK(std::get<EvalError>(non_bool).kind == EvalError::Kind::TypeMismatch);
}

TEST_CASE("registered host functions are callable") {
    FunctionRegistry fns;
    fns.register_function("double_of", [](const std::vector<Scalar>& args, const Message&) -> EvalResult {
        if (args.size() != 1 || !args[0].is_numeric())
            return EvalError{EvalError::Kind::BadArgument, "double_of(number)"};
        return Scalar(args[0].numeric() * 2);
    });

    Message m = fig1_inbound();
    auto r = parse_expression("double_of(/order/total) > 400").test(m, &fns);
    REQUIRE(std::holds_alternative<bool>(r));
    CHECK(std::get<bool>(r));
}

TEST_CASE("evaluation is deterministic and does not mutate the message") {
    std::mt19937 rng(99);
    std::vector<std::string> exprs = {
        "/order/total > 100",
        "header(\"type\") = \"FSN\" and /order/total <= 250",
        "exists(/order/item[2]) or not exists(/order/item[9])",
        "count(/order/item) >= 1",
        "/order/customer != \"nobody\"",
    };
    for (int i = 0; i < 50; ++i) {
        Message m = fig1_inbound();
        m.body.find("/order/total")->value = Scalar(double(rng() % 1000));
        Message before = m;
        const std::string& text = exprs[rng() % exprs.size()];
        Expression e = parse_expression(text);
        auto first = e.evaluate(m);
        auto second = e.evaluate(m);
        CHECK(m == before);
        REQUIRE(eval_ok(first) == eval_ok(second));
        if (eval_ok(first)) CHECK(eval_value(first) == eval_value(second));
    }
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_expression("/a >"), ExprParseError);
    CHECK_THROWS_AS(parse_expression("and /a"), ExprParseError);
    CHECK_THROWS_AS(parse_expression("header(type)"), ExprParseError);
    CHECK_THROWS_AS(parse_expression("/a > 1 extra"), ExprParseError);
    CHECK_THROWS_AS(parse_expression(""), ExprParseError);
    CHECK(expression_parses("/a > 1"));
    std::string why;
    CHECK(!expression_parses("/a >", &why));
    CHECK(!why.empty());
}

TEST_CASE("integer and decimal comparisons interoperate") {
    Message m = make_message("m", tree({interior("n", {leaf("i", Scalar(std::int64_t(3))),
                                                       leaf("d", Scalar(3.5))})}));
    CHECK(must_test(parse_expression("/n/i < /n/d"), m));
    CHECK(must_test(parse_expression("/n/i = 3"), m));
    CHECK(must_test(parse_expression("/n/d = 3.5"), m));
    CHECK(must_test(parse_expression("/n/i != /n/d"), m));
}
