#include "eipflow/ids.hpp"
#include "eipflow/json_io.hpp"
#include "eipflow/message.hpp"
#include "eipflow/validate.hpp"

#include "support/builders.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace eipflow;
using namespace eipflow::testing;

TEST_CASE("body paths address repeated children with 1-based indices") {
    BodyTree body = order_body({{"a", 1}, {"b", 2}}, 99.5);

    CHECK(body.find("/order/customer")->value->as_string() == "acme");
    CHECK(body.find("/order/item[1]/sku")->value->as_string() == "a");
    CHECK(body.find("/order/item[2]/sku")->value->as_string() == "b");
    CHECK(body.find("/order/item[3]") == nullptr);
    CHECK(body.find("/order/total")->value->as_decimal() == doctest::Approx(99.5));

    CHECK(body.count_at(parse_body_path("/order"), "item") == 2);

    CHECK_THROWS_AS(parse_body_path("order"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body_path("/order//x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_body_path("/order/item[0]"), std::invalid_argument);
    CHECK(body_path_to_string(parse_body_path("/a/b[2]")) == "/a/b[2]");
}

TEST_CASE("body projection keeps only selected sub-trees") {
    BodyTree body = order_body({{"a", 1}, {"b", 2}}, 42.0);

    BodyTree only_total = project_body(body, {parse_body_path("/order/total")});
    REQUIRE(only_total.roots.size() == 1);
    CHECK(only_total.roots[0].children.size() == 1);
    CHECK(only_total.find("/order/total") != nullptr);
    CHECK(only_total.find("/order/customer") == nullptr);

    BodyTree second_item = project_body(body, {parse_body_path("/order/item[2]")});
    CHECK(second_item.find("/order/item[1]/sku")->value->as_string() == "b");

    BodyTree everything = project_body(body, {parse_body_path("/order")});
    CHECK(everything == body);

    BodyTree nothing = project_body(body, {parse_body_path("/nosuch")});
    CHECK(nothing.empty());
}

TEST_CASE("header map preserves insertion order and key uniqueness") {
    HeaderMap h;
    h.set("b", "1");
    h.set("a", "2");
    h.set("b", "3");
    REQUIRE(h.size() == 2);
    CHECK(h.begin()->first == "b");
    CHECK(*h.get("b") == "3");
    h.erase("b");
    CHECK(!h.contains("b"));
}

TEST_CASE("item definition schema check reports kind and path problems") {
    ItemDefinition item;
    item.name = "order";
    item.schema = {{"/order/total", ScalarKind::Decimal}, {"/order/customer", ScalarKind::String}};

    Message good = make_message("m1", order_body({{"a", 1}}, 10.0), "order");
    CHECK(check_against_item(good, item).empty());

    Message missing = make_message("m2", tree({interior("order", {leaf("customer", Scalar("x"))})}));
    auto problems = check_against_item(missing, item);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("/order/total") != std::string::npos);

    Message wrong_kind = make_message("m3", tree({interior("order", {leaf("total", Scalar("not a number")),
                                                                     leaf("customer", Scalar("x"))})}));
    CHECK(check_against_item(wrong_kind, item).size() == 1);
}

TEST_CASE("copy_with_new_id applies the lineage rule") {
    SeededIdGenerator ids(7);

    Message m1 = make_message("m1", order_body({{"a", 1}}, 5.0));
    m1.headers.set("type", "FSN");

    Message c1 = copy_with_new_id(m1, ids);
    CHECK(c1.id != "m1");
    CHECK(c1.correlation_id == "m1");
    CHECK(c1.body == m1.body);
    CHECK(c1.headers == m1.headers);

    Message with_corr = m1;
    with_corr.correlation_id = "c9";
    Message c2 = copy_with_new_id(with_corr, ids);
    CHECK(c2.correlation_id == "c9");

    Message c3 = copy_with_new_id(m1, ids);
    CHECK(c3.id != c1.id);
    CHECK(c3.correlation_id == "m1");
}

TEST_CASE("copy_with_new_id never repeats an id across a run") {
    SeededIdGenerator ids(42);
    Message base = make_message("seed-msg");
    std::set<std::string> seen{base.id};
    for (int i = 0; i < 100000; ++i) {
        Message c = copy_with_new_id(base, ids);
        CHECK(seen.insert(c.id).second);
    }
    CHECK(seen.size() == 100001);
}

TEST_CASE("validation accepts the minimal well-formed chain") {
    ProcessModel p = chain_process();
    CHECK(validate_graph(p).clean());
}

TEST_CASE("flow leaving an end event violates SF-DOMAIN") {
    ProcessModel p = chain_process();
    p.flows.push_back(make_flow("bad", "end", "work"));
    auto report = validate_graph(p);
    CHECK(report.has_rule("SF-DOMAIN"));
}

TEST_CASE("flow entering a start event violates SF-DOMAIN") {
    ProcessModel p = chain_process();
    p.flows.push_back(make_flow("bad", "work", "start"));
    CHECK(validate_graph(p).has_rule("SF-DOMAIN"));
}

TEST_CASE("XOR-DEFAULT over every 2-outflow gateway configuration") {
    // Brute-force oracle: each outflow is conditional or not and default or
    // not; the rule must fire exactly when two conditional flows exist and
    // the default count differs from one.
    for (int mask = 0; mask < 16; ++mask) {
        bool cond1 = mask & 1, def1 = mask & 2, cond2 = mask & 4, def2 = mask & 8;

        ProcessModel p;
        p.id = "gw-test";
        p.nodes.push_back(make_node("start", NodeKind::StartEvent, {{"message", kUntypedItem}}));
        p.nodes.push_back(make_node("gw", NodeKind::ExclusiveGateway));
        p.nodes.push_back(make_node("a", NodeKind::ServiceTask));
        p.nodes.push_back(make_node("b", NodeKind::ServiceTask));
        p.flows.push_back(make_flow("f0", "start", "gw"));
        p.flows.push_back(make_flow("f1", "gw", "a", cond1 ? "/order/total > 1" : "", def1));
        p.flows.push_back(make_flow("f2", "gw", "b", cond2 ? "/order/total > 2" : "", def2));

        int conditionals = (cond1 ? 1 : 0) + (cond2 ? 1 : 0);
        int defaults = (def1 ? 1 : 0) + (def2 ? 1 : 0);
        bool expect_xor_default = conditionals >= 2 && defaults != 1;

        auto report = validate_graph(p);
        CAPTURE(mask);
        CHECK(report.has_rule("XOR-DEFAULT") == expect_xor_default);
        bool expect_default_cond = (cond1 && def1) || (cond2 && def2);
        CHECK(report.has_rule("SF-DEFAULT-COND") == expect_default_cond);
    }
}

TEST_CASE("validation is idempotent and order-independent") {
    ProcessModel p = chain_process();
    p.nodes.push_back(make_node("gw", NodeKind::ExclusiveGateway));
    p.flows.push_back(make_flow("f3", "work", "gw"));
    p.flows.push_back(make_flow("f4", "gw", "end", "/x > 1"));
    p.flows.push_back(make_flow("f5", "gw", "end", "/x > 2"));
    p.flows.push_back(make_flow("f6", "end", "gw")); // SF-DOMAIN
    // gw has two conditional outflows and no default -> XOR-DEFAULT

    auto baseline = validate_graph(p);
    CHECK(!baseline.clean());
    CHECK(validate_graph(p).entries == baseline.entries);

    std::mt19937 rng(123);
    for (int round = 0; round < 20; ++round) {
        ProcessModel shuffled = p;
        std::shuffle(shuffled.nodes.begin(), shuffled.nodes.end(), rng);
        std::shuffle(shuffled.flows.begin(), shuffled.flows.end(), rng);
        CHECK(validate_graph(shuffled).entries == baseline.entries);
    }
}

TEST_CASE("data association endpoints and shape are checked") {
    ProcessModel p = chain_process();
    p.data_objects.push_back({"do1", kUntypedItem, false, {}});
    p.data_flow.push_back({"work", "do1"});
    CHECK(validate_graph(p).clean());

    p.data_flow.push_back({"work", "end"}); // no data object endpoint
    CHECK(validate_graph(p).has_rule("DA-SHAPE"));

    p.data_flow.push_back({"ghost", "do1"});
    CHECK(validate_graph(p).has_rule("DA-ENDPOINT"));

    p.data_objects.push_back({"do2", "no-such-item", false, {}});
    CHECK(validate_graph(p).has_rule("DO-ITEM"));
}

TEST_CASE("process without message entry violates START-REQUIRED") {
    ProcessModel p = chain_process();
    p.nodes[0].config.clear(); // plain start event
    CHECK(validate_graph(p).has_rule("START-REQUIRED"));

    // a receive task is an acceptable entry
    p.nodes.push_back(make_node("rx", NodeKind::ReceiveTask));
    p.flows.push_back(make_flow("f7", "rx", "work"));
    CHECK(!validate_graph(p).has_rule("START-REQUIRED"));
}

TEST_CASE("message json round trip is canonical") {
    Message m = make_message("m1", order_body({{"a", 2}, {"b", 3}}, 12.25), "order");
    m.headers.set("type", "FSN");
    m.headers.set("route", "bank");
    m.correlation_id = "c1";
    m.sequence_number = 4;

    Message back = message_from_json(message_to_json(m));
    CHECK(back == m);
    CHECK(canonical_message_bytes(back) == canonical_message_bytes(m));
    CHECK(message_size_bytes(m) ==
          canonical_body_bytes(m.body).size() + std::string("typeFSNroutebank").size());
}
