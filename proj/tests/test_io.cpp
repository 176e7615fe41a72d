#include <doctest.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/io.hpp"
#include "asyncsynth/synthesis.hpp"

using namespace asyncsynth;

TEST_CASE("plant documents round-trip") {
    std::vector<Plant> plants{gen_fig2(), gen_l2(), gen_t1a(), gen_server_client(2),
                              gen_counter_plant(1, 3)};
    for (const Plant& p : random_corpus(9, 20, {})) plants.push_back(p);
    for (const Plant& p : plants) {
        std::string text = serialize_plant(p);
        Plant back = parse_plant(text);
        CHECK(serialize_plant(back) == text);
        CHECK(back.total_states() == p.total_states());
        CHECK(back.transition_count() == p.transition_count());
    }
}

TEST_CASE("controller documents round-trip") {
    Plant fig2 = gen_fig2();
    auto report = synthesize(fig2);
    REQUIRE(report.controller.has_value());
    std::string text = serialize_controller(*report.controller);
    Controller back = parse_controller(text, &fig2);
    CHECK(serialize_controller(back) == text);
    CHECK(verify_controller(fig2, back).winning());
    Plant l2 = gen_l2();
    CHECK_THROWS_AS(parse_controller(text, &l2), AlphabetMismatch);
}

TEST_CASE("comments and blank lines are ignored") {
    std::string text =
        "// expect: winning\n"
        "plant\n"
        "\n"
        "processes\n"
        "  process p initial s0 states s0 s1 final s1\n"
        "actions\n"
        "  action c controllable p\n"
        "transitions\n"
        "  // the only move\n"
        "  c : s0 -> s1\n";
    Plant p = parse_plant(text);
    CHECK(p.action_count() == 1);
    CHECK(solve(p).winning);
}

TEST_CASE("errors carry line numbers") {
    std::string bad_state =
        "plant\n"
        "processes\n"
        "  process p initial s0 states s0 final s1\n";
    try {
        parse_plant(bad_state);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    }

    std::string bad_arity =
        "plant\n"
        "processes\n"
        "  process p initial s0 states s0 s1 final s1\n"
        "actions\n"
        "  action c controllable p\n"
        "transitions\n"
        "  c : s0 s0 -> s1\n";
    CHECK_THROWS_AS(parse_plant(bad_arity), ParseError);
    CHECK_THROWS_AS(parse_plant("controller\n"), ParseError);
    CHECK_THROWS_AS(parse_plant("plant\nactions\n  action c controllable p\n"), ParseError);
}

TEST_CASE("invalid plants are reported as such") {
    std::string text =
        "plant\n"
        "processes\n"
        "  process p initial s0 states s0 s1 final s1\n"
        "actions\n"
        "  action c controllable p\n"
        "transitions\n"
        "  c : s1 -> s0\n";
    CHECK_THROWS_AS(parse_plant(text), InvalidPlant);
}

TEST_CASE("json documents") {
    Plant l2 = gen_l2();
    auto art = reduce_leaf(l2, l2.process_index("r"), l2.process_index("q"));
    auto side = reduction_sidecar(art);
    CHECK(side["leaf"] == "r");
    CHECK(side["parent"] == "q");
    CHECK(side["stats"]["q_states"] == 4);
    CHECK(side["plans"].size() == 1);
    CHECK(side["parent_states"].size() == 4);

    auto report = synthesize(gen_fig2());
    auto js = synthesis_report_json(report, gen_fig2());
    CHECK(js["winning"] == true);
    CHECK(js["levels"].size() == 2);

    Verdict v = verify_controller(gen_t1c(), empty_controller(gen_t1c()));
    auto vj = verdict_json(gen_t1c(), v);
    CHECK(vj["verdict"] == "deadlock");
}
