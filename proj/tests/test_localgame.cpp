#include <doctest.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/localgame.hpp"
#include "oracles.hpp"

using namespace asyncsynth;

namespace {

Plant single(std::vector<std::string> states, std::vector<std::string> finals,
             std::vector<std::tuple<std::string, bool, std::string, std::string>> edges) {
    PlantBuilder b;
    b.add_process("p", states, states[0], finals);
    for (const auto& [name, ctrl, src, tgt] : edges) {
        if (!b.has_action(name)) b.add_action(name, {"p"}, ctrl);
        b.add_transition(name, {src}, {tgt});
    }
    return b.build();
}

}  // namespace

TEST_CASE("single-process examples") {
    Plant t1a = gen_t1a();
    auto a = solve_single_process(t1a);
    CHECK(a.winning);
    REQUIRE(a.strategy[t1a.process(0).initial].has_value());
    CHECK(t1a.action(*a.strategy[t1a.process(0).initial]).name == "c");

    Plant t1b = gen_t1b();
    auto b = solve_single_process(t1b);
    CHECK(b.winning);
    CHECK_FALSE(b.strategy[t1b.process(0).initial].has_value());

    CHECK_FALSE(solve_single_process(gen_t1c()).winning);
    CHECK_THROWS_AS(solve_single_process(gen_fig2()), MultiProcess);
}

TEST_CASE("uncontrollable escape loses") {
    // s0 has a controllable step to the goal but also an uncontrollable step
    // into a non-final sink.
    Plant p = single({"s0", "s1", "s2"}, {"s1"}, {{"c", true, "s0", "s1"}, {"u", false, "s0", "s2"}});
    CHECK_FALSE(solve_single_process(p).winning);
    CHECK_FALSE(oracle::brute_single_process(p));
}

TEST_CASE("controllable cycle must be avoided") {
    Plant p = single({"s0", "s1", "s2"}, {"s2"},
                     {{"c", true, "s0", "s1"}, {"d", true, "s1", "s0"}, {"e", true, "s1", "s2"}});
    auto sol = solve_single_process(p);
    CHECK(sol.winning);
    CHECK(p.action(*sol.strategy[*p.process(0).find_state("s1")]).name == "e");
}

TEST_CASE("solver agrees with brute force on three-state plants") {
    std::size_t mismatches = 0;
    oracle::for_each_single_process(3, 2, [&](const Plant& p) {
        if (solve_single_process(p).winning != oracle::brute_single_process(p)) ++mismatches;
        return true;
    });
    CHECK(mismatches == 0);
}

TEST_CASE("l2 leaf witness outcomes") {
    Plant l2 = gen_l2();
    ProcessIndex q = l2.process_index("q"), r = l2.process_index("r");
    LocalArena arena = leaf_arena(l2, r, q);
    LocalState r0 = *l2.process(r).find_state("r0"), r1 = *l2.process(r).find_state("r1");
    ActionIndex a = l2.action_index("a"), m = l2.action_index("m");

    Witness w{{r0, Choice::control(a)}, {r1, Choice::offer_set({m})}};
    auto out = plan_witness_outcomes(arena, r0, w);
    REQUIRE(std::holds_alternative<std::vector<SyncOutcome>>(out));
    auto outcomes = std::get<std::vector<SyncOutcome>>(out);
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].state == r1);
    CHECK(outcomes[0].proposal == std::vector<ActionIndex>{m});

    auto plans = enumerate_admissible_plans(arena, r0);
    REQUIRE(plans.size() == 1);
    CHECK_FALSE(plans[0].is_final);
    CHECK(plans[0].outcomes == outcomes);
}

TEST_CASE("self-loop witness diverges") {
    Plant p = single({"s0", "s1"}, {"s1"}, {{"c", true, "s0", "s0"}, {"e", true, "s0", "s1"}});
    LocalArena arena = arena_of_process(p, 0);
    Witness w{{0, Choice::control(p.action_index("c"))}};
    CHECK(std::holds_alternative<Divergent>(plan_witness_outcomes(arena, 0, w)));
}

TEST_CASE("final initial state gives the final plan") {
    Plant p = single({"s0"}, {"s0"}, {});
    LocalArena arena = arena_of_process(p, 0);
    auto out = plan_witness_outcomes(arena, 0, {});
    REQUIRE(std::holds_alternative<std::vector<SyncOutcome>>(out));
    auto outcomes = std::get<std::vector<SyncOutcome>>(out);
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].proposal.empty());

    auto plans = enumerate_admissible_plans(arena, 0);
    REQUIRE(plans.size() == 1);
    CHECK(plans[0].is_final);
}

TEST_CASE("uncontrollable self-loop admits no plan") {
    Plant p = single({"s0", "s1"}, {"s1"}, {{"u", false, "s0", "s0"}});
    CHECK(enumerate_admissible_plans(arena_of_process(p, 0), 0).empty());
}

TEST_CASE("ill-formed witness is reported") {
    Plant l2 = gen_l2();
    ProcessIndex q = l2.process_index("q"), r = l2.process_index("r");
    LocalArena arena = leaf_arena(l2, r, q);
    // m is not controllable-local at r0.
    Witness w{{0, Choice::control(l2.action_index("m"))}};
    CHECK_THROWS_AS(plan_witness_outcomes(arena, 0, w), IllFormedWitness);
}
