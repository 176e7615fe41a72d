#include <doctest.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/reduction.hpp"
#include "asyncsynth/traces.hpp"

using namespace asyncsynth;

namespace {

// q: q0 [-y-> q1] -m-> qf, r: r0 -a-> r1 -m-> rf.
Plant l2_with_y() {
    PlantBuilder b;
    b.add_process("q", {"q0", "q1", "qf"}, "q0", {"qf"});
    b.add_process("r", {"r0", "r1", "rf"}, "r0", {"rf"});
    b.add_action("a", {"r"}, true);
    b.add_action("y", {"q"}, true);
    b.add_action("m", {"q", "r"}, true);
    b.add_transition("a", {"r0"}, {"r1"});
    b.add_transition("y", {"q0"}, {"q1"});
    b.add_transition("m", {"q1", "r1"}, {"qf", "rf"});
    return b.build();
}

std::string run(const Plant& p, const std::vector<std::string>& acts) {
    GlobalState g = p.initial_state();
    for (const auto& a : acts) g = apply_action(p, g, p.action_index(a));
    return p.describe(g);
}

}  // namespace

TEST_CASE("match") {
    Plant l2 = gen_l2();
    ProcessIndex q = l2.process_index("q"), r = l2.process_index("r");
    ActionIndex m = l2.action_index("m"), a = l2.action_index("a");
    LocalState q0 = *l2.process(q).find_state("q0"), qf = *l2.process(q).find_state("qf");
    LocalState r1 = *l2.process(r).find_state("r1"), r0 = *l2.process(r).find_state("r0");
    CHECK(match(l2, q, r, {r1, {m}}, q0, {m}) == std::vector<ActionIndex>{m});
    CHECK(match(l2, q, r, {r1, {m}}, q0, {}).empty());
    CHECK(match(l2, q, r, {r1, {a}}, q0, {m}).empty());
    CHECK(match(l2, q, r, {r0, {m}}, q0, {m}).empty());
    CHECK(match(l2, q, r, {r1, {m}}, qf, {m}).empty());
}

TEST_CASE("l2 reduction") {
    Plant l2 = gen_l2();
    auto art = reduce_leaf(l2, l2.process_index("r"), l2.process_index("q"));
    const Plant& red = art.reduced;
    REQUIRE(red.process_count() == 1);
    CHECK(validate_plant(red).empty());
    CHECK(red.process(0).states[red.process(0).initial] == "<q0|r0>");
    CHECK(run(red, {"ch_T#1", "ch_B#1", "env_a_tr#1"}) == "q=<qf|rf>");
    CHECK(red.all_final(apply_action(
        red, apply_action(red, apply_action(red, red.initial_state(), red.action_index("ch_T#1")),
                          red.action_index("ch_B#1")),
        red.action_index("env_a_tr#1"))));
    CHECK_FALSE(red.action(red.action_index("env_a_tr#1")).controllable);

    CHECK(art.stats.pairs == 2);
    CHECK(art.stats.planned == 1);
    CHECK(art.stats.offered == 1);
    CHECK(art.stats.plans == 1);
    CHECK(static_cast<double>(art.stats.q_states()) <= art.stats.bound());

    const NewAction* na = art.new_action(red.action_index("env_a_tr#1"));
    REQUIRE(na != nullptr);
    CHECK(na->kind == NewAction::Kind::Sync);
    CHECK(l2.action(na->a).name == "m");
    CHECK(l2.process(art.r).states[na->tr] == "r1");
    CHECK_FALSE(art.original_action(red.action_index("ch_T#1")).has_value());
}

TEST_CASE("final initial pair has no plan choice") {
    PlantBuilder b;
    b.add_process("q", {"q0"}, "q0", {"q0"});
    b.add_process("r", {"r0"}, "r0", {"r0"});
    b.add_action("m", {"q", "r"}, true);
    Plant p = b.build();
    auto art = reduce_leaf(p, p.process_index("r"), p.process_index("q"));
    CHECK(enabled_actions(art.reduced, art.reduced.initial_state()).empty());
    CHECK(art.reduced.all_final(art.reduced.initial_state()));
}

TEST_CASE("leaf without plans makes the initial pair dead") {
    PlantBuilder b;
    b.add_process("q", {"q0", "qf"}, "q0", {"qf"});
    b.add_process("r", {"r0", "rf"}, "r0", {"rf"});
    b.add_action("u", {"r"}, false);
    b.add_action("m", {"q", "r"}, true);
    b.add_transition("u", {"r0"}, {"r0"});
    b.add_transition("m", {"q0", "r0"}, {"qf", "rf"});
    Plant p = b.build();
    auto art = reduce_leaf(p, p.process_index("r"), p.process_index("q"));
    GlobalState g = art.reduced.initial_state();
    CHECK(enabled_actions(art.reduced, g).empty());
    CHECK_FALSE(art.reduced.all_final(g));
    CHECK_FALSE(solve_single_process(art.reduced).winning);
}

TEST_CASE("reduce_leaf rejects non-leaves") {
    Plant fig2 = gen_fig2();
    CHECK_THROWS_AS(reduce_leaf(fig2, fig2.process_index("2"), fig2.process_index("1")), NotALeaf);
}

TEST_CASE("chi translation") {
    Plant l2 = gen_l2();
    auto art = reduce_leaf(l2, l2.process_index("r"), l2.process_index("q"));
    ChiAnnotations ann{{0}, {{l2.action_index("m")}}};
    CHECK(format_word(art.reduced, translate_play_chi(art, {}, ChiAnnotations{{0}, {}})) == "ch_T#1");
    CHECK(format_word(art.reduced, translate_play_chi(art, parse_word(l2, "a m"), ann)) ==
          "ch_T#1 ch_B#1 env_a_tr#1");

    Plant ly = l2_with_y();
    auto arty = reduce_leaf(ly, ly.process_index("r"), ly.process_index("q"));
    ChiAnnotations anny{{0}, {{ly.action_index("m")}}};
    auto chi = translate_play_chi(arty, parse_word(ly, "a y m"), anny);
    CHECK(format_word(arty.reduced, chi) == "ch_T#1 y ch_B#1 env_a_tr#1");
    GlobalState g = arty.reduced.initial_state();
    for (ActionIndex a : chi) g = apply_action(arty.reduced, g, a);
    CHECK(arty.reduced.all_final(g));
}

TEST_CASE("size bound holds on server-client reductions") {
    Plant sc = gen_server_client(2, 4);
    ProcessIndex server = sc.process_index("server");
    for (ProcessIndex p = 0; p < sc.process_count(); ++p) {
        if (p == server) continue;
        for (bool all_b : {false, true}) {
            ReductionOptions opt;
            opt.all_b = all_b;
            auto art = reduce_leaf(sc, p, server, opt);
            CHECK(static_cast<double>(art.stats.q_states()) <= art.stats.bound());
            CHECK(static_cast<double>(art.stats.plans) <= art.stats.plan_bound());
            CHECK(validate_plant(art.reduced).empty());
        }
    }
}
