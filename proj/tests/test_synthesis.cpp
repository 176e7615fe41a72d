#include <doctest.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/synthesis.hpp"
#include "asyncsynth/verify.hpp"
#include "oracles.hpp"

using namespace asyncsynth;

namespace {

// fig2 where process 2 can no longer take any d transition.
Plant fig2_without_d() {
    Plant fig2 = gen_fig2();
    PlantBuilder b;
    for (const auto& p : fig2.processes()) {
        std::vector<std::string> finals;
        for (LocalState s = 0; s < p.size(); ++s)
            if (p.is_final(s)) finals.push_back(p.states[s]);
        b.add_process(p.name, p.states, p.states[p.initial], finals);
    }
    for (ActionIndex a = 0; a < fig2.action_count(); ++a) {
        const Action& act = fig2.action(a);
        std::vector<std::string> dom;
        for (ProcessIndex p : act.domain) dom.push_back(fig2.process(p).name);
        b.add_action(act.name, dom, act.controllable);
        if (act.name[0] == 'd') continue;
        for (const auto& t : fig2.transitions(a)) {
            std::vector<std::string> src, tgt;
            for (std::size_t i = 0; i < dom.size(); ++i) {
                src.push_back(fig2.process(act.domain[i]).states[t.source[i]]);
                tgt.push_back(fig2.process(act.domain[i]).states[t.target[i]]);
            }
            b.add_transition(act.name, src, tgt);
        }
    }
    return b.build();
}

}  // namespace

TEST_CASE("fig2 synthesis") {
    Plant fig2 = gen_fig2();
    auto report = synthesize(fig2);
    CHECK(report.winning);
    CHECK(report.verified);
    REQUIRE(report.controller.has_value());
    CHECK(verify_controller(fig2, *report.controller).winning());
    CHECK(has_corollary_shape(fig2, *report.controller));
    REQUIRE(report.roots.size() == 1);
    CHECK(report.roots[0] == "2");
    CHECK(report.levels.size() == 2);
}

TEST_CASE("fig2 without d transitions loses") {
    Plant p = fig2_without_d();
    CHECK(validate_plant(p).empty());
    CHECK_FALSE(solve(p).winning);
    CHECK_FALSE(synthesize(p).winning);
    CHECK_FALSE(oracle_solve(p, 1).controller.has_value());
}

TEST_CASE("single-process plants") {
    CHECK(synthesize(gen_t1a()).winning);
    CHECK(synthesize(gen_t1b()).winning);
    auto c = synthesize(gen_t1c());
    CHECK_FALSE(c.winning);
    CHECK_FALSE(c.controller.has_value());
}

TEST_CASE("l2 lifting") {
    Plant l2 = gen_l2();
    auto art = reduce_leaf(l2, l2.process_index("r"), l2.process_index("q"));
    auto sol = solve_single_process(art.reduced);
    REQUIRE(sol.winning);
    std::vector<std::vector<std::vector<ActionIndex>>> advice(1);
    advice[0].resize(art.reduced.process(0).size());
    for (LocalState s = 0; s < advice[0].size(); ++s)
        if (sol.strategy[s]) advice[0][s] = {*sol.strategy[s]};
    Controller reduced = state_controller(art.reduced, advice);
    CHECK(verify_controller(art.reduced, reduced).winning());

    LiftResult lift = lift_controller(reduced, art);
    CHECK(verify_controller(l2, lift.controller).winning());
    auto plays = enumerate_maximal_plays(l2, lift.controller, 4);
    REQUIRE(plays.plays.size() == 1);
    CHECK(format_play(l2, plays.plays[0]) == "a m");

    // r proposes a first, then m.
    ProcessIndex r = l2.process_index("r");
    const Controller& c = lift.controller;
    LocalState m0 = c.automaton.process(r).initial;
    CHECK(c.advice[r][m0] == std::vector<ActionIndex>{l2.action_index("a")});
    LocalState m1 = (*c.automaton.step(l2.action_index("a"), {m0, kNoState}))[0];
    CHECK(c.advice[r][m1] == std::vector<ActionIndex>{l2.action_index("m")});

    ChiAnnotations ann = lifted_annotations(lift, art, reduced, parse_word(l2, "a m"));
    CHECK(format_word(art.reduced, translate_play_chi(art, parse_word(l2, "a m"), ann)) ==
          "ch_T#1 ch_B#1 env_a_tr#1");
}

TEST_CASE("compose with the identity controller") {
    Plant fig2 = gen_fig2();
    Plant prod = compose_product(fig2, identity_controller(fig2));
    CHECK(prod.process_count() == fig2.process_count());
    CHECK(prod.action_count() == fig2.action_count());
    CHECK(prod.total_states() == fig2.total_states());
    CHECK(prod.transition_count() == fig2.transition_count());

    Plant t1a = gen_t1a();
    Plant dead = compose_product(t1a, empty_controller(t1a));
    CHECK(enabled_actions(dead, dead.initial_state()).empty());
    CHECK_FALSE(dead.all_final(dead.initial_state()));
}

TEST_CASE("minimization keeps the verdict") {
    Plant fig2 = gen_fig2();
    SynthesisOptions raw;
    raw.minimize = false;
    auto big = synthesize(fig2, raw);
    REQUIRE(big.controller.has_value());
    Controller small = minimize_controller(fig2, *big.controller);
    CHECK(small.total_memory() <= big.controller->total_memory());
    CHECK(verify_controller(fig2, small).winning());
}

TEST_CASE("server-client") {
    Plant sc = gen_server_client(2);
    auto report = synthesize(sc);
    CHECK(report.winning);
    CHECK(report.verified);
    auto oracle_result = oracle_solve(gen_server_client(1), 2);
    CHECK(oracle_result.controller.has_value());
    CHECK(synthesize(gen_server_client(1)).winning);
}

TEST_CASE("every elimination order agrees on small plants") {
    auto corpus = random_corpus(3, 25, {4, 3, 6, 3});
    for (const Plant& plant : corpus) {
        auto orders = all_elimination_orders(plant);
        std::optional<bool> verdict;
        for (const auto& order : orders) {
            SynthesisOptions opt;
            opt.order = order;
            bool w = solve(plant, opt).winning;
            if (!verdict) verdict = w;
            CHECK(*verdict == w);
        }
    }
}

TEST_CASE("explicit order must eliminate leaves") {
    Plant fig2 = gen_fig2();
    SynthesisOptions opt;
    opt.order = std::vector<std::pair<std::string, std::string>>{{"2", "1"}};
    CHECK_THROWS(solve(fig2, opt));
}

TEST_CASE("state ceiling raises ResourceLimit") {
    SynthesisOptions opt;
    opt.state_limit = 10;
    CHECK_THROWS_AS(synthesize(gen_fig2(), opt), ResourceLimit);
}
