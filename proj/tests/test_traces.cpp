#include <doctest.h>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/traces.hpp"
#include "oracles.hpp"

using namespace asyncsynth;

namespace {

struct Fig2 {
    Plant plant = gen_fig2();
    std::vector<ActionIndex> w(std::string_view text) const { return parse_word(plant, text); }
    std::string fmt(const Play& u) const { return format_play(plant, u); }
};

}  // namespace

TEST_CASE("extension of the empty play") {
    Fig2 f;
    Play u = extend_play(f.plant, Play(f.plant), f.plant.action_index("a_1"));
    CHECK(f.fmt(u) == "a_1");
}

TEST_CASE("independent extensions commute") {
    Fig2 f;
    Play e(f.plant);
    Play x = extend_play(f.plant, extend_play(f.plant, e, f.plant.action_index("a_1")),
                         f.plant.action_index("b_0"));
    Play y = extend_play(f.plant, extend_play(f.plant, e, f.plant.action_index("b_0")),
                         f.plant.action_index("a_1"));
    CHECK(x == y);
    CHECK(x.word() == y.word());
}

TEST_CASE("dependent letter stays last") {
    Fig2 f;
    auto word = f.w("a_1 b_0 c_1_1");
    auto canon = canonical_word(f.plant, word);
    CHECK(format_word(f.plant, canon) == "a_1 b_0 c_1_1");
    // The closure oracle: c_1_1 never precedes a_1.
    for (const auto& v : oracle::commutation_closure(f.plant, word)) {
        auto pa = std::find(v.begin(), v.end(), f.plant.action_index("a_1"));
        auto pc = std::find(v.begin(), v.end(), f.plant.action_index("c_1_1"));
        CHECK(pa < pc);
        CHECK(plays_equivalent(f.plant, word, v));
    }
    CHECK(oracle::commutation_closure(f.plant, word).size() == 3);
}

TEST_CASE("views") {
    Fig2 f;
    ProcessIndex p1 = f.plant.process_index("1"), p2 = f.plant.process_index("2");
    CHECK(f.fmt(view_of(f.plant, play_of_word(f.plant, f.w("a_1 b_0")), p1)) == "a_1");
    CHECK(f.fmt(view_of(f.plant, play_of_word(f.plant, f.w("a_1 b_0 c_1_1")), p2)) == "a_1 c_1_1");
    CHECK(view_of(f.plant, Play(f.plant), p1).empty());
    CHECK(format_word(f.plant, oracle::causal_view(f.plant, f.w("a_1 b_0 c_1_1"), p2)) ==
          "a_1 c_1_1");
}

TEST_CASE("equivalence") {
    Fig2 f;
    CHECK(plays_equivalent(f.plant, f.w("a_1 b_0"), f.w("b_0 a_1")));
    CHECK_FALSE(plays_equivalent(f.plant, f.w("a_1 c_1_1"), f.w("c_1_1 a_1")));
    CHECK(plays_equivalent(f.plant, f.w("a_0 b_1 c_0_1"), f.w("a_0 b_1 c_0_1")));
    CHECK(independent(f.plant, f.plant.action_index("a_1"), f.plant.action_index("b_0")));
    CHECK_FALSE(independent(f.plant, f.plant.action_index("a_1"), f.plant.action_index("c_1_1")));
}

TEST_CASE("non-runs are rejected") {
    Fig2 f;
    CHECK_THROWS_AS(play_of_word(f.plant, f.w("c_1_1")), NotEnabled);
    CHECK_THROWS(parse_word(f.plant, "nope"));
}

TEST_CASE("play state and ordering") {
    Fig2 f;
    Play u = play_of_word(f.plant, f.w("b_0 a_1 c_1_0"));
    CHECK(*oracle::run_word(f.plant, u.word()) == u.state());
    CHECK(f.fmt(u) == "a_1 b_0 c_1_0");
    CHECK(u.count(f.plant.process_index("2")) == 1);
    Play v = play_of_word(f.plant, f.w("a_0"));
    CHECK((v < u || u < v));
}
