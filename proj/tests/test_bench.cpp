#include <doctest.h>

#include <sstream>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/synthesis.hpp"

using namespace asyncsynth;

namespace {

std::vector<std::string> split(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

TEST_CASE("counter checker examples") {
    auto a = is_iterated_counter(split("a_1 #_1"), 1, 2);
    CHECK(a.ok);
    CHECK(a.values == std::vector<std::uint64_t>{0});
    auto b = is_iterated_counter(split("b_1 #_1"), 1, 2);
    CHECK(b.ok);
    CHECK(b.values == std::vector<std::uint64_t>{1});
    auto two = is_iterated_counter(split("a_2 a_1 #_1 b_2 b_1 #_1 #_2"), 2, 2);
    CHECK(two.ok);
    CHECK(two.values == std::vector<std::uint64_t>{2});
}

TEST_CASE("counter checker rejections") {
    CHECK_FALSE(is_iterated_counter({}, 1, 2).ok);
    CHECK_FALSE(is_iterated_counter(split("a_1"), 1, 2).ok);
    CHECK_FALSE(is_iterated_counter(split("a_1 b_1 #_1"), 1, 2).ok);
    CHECK_FALSE(is_iterated_counter(split("#_1"), 1, 2).ok);
    // Positions must count up inside a 2-counter.
    CHECK_FALSE(is_iterated_counter(split("a_2 b_1 #_1 b_2 a_1 #_1 #_2"), 2, 2).ok);
    CHECK_FALSE(is_iterated_counter(split("a_2 a_1 #_1 #_2"), 2, 2).ok);
    auto seq = is_iterated_counter(split("a_1 #_1 b_1 #_1 c_1 #_1 a_1 #_1"), 1, 3);
    CHECK(seq.ok);
    CHECK(seq.values == std::vector<std::uint64_t>{0, 1, 2, 0});
}

TEST_CASE("projection keeps counter letters") {
    auto w = split("skip a_1 x #_1 top_1 a_2 #_2");
    CHECK(project_counter(w, 1) == split("a_1 #_1"));
    CHECK(project_counter(w, 2) == split("a_1 #_1 a_2 #_2"));
}

TEST_CASE("level-1 counter plant") {
    Plant c1 = gen_counter_plant(1, 2);
    CHECK(validate_plant(c1).empty());
    CHECK(c1.process_count() == 1);
    // n letters, #_1 and top_1
    CHECK(c1.action_count() == 2 + 1 + 1);
    CHECK(synthesize(c1).winning);
    CHECK(gen_counter_plant(1, 3).action_count() == 5);
    CHECK_THROWS_AS(gen_counter_plant(3, 2), UnsupportedLevel);
}

TEST_CASE("level-2 counter plant shape") {
    Plant c2 = gen_counter_plant(2, 2);
    CHECK(validate_plant(c2).empty());
    CHECK(c2.process_count() == 5);
    auto g = communication_graph(c2);
    CHECK(g.is_acyclic());
    CHECK(g.components().size() == 1);
    // Recorded deviation: this wiring has diameter 4.
    CHECK(g.diameter() == 4);
}

TEST_CASE("server-client template") {
    Plant sc = gen_server_client(2);
    CHECK(validate_plant(sc).empty());
    CHECK(sc.process_count() == 3);
    auto g = communication_graph(sc);
    CHECK(g.edges.size() == 2);
    CHECK_THROWS(gen_server_client(0));
}

TEST_CASE("named plants validate") {
    for (const Plant& p : {gen_fig2(), gen_l2(), gen_t1a(), gen_t1b(), gen_t1c()})
        CHECK(validate_plant(p).empty());
}

TEST_CASE("corpus is seeded and within limits") {
    CorpusLimits lim;
    auto a = random_corpus(42, 30, lim);
    auto b = random_corpus(42, 30, lim);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].process_count() == b[i].process_count());
        CHECK(a[i].transition_count() == b[i].transition_count());
        CHECK(a[i].process_count() <= lim.max_processes);
        CHECK(a[i].action_count() <= lim.max_actions);
        for (const auto& p : a[i].processes()) CHECK(p.size() <= lim.max_states);
        CHECK(validate_plant(a[i]).empty());
        CHECK(communication_graph(a[i]).is_acyclic());
    }
}
