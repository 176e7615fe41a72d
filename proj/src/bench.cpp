#include "asyncsynth/bench.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace asyncsynth {

namespace {

struct Side {
    std::string process, source, target;
};

// Adds a binary transition, ordering the tuple like the sorted domain.
void add_sync(PlantBuilder& b, const std::string& action, Side x, Side y) {
    if (y.process < x.process) std::swap(x, y);
    b.add_transition(action, {x.source, y.source}, {x.target, y.target});
}

void add_local(PlantBuilder& b, const std::string& action, const std::string& source,
               const std::string& target) {
    b.add_transition(action, {source}, {target});
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Plant gen_fig2() {
    PlantBuilder b;
    std::vector<std::string> pairs = {"00", "01", "10", "11"};
    std::vector<std::string> mid = {"init"};
    mid.insert(mid.end(), pairs.begin(), pairs.end());
    mid.push_back("fin");
    mid.push_back("bad");
    b.add_process("1", {"init", "0", "1", "fin"}, "init", {"fin"});
    b.add_process("2", mid, "init", {"fin"});
    b.add_process("3", {"init", "0", "1", "fin"}, "init", {"fin"});
    for (int i = 0; i < 2; ++i) {
        std::string s = std::to_string(i);
        b.add_action("a_" + s, {"1"}, false);
        b.add_action("b_" + s, {"3"}, false);
        add_local(b, "a_" + s, "init", s);
        add_local(b, "b_" + s, "init", s);
    }
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            std::string ik = std::to_string(i) + std::to_string(k);
            std::string c = "c_" + std::to_string(i) + "_" + std::to_string(k);
            b.add_action(c, {"1", "2"}, true);
            b.add_transition(c, {std::to_string(i), "init"}, {"fin", ik});
        }
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
            std::string d = "d_" + std::to_string(j) + "_" + std::to_string(l);
            b.add_action(d, {"2", "3"}, true);
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) {
                    std::string ik = std::to_string(i) + std::to_string(k);
                    bool good = i == l || j == k;
                    b.add_transition(d, {ik, std::to_string(j)}, {good ? "fin" : "bad", "fin"});
                }
        }
    return b.build();
}

Plant gen_l2() {
    PlantBuilder b;
    b.add_process("q", {"q0", "qf"}, "q0", {"qf"});
    b.add_process("r", {"r0", "r1", "rf"}, "r0", {"rf"});
    b.add_action("a", {"r"}, true);
    b.add_action("m", {"q", "r"}, true);
    add_local(b, "a", "r0", "r1");
    b.add_transition("m", {"q0", "r1"}, {"qf", "rf"});
    return b.build();
}

Plant gen_t1a() {
    PlantBuilder b;
    b.add_process("p", {"s0", "s1"}, "s0", {"s1"});
    b.add_action("c", {"p"}, true);
    add_local(b, "c", "s0", "s1");
    return b.build();
}

Plant gen_t1b() {
    PlantBuilder b;
    b.add_process("p", {"s0", "s1"}, "s0", {"s1"});
    b.add_action("u", {"p"}, false);
    add_local(b, "u", "s0", "s1");
    return b.build();
}

Plant gen_t1c() {
    PlantBuilder b;
    b.add_process("p", {"s0", "s1", "s2"}, "s0", {"s1"});
    b.add_action("u", {"p"}, false);
    add_local(b, "u", "s0", "s2");
    return b.build();
}

Plant gen_server_client(std::size_t k, std::size_t client_states) {
    if (k == 0) throw std::invalid_argument("server-client needs at least one client");
    if (client_states < 3) throw std::invalid_argument("clients need at least 3 states");
    std::size_t inputs = client_states - 2;
    PlantBuilder b;
    std::vector<std::string> server;
    for (std::size_t j = 0; j <= k; ++j) server.push_back("n" + std::to_string(j));
    b.add_process("server", server, server.front(), {server.back()});
    for (std::size_t i = 0; i < k; ++i) {
        std::string c = "client" + std::to_string(i);
        std::vector<std::string> states = {"idle", "done"};
        for (std::size_t v = 0; v < inputs; ++v) states.push_back("got" + std::to_string(v));
        b.add_process(c, states, "idle", {"done"});
        for (std::size_t v = 0; v < inputs; ++v) {
            std::string in = "in_" + std::to_string(i) + "_" + std::to_string(v);
            std::string rep = "report_" + std::to_string(i) + "_" + std::to_string(v);
            b.add_action(in, {c}, false);
            add_local(b, in, "idle", "got" + std::to_string(v));
            b.add_action(rep, {c, "server"}, true);
            for (std::size_t j = 0; j < k; ++j)
                add_sync(b, rep, {c, "got" + std::to_string(v), "done"},
                         {"server", server[j], server[j + 1]});
        }
    }
    return b.build();
}

// ------------------------------------------------------------------ counters

std::vector<std::string> CounterAlphabet::letters(std::size_t i) const {
    std::size_t count = i == 1 ? base : 2;
    std::vector<std::string> out;
    for (std::size_t v = 0; v < count; ++v)
        out.push_back(std::string(1, static_cast<char>('a' + v)) + "_" + std::to_string(i));
    return out;
}

std::vector<std::string> CounterAlphabet::counter_letters() const {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= level; ++i) {
        auto l = letters(i);
        out.insert(out.end(), l.begin(), l.end());
        out.push_back(end_marker(i));
    }
    return out;
}

namespace {

// Level-1 generator. With a parent, Σ_1^# is shared with it.
void add_level1(PlantBuilder& b, const CounterAlphabet& alpha, const std::string& name,
                const std::string& prefix, const std::string* parent) {
    b.add_process(name, {"init", "mid", "sep", "fin"}, "init", {"fin"});
    std::vector<std::string> dom = {name};
    if (parent) dom.push_back(*parent);
    for (const auto& c : alpha.letters(1)) b.add_action(prefix + c, dom, true);
    b.add_action(prefix + alpha.end_marker(1), dom, true);
    b.add_action(prefix + alpha.top(1), {name}, true);
    add_local(b, prefix + alpha.top(1), "sep", "fin");
    if (parent) return;  // the parent adds the product transitions
    for (const auto& c : alpha.letters(1)) {
        add_local(b, c, "init", "mid");
        add_local(b, c, "sep", "mid");
    }
    add_local(b, alpha.end_marker(1), "mid", "sep");
}

// D^1: r1 and its new root r2, plus r2's actions with the verifier.
// The successor challenge on the unbarred side reports the letter the
// partner is expected to hold: every level-1 counter has a single letter,
// so the carry always applies and c becomes c+1 mod n.
void add_side(PlantBuilder& b, const CounterAlphabet& alpha, bool bar, const std::string& verifier) {
    const std::string prefix = bar ? "bar_" : "";
    const std::string r1 = bar ? "rbar1" : "r1";
    const std::string r2 = bar ? "rbar2" : "r2";
    auto L = alpha.letters(1);
    const std::size_t n = L.size();
    auto name = [&](const std::string& s) { return prefix + s; };

    add_level1(b, alpha, r1, prefix, &r2);

    std::vector<std::string> states = {"z0", "z1", "m0", "m1", "hash", "h", "fwd", "fwd_end", "loop",
                                       "fin"};
    for (const auto& c : L)
        for (const char* kind : {"e_", "w_", "d_", "ask_eq_", "ask_succ_", "fwd_"})
            states.push_back(kind + c);
    b.add_process(r2, states, "z0", {"fin"});

    for (const auto& x : alpha.letters(2)) {
        b.add_action(name(x), {r2}, true);
        add_local(b, name(x), "z0", "z1");
        add_local(b, name(x), "m0", "m1");
        add_local(b, name(x), "h", "m1");
    }
    b.add_action(name(alpha.end_marker(2)), {r2}, true);
    add_local(b, name(alpha.end_marker(2)), "hash", "h");
    std::vector<std::string> top_dom = {r2};
    if (bar) top_dom.push_back(verifier);
    b.add_action(name(alpha.top(2)), top_dom, true);
    if (!bar) {
        add_local(b, name(alpha.top(2)), "h", "fin");
        add_local(b, name(alpha.top(2)), "loop", "fin");
    }

    // Σ_1^# with r1. r1: init|sep -c-> mid, mid -#-> sep.
    std::vector<std::pair<std::string, std::string>> r1_letter = {{"init", "mid"}, {"sep", "mid"}};
    for (std::size_t v = 0; v < n; ++v) {
        const auto& c = L[v];
        std::vector<std::pair<std::string, std::string>> r2_moves = {
            {"m1", "e_" + c}, {"fwd", "fwd_" + c}, {"loop", "loop"}};
        if (v == 0) r2_moves.push_back({"z1", "e_" + c});
        for (const auto& [s1, t1] : r1_letter)
            for (const auto& [s2, t2] : r2_moves) add_sync(b, name(c), {r1, s1, t1}, {r2, s2, t2});
    }
    {
        std::vector<std::pair<std::string, std::string>> r2_moves = {{"fwd", "fwd_end"}, {"loop", "loop"}};
        for (const auto& c : L) r2_moves.push_back({"w_" + c, "d_" + c});
        for (const auto& [s2, t2] : r2_moves)
            add_sync(b, name(alpha.end_marker(1)), {r1, "mid", "sep"}, {r2, s2, t2});
    }

    // Environment choice after each letter.
    b.add_action(name("skip"), {r2}, false);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& c = L[v];
        add_local(b, name("skip"), "e_" + c, "w_" + c);
        b.add_action(name("down_" + c), {r2}, false);
        add_local(b, name("down_" + c), "e_" + c, "ask_eq_" + c);
        b.add_action(name("diag_" + c), {r2}, false);
        const auto& reported = bar ? c : L[(v + 1) % n];
        add_local(b, name("diag_" + c), "e_" + c, "ask_succ_" + reported);
    }
}

}  // namespace

Plant gen_counter_plant(std::size_t l, std::size_t n) {
    if (l == 0 || l > 2) throw UnsupportedLevel("counter plants exist for levels 1 and 2 only");
    if (n < 2 || n > 26) throw std::invalid_argument("counter base must be in [2, 26]");
    CounterAlphabet alpha{l, n};
    PlantBuilder b;
    if (l == 1) {
        add_level1(b, alpha, "r1", "", nullptr);
        return b.build();
    }

    const std::string V = "V2";
    add_side(b, alpha, false, V);
    add_side(b, alpha, true, V);
    auto L = alpha.letters(1);

    // Verifier states. neqtest is nt_<i><j>_<fr><fb>: letters seen from each
    // side after the challenge (capped at 1) and whether each side sent $.
    std::vector<std::string> vstates = {"eq", "succ", "loop", "rej", "fin"};
    for (const auto& c : L) {
        vstates.push_back("eq_" + c);
        vstates.push_back("succ_" + c);
    }
    auto nt = [](int i, int j, int fr, int fb) {
        return "nt_" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(fr) +
               std::to_string(fb);
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int fr = 0; fr < 2; ++fr)
                for (int fb = 0; fb < 2; ++fb)
                    if (!(fr && fb)) vstates.push_back(nt(i, j, fr, fb));
    b.add_process(V, vstates, "eq", {"fin"});
    b.add_action("top_V2", {V}, true);
    add_local(b, "top_V2", "eq", "fin");
    add_local(b, "top_V2", "loop", "fin");

    // Moves of r2 (resp. rbar2) for each action shared with V.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> root_moves;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> v_moves;
    std::map<std::string, std::string> owner;
    for (bool bar : {false, true}) {
        std::string p = bar ? "bar_" : "";
        std::string r2 = bar ? "rbar2" : "r2";
        auto& dollar = root_moves[p + "$_1"];
        owner[p + "$_1"] = r2;
        for (std::size_t v = 0; v < L.size(); ++v) {
            const auto& c = L[v];
            dollar.push_back({"d_" + c, v + 1 == L.size() ? "hash" : "m0"});
            root_moves[p + "down_" + c + "^0"].push_back({"ask_eq_" + c, "fwd"});
            root_moves[p + "diag_" + c + "^0"].push_back({"ask_succ_" + c, "fwd"});
            root_moves[p + c + "^0"].push_back({"fwd_" + c, "fwd"});
            owner[p + "down_" + c + "^0"] = owner[p + "diag_" + c + "^0"] = owner[p + c + "^0"] = r2;
        }
        dollar.push_back({"fwd_end", "loop"});
    }
    root_moves["bar_top_2"] = {{"h", "fin"}, {"loop", "fin"}};
    owner["bar_top_2"] = "rbar2";

    auto letters0 = [&](bool bar) {
        std::vector<std::string> out;
        for (const auto& c : L) out.push_back((bar ? "bar_" : "") + c + "^0");
        return out;
    };

    // Main states.
    v_moves["bar_$_1"].push_back({"eq", "succ"});
    v_moves["$_1"].push_back({"succ", "eq"});
    for (const auto& c : L) {
        v_moves["bar_down_" + c + "^0"].push_back({"eq", "eq_" + c});
        v_moves["bar_diag_" + c + "^0"].push_back({"eq", "loop"});
        v_moves["diag_" + c + "^0"].push_back({"succ", "succ_" + c});
        v_moves["down_" + c + "^0"].push_back({"succ", "loop"});
    }
    // Pending challenge: the other side's letter decides.
    for (const auto& c : L) {
        for (const auto& d : L) {
            v_moves["down_" + d + "^0"].push_back({"eq_" + c, d != c ? nt(0, 0, 0, 0) : "loop"});
            v_moves["diag_" + d + "^0"].push_back({"eq_" + c, "loop"});
            v_moves["bar_diag_" + d + "^0"].push_back({"succ_" + c, d != c ? nt(0, 0, 0, 0) : "loop"});
            v_moves["bar_down_" + d + "^0"].push_back({"succ_" + c, "loop"});
        }
        v_moves["$_1"].push_back({"eq_" + c, "loop"});
        v_moves["bar_$_1"].push_back({"succ_" + c, "loop"});
        for (const auto& a : letters0(false)) v_moves[a].push_back({"eq_" + c, "loop"});
        for (const auto& a : letters0(true)) v_moves[a].push_back({"succ_" + c, "loop"});
    }
    // neqtest: equal lengths reject.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int fr = 0; fr < 2; ++fr)
                for (int fb = 0; fb < 2; ++fb) {
                    if (fr && fb) continue;
                    std::string s = nt(i, j, fr, fb);
                    if (!fr) {
                        for (const auto& a : letters0(false)) v_moves[a].push_back({s, nt(1, j, 0, fb)});
                        v_moves["$_1"].push_back({s, fb ? (i != j ? "loop" : "rej") : nt(i, j, 1, 0)});
                    }
                    if (!fb) {
                        for (const auto& a : letters0(true)) v_moves[a].push_back({s, nt(i, 1, fr, 0)});
                        v_moves["bar_$_1"].push_back({s, fr ? (i != j ? "loop" : "rej") : nt(i, j, 0, 1)});
                    }
                }
    // The barred root's termination releases the verifier from a successor
    // challenge it can no longer complete.
    for (const auto& s : vstates) {
        if (s == "fin" || s == "rej") continue;
        bool release = s == "eq" || s == "succ" || s.rfind("succ_", 0) == 0;
        v_moves["bar_top_2"].push_back({s, release ? "loop" : s});
    }
    // loop accepts everything.
    for (const auto& entry : root_moves)
        if (entry.first != "bar_top_2") v_moves[entry.first].push_back({"loop", "loop"});

    for (const auto& [action, rmoves] : root_moves) {
        if (action != "bar_top_2") b.add_action(action, {owner[action], V}, true);
        const auto& vm = v_moves[action];
        for (const auto& [rs, rt] : rmoves)
            for (const auto& [vs, vt] : vm) add_sync(b, action, {owner[action], rs, rt}, {V, vs, vt});
    }
    return b.build();
}

std::vector<std::string> project_counter(const std::vector<std::string>& word, std::size_t l) {
    std::set<std::string> keep;
    for (std::size_t i = 1; i <= l; ++i) {
        keep.insert("#_" + std::to_string(i));
        for (char c = 'a'; c <= 'z'; ++c) keep.insert(std::string(1, c) + "_" + std::to_string(i));
    }
    std::vector<std::string> out;
    for (const auto& w : word)
        if (keep.count(w)) out.push_back(w);
    return out;
}

namespace {

struct CounterParser {
    const std::vector<std::string>& word;
    std::size_t n;
    std::size_t pos = 0;
    std::string error;

    // Digit of a level-i letter, or -1.
    int digit(std::size_t i) const {
        if (pos >= word.size()) return -1;
        const std::string& w = word[pos];
        std::string suffix = "_" + std::to_string(i);
        if (w.size() != 1 + suffix.size() || w.compare(1, std::string::npos, suffix) != 0) return -1;
        int d = w[0] - 'a';
        std::size_t limit = i == 1 ? n : 2;
        return d >= 0 && static_cast<std::size_t>(d) < limit ? d : -1;
    }

    bool end(std::size_t i) {
        if (pos < word.size() && word[pos] == "#_" + std::to_string(i)) {
            ++pos;
            return true;
        }
        error = "expected #_" + std::to_string(i) + " at position " + std::to_string(pos);
        return false;
    }

    // One counter of level i; returns its value.
    std::optional<std::uint64_t> counter(std::size_t i) {
        if (i == 1) {
            int d = digit(1);
            if (d < 0) {
                error = "expected a level-1 letter at position " + std::to_string(pos);
                return std::nullopt;
            }
            ++pos;
            if (!end(1)) return std::nullopt;
            return static_cast<std::uint64_t>(d);
        }
        // Level 2: k = n positions, each a bit then a 1-counter with value i.
        std::uint64_t value = 0;
        for (std::size_t k = 0; k < n; ++k) {
            int x = digit(2);
            if (x < 0) {
                error = "expected a level-2 letter at position " + std::to_string(pos);
                return std::nullopt;
            }
            ++pos;
            std::size_t at = pos;
            auto inner = counter(1);
            if (!inner) return std::nullopt;
            if (*inner != k) {
                error = "1-counter at position " + std::to_string(at) + " has value " +
                        std::to_string(*inner) + ", expected " + std::to_string(k);
                return std::nullopt;
            }
            value |= static_cast<std::uint64_t>(x) << k;
        }
        if (!end(2)) return std::nullopt;
        return value;
    }
};

}  // namespace

CounterCheck is_iterated_counter(const std::vector<std::string>& word, std::size_t l, std::size_t n) {
    CounterCheck out;
    if (l == 0 || l > 2) {
        out.error = "unsupported level";
        return out;
    }
    if (word.empty()) {
        out.error = "empty word";
        return out;
    }
    CounterParser parser{word, n, 0, {}};
    while (parser.pos < word.size()) {
        auto v = parser.counter(l);
        if (!v) {
            out.error = parser.error;
            out.values.clear();
            return out;
        }
        out.values.push_back(*v);
    }
    out.ok = true;
    return out;
}

// -------------------------------------------------------------------- corpus

Plant random_tree_plant(std::mt19937_64& rng, const CorpusLimits& limits) {
    for (;;) {
        std::size_t np = limits.min_processes +
                         below(rng, limits.max_processes - limits.min_processes + 1);
        PlantBuilder b;
        std::vector<std::size_t> sizes(np);
        std::vector<std::vector<char>> final(np);
        for (std::size_t p = 0; p < np; ++p) {
            sizes[p] = 2 + below(rng, limits.max_states - 1);
            final[p].assign(sizes[p], 0);
            // State 0 is initial and never final, so something must happen.
            std::size_t finals = 1 + below(rng, sizes[p] - 1);
            for (std::size_t f = 0; f < finals; ++f) final[p][1 + below(rng, sizes[p] - 1)] = 1;
            std::vector<std::string> states, fin;
            for (std::size_t s = 0; s < sizes[p]; ++s) {
                states.push_back("s" + std::to_string(s));
                if (final[p][s]) fin.push_back(states.back());
            }
            b.add_process("p" + std::to_string(p), states, "s0", fin);
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t p = 1; p < np; ++p) edges.push_back({below(rng, p), p});
        if (edges.size() > limits.max_actions) continue;

        auto pname = [](std::size_t p) { return "p" + std::to_string(p); };
        auto sname = [](std::size_t s) { return "s" + std::to_string(s); };
        auto random_final = [&](std::size_t p) {
            for (;;) {
                std::size_t f = below(rng, sizes[p]);
                if (final[p][f]) return f;
            }
        };

        // Every tree edge gets one shared action, the rest are drawn at random.
        struct Act {
            std::vector<std::size_t> dom;
            std::set<std::pair<std::size_t, std::size_t>> defined;
        };
        std::vector<Act> acts;
        std::size_t na = std::max<std::size_t>(edges.size(), 1) +
                         below(rng, limits.max_actions - std::max<std::size_t>(edges.size(), 1) + 1);
        for (std::size_t a = 0; a < na; ++a) {
            std::string name = "a" + std::to_string(a);
            bool shared = !edges.empty() && (a < edges.size() || below(rng, 2) == 0);
            if (shared) {
                auto [x, y] = a < edges.size() ? edges[a] : edges[below(rng, edges.size())];
                b.add_action(name, {pname(x), pname(y)}, true);
                acts.push_back({{x, y}, {}});
                for (std::size_t s = 0; s < sizes[x]; ++s)
                    for (std::size_t t = 0; t < sizes[y]; ++t) {
                        if (final[x][s] || final[y][t] || below(rng, 3) != 0) continue;
                        add_sync(b, name, {pname(x), sname(s), sname(below(rng, sizes[x]))},
                                 {pname(y), sname(t), sname(below(rng, sizes[y]))});
                        acts.back().defined.insert({s, t});
                    }
            } else {
                std::size_t p = below(rng, np);
                bool controllable = below(rng, 3) != 0;
                b.add_action(name, {pname(p)}, controllable);
                acts.push_back({{p}, {}});
                for (std::size_t s = 0; s < sizes[p]; ++s) {
                    if (final[p][s] || below(rng, 2) != 0) continue;
                    add_local(b, name, sname(s), sname(below(rng, sizes[p])));
                    acts.back().defined.insert({s, 0});
                }
            }
        }
        // A spine per process: one of its actions moves s0 straight to a
        // final state wherever that action is still undefined.
        for (std::size_t p = 0; p < np; ++p) {
            std::vector<std::size_t> mine;
            for (std::size_t a = 0; a < acts.size(); ++a)
                if (std::find(acts[a].dom.begin(), acts[a].dom.end(), p) != acts[a].dom.end())
                    mine.push_back(a);
            if (mine.empty() || below(rng, 4) == 0) continue;
            std::size_t a = mine[below(rng, mine.size())];
            std::string name = "a" + std::to_string(a);
            if (acts[a].dom.size() == 1) {
                if (acts[a].defined.insert({0, 0}).second)
                    add_local(b, name, sname(0), sname(random_final(p)));
                continue;
            }
            std::size_t x = acts[a].dom[0], y = acts[a].dom[1];
            std::size_t other = x == p ? y : x;
            for (std::size_t t = 0; t < sizes[other]; ++t) {
                if (final[other][t]) continue;
                auto key = x == p ? std::pair<std::size_t, std::size_t>{0, t}
                                  : std::pair<std::size_t, std::size_t>{t, 0};
                if (!acts[a].defined.insert(key).second) continue;
                std::size_t t2 = below(rng, 2) == 0 ? random_final(other) : below(rng, sizes[other]);
                add_sync(b, name, {pname(p), sname(0), sname(random_final(p))},
                         {pname(other), sname(t), sname(t2)});
            }
        }
        Plant plant = b.build();
        if (plant.transition_count() > 0 && validate_plant(plant).empty()) return plant;
    }
}

std::vector<Plant> random_corpus(std::uint64_t seed, std::size_t count, const CorpusLimits& limits) {
    std::mt19937_64 rng(seed);
    std::vector<Plant> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_tree_plant(rng, limits));
    return out;
}

}  // namespace asyncsynth
