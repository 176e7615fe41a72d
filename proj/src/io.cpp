#include "asyncsynth/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace asyncsynth {

ParseError::ParseError(std::size_t line, const std::string& message)
    : PlantError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

enum class Section { None, Processes, Actions, Transitions, Advice };

struct AdviceLine {
    std::size_t line;
    std::string process, memory;
    std::vector<std::string> actions;
};

struct Document {
    bool controller = false;
    PlantBuilder builder;
    std::vector<AdviceLine> advice;
};

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

Document parse_document(std::string_view text) {
    Document doc;
    Section section = Section::None;
    bool header = false;
    std::map<std::string, std::set<std::string>> states;
    std::map<std::string, std::vector<std::string>> domains;  // sorted

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = tokenize(raw);
        if (tok.empty() || tok[0].rfind("//", 0) == 0) continue;
        auto fail = [&](const std::string& msg) { throw ParseError(lineno, msg); };

        if (!header) {
            if (tok.size() != 1 || (tok[0] != "plant" && tok[0] != "controller"))
                fail("expected 'plant' or 'controller'");
            doc.controller = tok[0] == "controller";
            header = true;
            continue;
        }
        if (tok.size() == 1) {
            Section next = tok[0] == "processes"     ? Section::Processes
                           : tok[0] == "actions"     ? Section::Actions
                           : tok[0] == "transitions" ? Section::Transitions
                           : tok[0] == "advice"      ? Section::Advice
                                                     : Section::None;
            if (next != Section::None) {
                if (next <= section) fail("section '" + tok[0] + "' out of order");
                if (next == Section::Advice && !doc.controller) fail("plants have no advice section");
                section = next;
                continue;
            }
        }

        switch (section) {
            case Section::None:
                throw ParseError(lineno, "expected a section header");
            case Section::Processes: {
                // process <name> initial <s> states <s>... final <s>...
                if (tok.size() < 6 || tok[0] != "process" || tok[2] != "initial" || tok[4] != "states")
                    fail("expected 'process <name> initial <state> states <state>... final <state>...'");
                auto fin = std::find(tok.begin() + 5, tok.end(), std::string("final"));
                if (fin == tok.end()) fail("missing 'final'");
                ProcessDecl decl{tok[1], {tok.begin() + 5, fin}, tok[3], {fin + 1, tok.end()}};
                if (states.count(decl.name)) fail("duplicate process '" + decl.name + "'");
                if (decl.states.empty()) fail("process '" + decl.name + "' has no states");
                std::set<std::string> known;
                for (const auto& s : decl.states)
                    if (!known.insert(s).second) fail("duplicate state '" + s + "'");
                if (!known.count(decl.initial)) fail("unknown initial state '" + decl.initial + "'");
                for (const auto& f : decl.finals)
                    if (!known.count(f)) fail("unknown final state '" + f + "'");
                states[decl.name] = std::move(known);
                doc.builder.add_process(std::move(decl));
                break;
            }
            case Section::Actions: {
                if (tok.size() < 3 || tok.size() > 5 || tok[0] != "action" ||
                    (tok[2] != "controllable" && tok[2] != "uncontrollable"))
                    fail("expected 'action <name> controllable|uncontrollable <process>...'");
                if (domains.count(tok[1])) fail("duplicate action '" + tok[1] + "'");
                std::vector<std::string> dom(tok.begin() + 3, tok.end());
                for (const auto& p : dom)
                    if (!states.count(p)) fail("unknown process '" + p + "'");
                std::sort(dom.begin(), dom.end());
                dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
                domains[tok[1]] = dom;
                doc.builder.add_action(tok[1], dom, tok[2] == "controllable");
                break;
            }
            case Section::Transitions: {
                auto colon = std::find(tok.begin(), tok.end(), std::string(":"));
                auto arrow = std::find(tok.begin(), tok.end(), std::string("->"));
                if (tok.size() < 4 || colon != tok.begin() + 1 || arrow == tok.end())
                    fail("expected '<action> : <source>... -> <target>...'");
                auto dom = domains.find(tok[0]);
                if (dom == domains.end()) fail("unknown action '" + tok[0] + "'");
                std::vector<std::string> src(colon + 1, arrow), dst(arrow + 1, tok.end());
                if (src.size() != dom->second.size() || dst.size() != dom->second.size())
                    fail("action '" + tok[0] + "' needs " + std::to_string(dom->second.size()) +
                         "-tuples");
                for (std::size_t i = 0; i < src.size(); ++i) {
                    const auto& known = states[dom->second[i]];
                    if (!known.count(src[i])) fail("unknown state '" + src[i] + "' of " + dom->second[i]);
                    if (!known.count(dst[i])) fail("unknown state '" + dst[i] + "' of " + dom->second[i]);
                }
                doc.builder.add_transition(tok[0], src, dst);
                break;
            }
            case Section::Advice: {
                if (tok.size() < 3 || tok[2] != ":") fail("expected '<process> <memory> : <action>...'");
                if (!states.count(tok[0])) fail("unknown process '" + tok[0] + "'");
                if (!states[tok[0]].count(tok[1])) fail("unknown memory state '" + tok[1] + "'");
                std::vector<std::string> acts(tok.begin() + 3, tok.end());
                for (const auto& a : acts) {
                    auto dom = domains.find(a);
                    if (dom == domains.end()) fail("unknown action '" + a + "'");
                    if (!std::binary_search(dom->second.begin(), dom->second.end(), tok[0]))
                        fail("action '" + a + "' does not involve " + tok[0]);
                }
                doc.advice.push_back({lineno, tok[0], tok[1], std::move(acts)});
                break;
            }
        }
    }
    if (!header) throw ParseError(lineno + 1, "empty document");
    return doc;
}

void write_automaton(std::ostringstream& out, const Plant& plant) {
    out << "processes\n";
    for (const auto& p : plant.processes()) {
        out << "  process " << p.name << " initial " << p.states[p.initial] << " states";
        for (const auto& s : p.states) out << ' ' << s;
        out << " final";
        for (LocalState s = 0; s < p.size(); ++s)
            if (p.is_final(s)) out << ' ' << p.states[s];
        out << '\n';
    }
    out << "actions\n";
    for (const auto& a : plant.actions()) {
        out << "  action " << a.name << (a.controllable ? " controllable" : " uncontrollable");
        for (ProcessIndex p : a.domain) out << ' ' << plant.process(p).name;
        out << '\n';
    }
    out << "transitions\n";
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const auto& dom = plant.action(a).domain;
        for (const auto& t : plant.transitions(a)) {
            out << "  " << plant.action(a).name << " :";
            for (std::size_t i = 0; i < dom.size(); ++i) out << ' ' << plant.process(dom[i]).states[t.source[i]];
            out << " ->";
            for (std::size_t i = 0; i < dom.size(); ++i) out << ' ' << plant.process(dom[i]).states[t.target[i]];
            out << '\n';
        }
    }
}

}  // namespace

Plant parse_plant(std::string_view text) {
    Document doc = parse_document(text);
    if (doc.controller) throw ParseError(1, "expected a plant document, found a controller");
    Plant plant = doc.builder.build();
    require_valid(plant);
    return plant;
}

std::string serialize_plant(const Plant& plant) {
    std::ostringstream out;
    out << "plant\n";
    write_automaton(out, plant);
    return out.str();
}

Controller parse_controller(std::string_view text, const Plant* plant) {
    Document doc = parse_document(text);
    if (!doc.controller) throw ParseError(1, "expected a controller document, found a plant");
    Controller c;
    c.automaton = doc.builder.build();
    std::vector<Violation> bad;
    for (auto& v : validate_plant(c.automaton))
        if (v.kind == Violation::Kind::Nondeterministic || v.kind == Violation::Kind::DomainTooLarge ||
            v.kind == Violation::Kind::EmptyDomain || v.kind == Violation::Kind::NoStates)
            bad.push_back(std::move(v));
    if (!bad.empty()) throw InvalidPlant(std::move(bad));
    c.advice.resize(c.automaton.process_count());
    for (ProcessIndex p = 0; p < c.automaton.process_count(); ++p)
        c.advice[p].resize(c.automaton.process(p).size());
    for (const auto& line : doc.advice) {
        ProcessIndex p = c.automaton.process_index(line.process);
        LocalState m = *c.automaton.process(p).find_state(line.memory);
        auto& set = c.advice[p][m];
        if (!set.empty()) throw ParseError(line.line, "advice for " + line.process + " " + line.memory + " given twice");
        for (const auto& a : line.actions) {
            ActionIndex ai = c.automaton.action_index(a);
            if (!c.automaton.action(ai).controllable)
                throw ParseError(line.line, "advice names uncontrollable action '" + a + "'");
            set.push_back(ai);
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    if (plant) check_alphabet(*plant, c);
    return c;
}

std::string serialize_controller(const Controller& controller) {
    const Plant& c = controller.automaton;
    std::ostringstream out;
    out << "controller\n";
    write_automaton(out, c);
    out << "advice\n";
    for (ProcessIndex p = 0; p < c.process_count(); ++p)
        for (LocalState m = 0; m < c.process(p).size(); ++m) {
            const auto& set = controller.advice[p][m];
            if (set.empty()) continue;
            out << "  " << c.process(p).name << ' ' << c.process(p).states[m] << " :";
            for (ActionIndex a : set) out << ' ' << c.action(a).name;
            out << '\n';
        }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PlantError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("error writing '" + path + "'");
}

// ---------------------------------------------------------------------- json

using nlohmann::json;

namespace {

json names(const Plant& plant, const std::vector<ActionIndex>& actions) {
    json out = json::array();
    for (ActionIndex a : actions) out.push_back(plant.action(a).name);
    return out;
}

json choice_json(const Plant& plant, const Choice& c) {
    switch (c.kind) {
        case Choice::Kind::Pass:
            return json{{"kind", "pass"}};
        case Choice::Kind::Control:
            return json{{"kind", "control"}, {"action", plant.action(c.action).name}};
        case Choice::Kind::Offer:
            return json{{"kind", "offer"}, {"actions", names(plant, c.offer)}};
    }
    return nullptr;
}

std::string q_state_kind(ReducedQState::Kind k) {
    switch (k) {
        case ReducedQState::Kind::Pair: return "pair";
        case ReducedQState::Kind::Planned: return "planned";
        case ReducedQState::Kind::Offered: return "offered";
    }
    return "";
}

}  // namespace

json stats_json(const ReductionStats& s) {
    return json{{"m_q", s.mq},         {"m_r", s.mr},           {"shared", s.shared},
                {"pairs", s.pairs},     {"planned", s.planned},  {"offered", s.offered},
                {"plans", s.plans},     {"q_states", s.q_states()}, {"bound", s.bound()},
                {"plan_bound", s.plan_bound()}};
}

json reduction_sidecar(const ReductionArtifact& art) {
    const Plant& orig = *art.original;
    const Process& r = orig.process(art.r);
    const Process& q = orig.process(art.q);
    json doc;
    doc["leaf"] = r.name;
    doc["parent"] = q.name;
    doc["stats"] = stats_json(art.stats);

    json plans = json::array();
    for (std::size_t i = 0; i < art.plans.size(); ++i) {
        const PlanEntry& e = art.plans[i];
        json outcomes = json::array();
        for (const auto& o : e.outcomes)
            outcomes.push_back(json{{"state", r.states[o.state]}, {"proposal", names(orig, o.proposal)}});
        json witnesses = json::object();
        for (const auto& [from, w] : e.witnesses) {
            json wj = json::object();
            for (const auto& [s, c] : w) wj[r.states[s]] = choice_json(orig, c);
            witnesses[r.states[from]] = wj;
        }
        plans.push_back(json{{"action", e.action},
                             {"final", e.is_final},
                             {"outcomes", outcomes},
                             {"witnesses", witnesses},
                             {"text", art.describe_plan(i)}});
    }
    doc["plans"] = plans;

    json actions = json::array();
    for (const auto& [name, na] : art.new_actions) {
        json a{{"name", name}};
        switch (na.kind) {
            case NewAction::Kind::ChooseT:
                a["kind"] = "choose_plan";
                a["plan"] = art.describe_plan(na.plan);
                break;
            case NewAction::Kind::ChooseB:
                a["kind"] = "choose_offer";
                a["offer"] = names(orig, na.b);
                break;
            case NewAction::Kind::Sync:
                a["kind"] = "sync";
                a["action"] = orig.action(na.a).name;
                a["leaf_state"] = r.states[na.tr];
                break;
        }
        actions.push_back(a);
    }
    doc["new_actions"] = actions;

    json qs = json::array();
    const Process& rq = art.reduced.process(art.reduced_q);
    for (LocalState x = 0; x < art.q_states.size(); ++x) {
        const ReducedQState& s = art.q_states[x];
        json j{{"name", rq.states[x]}, {"kind", q_state_kind(s.kind)}, {"parent_state", q.states[s.sq]}};
        if (s.kind == ReducedQState::Kind::Pair) j["leaf_state"] = r.states[s.sr];
        if (s.kind != ReducedQState::Kind::Pair) j["plan"] = art.plans[s.plan].action;
        if (s.kind == ReducedQState::Kind::Offered) j["offer"] = names(orig, s.b);
        qs.push_back(j);
    }
    doc["parent_states"] = qs;
    return doc;
}

json synthesis_report_json(const SynthesisReport& report, const Plant& plant) {
    json levels = json::array();
    for (const auto& l : report.levels)
        levels.push_back(json{{"leaf", l.leaf},
                              {"parent", l.parent},
                              {"stats", stats_json(l.stats)},
                              {"reduced_states", l.reduced_states},
                              {"seconds", l.seconds}});
    return json{{"processes", plant.process_count()},
                {"actions", plant.action_count()},
                {"states", plant.total_states()},
                {"winning", report.winning},
                {"interrupted", report.interrupted},
                {"verified", report.verified},
                {"levels", levels},
                {"roots", report.roots},
                {"final_states", report.final_states},
                {"controller_memory", report.controller_memory},
                {"seconds",
                 json{{"reduce", report.reduce_seconds},
                      {"solve", report.solve_seconds},
                      {"lift", report.lift_seconds},
                      {"total", report.total_seconds}}}};
}

json verdict_json(const Plant& plant, const Verdict& v) {
    json out{{"explored", v.explored}};
    switch (v.kind) {
        case Verdict::Kind::Winning:
            out["verdict"] = "winning";
            break;
        case Verdict::Kind::Deadlock:
            out["verdict"] = "deadlock";
            out["play"] = format_word(plant, v.play);
            out["culprit"] = plant.process(v.culprit).name;
            if (v.blocked_uncontrollable)
                out["blocked_uncontrollable"] = plant.action(*v.blocked_uncontrollable).name;
            break;
        case Verdict::Kind::Lasso:
            out["verdict"] = "lasso";
            out["stem"] = format_word(plant, v.play);
            out["cycle"] = format_word(plant, v.cycle);
            break;
    }
    return out;
}

}  // namespace asyncsynth
