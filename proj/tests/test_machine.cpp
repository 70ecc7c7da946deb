#include <doctest.h>

#include <random>
#include <unordered_map>

#include "cantordyn/errors.hpp"
#include "cantordyn/machine.hpp"
#include "helpers.hpp"

using namespace cantordyn;
using namespace testing_support;

namespace {

TuringMachine tiny(const std::vector<MachineDef::Rule>& rules,
                   std::vector<std::string> states = {"q0", "q1", "qh"}) {
    MachineDef def;
    def.states = std::move(states);
    def.alphabet = {"0", "1"};
    def.blank = "0";
    def.initial = "q0";
    def.halting = "qh";
    def.rules = rules;
    return TuringMachine::build(def);
}

}  // namespace

TEST_CASE("build rejects malformed tables") {
    MachineDef def;
    def.states = {"q0", "qh"};
    def.alphabet = {"0", "1"};
    def.blank = "0";
    def.initial = "q0";
    def.halting = "qh";
    def.rules = {{"q0", "0", "qh", "0", 0}, {"q0", "1", "qh", "1", 0}};
    CHECK_NOTHROW(TuringMachine::build(def));

    auto bad = def;
    bad.rules[0].to = "nowhere";
    CHECK_THROWS_AS(TuringMachine::build(bad), ValidationError);

    bad = def;
    bad.rules.pop_back();
    CHECK_THROWS_AS(TuringMachine::build(bad), ValidationError);  // not total

    bad = def;
    bad.rules.push_back({"q0", "1", "qh", "0", 0});
    CHECK_THROWS_AS(TuringMachine::build(bad), ValidationError);  // duplicate

    bad = def;
    bad.halting = "q0";
    CHECK_THROWS_AS(TuringMachine::build(bad), ValidationError);

    bad = def;
    bad.rules.push_back({"qh", "0", "q0", "0", 0});
    CHECK_THROWS_AS(TuringMachine::build(bad), ValidationError);  // rule from halting
}

TEST_CASE("step writes in place when the rule stays put") {
    auto m = tiny({{"q0", "0", "q1", "1", 0},
                   {"q0", "1", "q1", "1", 0},
                   {"q1", "0", "qh", "0", 0},
                   {"q1", "1", "qh", "1", 0}});
    Configuration c{m.initial(), m.blank_tape()};
    StepResult r = step(m, c);
    CHECK_FALSE(r.halted);
    CHECK(r.config.state == *m.find_state("q1"));
    CHECK(r.config.tape.at(0) == *m.find_symbol("1"));
    CHECK(r.config.tape.stored_size() == 1);
}

TEST_CASE("step at the halting state reports the tape unchanged") {
    auto m = tiny({{"q0", "0", "q1", "1", 0},
                   {"q0", "1", "q1", "1", 0},
                   {"q1", "0", "qh", "0", 0},
                   {"q1", "1", "qh", "1", 0}});
    Tape t = m.blank_tape();
    t.set(2, 1);
    Configuration c{m.halting(), t};
    StepResult r = step(m, c);
    CHECK(r.halted);
    CHECK(r.config.tape == t);
}

TEST_CASE("left shifts leave the written trail at negative positions") {
    // One writing walker: after three steps the trail sits at -3..-1 and the
    // head is over blank.  Cross-checked against the naive simulator.
    auto m = tiny({{"q0", "0", "q0", "1", 1}, {"q0", "1", "q0", "1", 1}}, {"q0", "qh"});
    Configuration c{m.initial(), m.blank_tape()};
    for (int i = 0; i < 3; ++i) c = step(m, c).config;
    CHECK(c.tape.at(-3) == 1);
    CHECK(c.tape.at(-2) == 1);
    CHECK(c.tape.at(-1) == 1);
    CHECK(c.tape.at(0) == 0);
    NaiveResult n = naive_run(m, m.blank_tape(), 3);
    CHECK(naive_tape_equals(n, m, c.tape));
}

TEST_CASE("step is deterministic and errors on unknown states") {
    auto mf = load_corpus_machine("conditional_runner");
    Configuration c{mf.machine.initial(), parse_tape(mf.machine, "0101")};
    StepResult a = step(mf.machine, c);
    StepResult b = step(mf.machine, c);
    CHECK(a.config == b.config);
    Configuration bad{99, mf.machine.blank_tape()};
    CHECK_THROWS_AS(step(mf.machine, bad), UnknownStateError);

    Tape alien = mf.machine.blank_tape();
    alien.set(0, 9);  // not a symbol of this machine
    CHECK_THROWS_AS(step(mf.machine, Configuration{mf.machine.initial(), alien}),
                    MalformedTapeError);
}

TEST_CASE("run: immediate halter, budget exhaustion, incrementer") {
    auto halter = tiny({{"q0", "0", "qh", "0", 0}, {"q0", "1", "qh", "1", 0}}, {"q0", "qh"});
    RunResult r = run(halter, halter.blank_tape(), 10);
    CHECK(r.halted());
    CHECK(r.steps == 1);
    CHECK(r.output.blank());

    auto walker = load_corpus_machine("endless_walker").machine;
    RunResult w = run(walker, walker.blank_tape(), 100);
    CHECK_FALSE(w.halted());
    CHECK(w.budget == 100);

    auto inc = load_corpus_machine("incrementer").machine;
    Tape in = parse_tape(inc, "11");
    NaiveResult oracle = naive_run(inc, in, 1000);
    REQUIRE(oracle.halted);
    RunResult ri = run(inc, in, 1000);
    CHECK(ri.halted());
    CHECK(ri.steps == oracle.steps);
    CHECK(naive_tape_equals(oracle, inc, ri.output));
    int ones = 0;
    for (std::int64_t p = ri.output.stored_min(); p < ri.output.stored_max(); ++p) {
        if (ri.output.at(p) == 1) ++ones;
    }
    CHECK(ones == 3);
}

TEST_CASE("run agrees with the naive simulator on random machines") {
    std::mt19937 rng(7331);
    for (int iter = 0; iter < 150; ++iter) {
        TuringMachine m = random_machine(rng, 4, 2);
        Tape in = random_tape(rng, m, 3);
        std::uint64_t budget = 60;
        RunResult r = run(m, in, budget);
        NaiveResult n = naive_run(m, in, budget);
        CHECK(r.halted() == n.halted);
        if (r.halted()) {
            CHECK(r.steps == n.steps);
            CHECK(naive_tape_equals(n, m, r.output));
        } else {
            CHECK(naive_tape_equals(n, m, r.final_config.tape));
            CHECK(r.final_config.state == n.state);
        }
    }
}

TEST_CASE("stepping preserves the canonical tape form") {
    std::mt19937 rng(451);
    for (int iter = 0; iter < 40; ++iter) {
        TuringMachine m = random_machine(rng, 4, 2);
        Configuration c{m.initial(), random_tape(rng, m, 2)};
        for (int k = 0; k < 30; ++k) {
            StepResult r = step(m, c);
            if (r.halted) break;
            c = r.config;
            const Tape& t = c.tape;
            if (t.stored_min() < 0) CHECK(t.at(t.stored_min()) != m.blank());
            if (t.stored_max() > 0) CHECK(t.at(t.stored_max() - 1) != m.blank());
        }
    }
}

TEST_CASE("support grows by at most one cell per step") {
    auto support = [](const TuringMachine& m, const Tape& t) {
        std::size_t n = 0;
        for (std::int64_t p = t.stored_min(); p < t.stored_max(); ++p) {
            if (t.at(p) != m.blank()) ++n;
        }
        return n;
    };
    std::mt19937 rng(99);
    for (int iter = 0; iter < 50; ++iter) {
        TuringMachine m = random_machine(rng, 4, 3);
        Configuration c{m.initial(), random_tape(rng, m, 2)};
        for (int k = 0; k < 40; ++k) {
            StepResult r = step(m, c);
            if (r.halted) break;
            CHECK(support(m, r.config.tape) <= support(m, c.tape) + 1);
            c = r.config;
        }
    }
}

TEST_CASE("identical rule images are reported as a collision with witness") {
    auto m = tiny({{"q0", "0", "q1", "0", 1},
                   {"q0", "1", "q1", "0", 0},
                   {"q1", "0", "qh", "0", 0},
                   {"q1", "1", "q1", "0", 1}});  // (q0,0) and (q1,1) -> (q1,0,L)
    ReversibilityResult r = is_reversible(m, 3);
    CHECK_FALSE(r.reversible);
    REQUIRE(r.witness.has_value());
    auto [c1, c2] = *r.witness;
    CHECK_FALSE(c1 == c2);
    CHECK(step(m, c1).config == step(m, c2).config);
}

TEST_CASE("cross-shift rule collisions are detected with a genuine witness") {
    auto m = tiny({{"q0", "0", "q1", "1", 1},
                   {"q0", "1", "q1", "0", 0},  // also enters q1, different shift
                   {"q1", "0", "qh", "0", 0},
                   {"q1", "1", "qh", "1", 0}});
    ReversibilityResult r = is_reversible(m, 3);
    CHECK_FALSE(r.reversible);
    REQUIRE(r.witness.has_value());
    auto [c1, c2] = *r.witness;
    CHECK_FALSE(c1 == c2);
    CHECK(step(m, c1).config == step(m, c2).config);
}

TEST_CASE("corpus machines are reversible; the exhaustive oracle agrees") {
    for (const auto& name : corpus_names()) {
        auto mf = load_corpus_machine(name);
        ReversibilityResult r = is_reversible(mf.machine, 3);
        CHECK_MESSAGE(r.reversible, name);
        CHECK(r.radius == 3);
    }

    // Independent route for one machine: enumerate windowed configurations
    // and hash the images of a head-motion simulator (sparse map tape).
    auto mf = load_corpus_machine("conditional_runner");
    const TuringMachine& m = mf.machine;
    const int radius = 4, width = 2 * radius + 1;
    auto naive_step_key = [&m, radius](StateId q, int valuation) {
        std::map<std::int64_t, SymbolId> tape;
        for (int i = 0; i < width; ++i) {
            SymbolId s = (valuation >> i) & 1;
            if (s != m.blank()) tape[i - radius] = s;
        }
        std::int64_t head = 0;
        auto it = tape.find(head);
        SymbolId read = it == tape.end() ? m.blank() : it->second;
        const Transition& tr = m.rule(q, read);
        if (tr.write == m.blank()) {
            tape.erase(head);
        } else {
            tape[head] = tr.write;
        }
        head += tr.move;
        std::string key = std::to_string(tr.next) + ";";
        for (const auto& [p, s] : tape) {
            key += std::to_string(p - head) + ":" + std::to_string(s) + ",";
        }
        return key;
    };
    std::unordered_map<std::string, int> images;
    int total = 0;
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting()) continue;
        for (int v = 0; v < (1 << width); ++v) {
            auto [it, inserted] = images.emplace(naive_step_key(q, v), v);
            CHECK_MESSAGE(inserted, "collision in exhaustive oracle");
            ++total;
        }
    }
    CHECK(total == 3 * (1 << width));
}

TEST_CASE("local structural check agrees with the windowed search") {
    std::mt19937 rng(424242);
    int collisions = 0;
    for (int iter = 0; iter < 80; ++iter) {
        TuringMachine m =
            iter % 2 ? random_machine(rng, 3, 2) : random_reversible_machine(rng, 4, 2);
        bool local_ok = !local_injectivity_violation(m).has_value();
        ReversibilityResult r = is_reversible(m, 3);
        CHECK(local_ok == r.reversible);
        if (!r.reversible) ++collisions;
    }
    CHECK(collisions > 0);  // the random pool must exercise both outcomes
}

TEST_CASE("reversibility window must be positive") {
    auto mf = load_corpus_machine("trivial_halter");
    CHECK_THROWS_AS(is_reversible(mf.machine, 0), WindowTooSmallError);
}
