#include <doctest.h>

#include <random>

#include "cantordyn/errors.hpp"
#include "cantordyn/machine_io.hpp"
#include "cantordyn/orbit.hpp"
#include "cantordyn/transform.hpp"
#include "helpers.hpp"

using namespace cantordyn;
using namespace testing_support;

namespace {

// Follows the inverse machine from the image of c until it leaves the
// bookkeeping states; returns the recovered configuration.
Configuration undo_one(const InverseMachine& inv, const TuringMachine& fwd,
                       const Configuration& image) {
    Configuration c{*inv.machine.find_state(fwd.state_name(image.state)), image.tape};
    for (int hops = 0; hops < 3; ++hops) {
        c = step(inv.machine, c).config;
        if (!inv.is_bookkeeping(c.state)) return c;
    }
    FAIL("inverse machine did not leave bookkeeping states");
    return c;
}

}  // namespace

TEST_CASE("check_initial_unreachable") {
    MachineDef def;
    def.states = {"q0", "q1", "qh"};
    def.alphabet = {"0", "1"};
    def.blank = "0";
    def.initial = "q0";
    def.halting = "qh";
    def.rules = {{"q0", "0", "q1", "0", 0}, {"q0", "1", "q1", "1", 0},
                 {"q1", "0", "q0", "0", 0}, {"q1", "1", "qh", "1", 0}};
    CHECK_FALSE(check_initial_unreachable(TuringMachine::build(def)));

    def.rules[2] = {"q1", "0", "qh", "0", 0};
    CHECK(check_initial_unreachable(TuringMachine::build(def)));

    for (const auto& name : corpus_names()) {
        CHECK(check_initial_unreachable(load_corpus_machine(name).machine));
    }
}

TEST_CASE("invert undoes a stay-put halter in one step") {
    auto m = load_corpus_machine("flip_halter").machine;
    InverseMachine inv = invert(m);
    CHECK(check_initial_unreachable(inv.machine));
    Tape t = parse_tape(m, "1");
    Configuration image = step(m, Configuration{m.initial(), t}).config;
    Configuration back = undo_one(inv, m, image);
    CHECK(inv.machine.state_name(back.state) == "q0");
    CHECK(back.tape == t);
}

TEST_CASE("invert round-trips one step on random supported configurations") {
    std::mt19937 rng(0xC0FFEE);
    for (const auto& name : corpus_names()) {
        auto m = load_corpus_machine(name).machine;
        InverseMachine inv = invert(m);
        for (int iter = 0; iter < 40; ++iter) {
            Configuration c = random_config(rng, m, 4);
            Configuration image = step(m, c).config;
            Configuration back = undo_one(inv, m, image);
            CHECK(inv.machine.state_name(back.state) == m.state_name(c.state));
            CHECK(back.tape == c.tape);
        }
    }
    for (int iter = 0; iter < 40; ++iter) {
        TuringMachine m = random_reversible_machine(rng, 5, 2);
        InverseMachine inv = invert(m);
        Configuration c = random_config(rng, m, 3);
        Configuration image = step(m, c).config;
        Configuration back = undo_one(inv, m, image);
        CHECK(inv.machine.state_name(back.state) == m.state_name(c.state));
        CHECK(back.tape == c.tape);
    }
}

TEST_CASE("invert round-trips exhaustively on windowed configurations") {
    auto m = load_corpus_machine("conditional_runner").machine;
    InverseMachine inv = invert(m);
    const int radius = 4, width = 2 * radius + 1;
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting()) continue;
        for (int v = 0; v < (1 << width); ++v) {
            std::vector<SymbolId> cells(width);
            for (int i = 0; i < width; ++i) cells[i] = (v >> i) & 1;
            Configuration c{q, Tape::from_window(m.blank(), -radius, cells)};
            Configuration back = undo_one(inv, m, step(m, c).config);
            CHECK(inv.machine.state_name(back.state) == m.state_name(c.state));
            CHECK(back.tape == c.tape);
        }
    }
}

TEST_CASE("invert and restartify reject unsuitable machines") {
    // The incrementer walks back into its initial state, so it is rejected
    // for reachability even though its global transition is injective.
    auto inc = load_corpus_machine("incrementer").machine;
    REQUIRE(is_reversible(inc, 3).reversible);
    CHECK_THROWS_AS(invert(inc), InitialReachableError);
    CHECK_THROWS_AS(restartify(inc), InitialReachableError);

    MachineDef def;  // two rules with identical images: a genuine collision
    def.states = {"q0", "q1", "qh"};
    def.alphabet = {"0", "1"};
    def.blank = "0";
    def.initial = "q0";
    def.halting = "qh";
    def.rules = {{"q0", "0", "q1", "0", 1}, {"q0", "1", "q1", "0", 1},
                 {"q1", "0", "qh", "0", 0}, {"q1", "1", "qh", "1", 0}};
    TuringMachine colliding = TuringMachine::build(def);
    REQUIRE_FALSE(is_reversible(colliding, 3).reversible);
    CHECK_THROWS_AS(invert(colliding), NotReversibleError);
    CHECK_THROWS_AS(restartify(colliding), NotReversibleError);
}

TEST_CASE("restartify halts exactly when the source halts, with the input restored") {
    const std::uint64_t budget = 3000;
    for (const auto& name : corpus_names()) {
        auto m = load_corpus_machine(name).machine;
        RestartMachine rm = restartify(m);
        CHECK(check_initial_unreachable(rm.machine));
        CHECK(is_reversible(rm.machine, 3).reversible);
        int halting = 0, running = 0;
        for (const Tape& input : load_corpus_inputs(m, name)) {
            RunResult src = run(m, input, budget);
            RunResult rst = run(rm.machine, input, 3 * budget + 5);
            CHECK(src.halted() == rst.halted());
            if (src.halted()) {
                ++halting;
                CHECK(rst.output == input);  // the restart property, exact
            } else {
                ++running;
            }
        }
        CHECK(halting >= 5);
        if (name == "conditional_runner" || name == "mirror_runner" ||
            name == "double_runner" || name == "shift_rotor") {
            CHECK(running >= 5);
        }
    }
}

TEST_CASE("stay-put machines take exactly 2k+1 restart steps") {
    for (const auto& name : {"trivial_halter", "flip_halter"}) {
        auto m = load_corpus_machine(name).machine;
        RestartMachine rm = restartify(m);
        Tape t = parse_tape(m, "1");
        RunResult src = run(m, t, 100);
        RunResult rst = run(rm.machine, t, 100);
        REQUIRE(src.halted());
        REQUIRE(rst.halted());
        CHECK(rst.steps == 2 * src.steps + 1);
    }
}

TEST_CASE("restart traces respect the phase discipline") {
    auto m = load_corpus_machine("double_runner").machine;
    RestartMachine rm = restartify(m);
    for (const Tape& input : load_corpus_inputs(m, "double_runner")) {
        Configuration c{rm.machine.initial(), input};
        // start (forward)* [turn+ turn- (reverse|aux)* halt]
        int stage = 0;  // 0 forward, 1 turnaround seen, 2 reversing, 3 halted
        for (int k = 0; k < 2000; ++k) {
            StepResult r = step(rm.machine, c);
            if (r.halted) {
                stage = 3;
                break;
            }
            c = r.config;
            switch (rm.phase(c.state)) {
                case RestartPhase::Start: FAIL("re-entered the start state"); break;
                case RestartPhase::Forward:
                case RestartPhase::TurnPlus:
                    CHECK(stage == 0);
                    break;
                case RestartPhase::TurnMinus:
                    CHECK(stage == 0);
                    stage = 2;
                    break;
                case RestartPhase::Reverse:
                case RestartPhase::ReverseAux:
                    CHECK(stage == 2);
                    break;
                case RestartPhase::Halt:
                    stage = 3;
                    break;
            }
            if (stage == 3) break;
        }
    }
}

TEST_CASE("restartify works on random reversible machines") {
    std::mt19937 rng(2025);
    for (int iter = 0; iter < 30; ++iter) {
        TuringMachine m = random_reversible_machine(rng, 4, 2);
        RestartMachine rm = restartify(m);
        CHECK(is_reversible(rm.machine, 2).reversible);
        CHECK(check_initial_unreachable(rm.machine));
        Tape input = random_tape(rng, m, 3);
        RunResult src = run(m, input, 400);
        RunResult rst = run(rm.machine, input, 1300);
        CHECK(src.halted() == rst.halted());
        if (src.halted()) CHECK(rst.output == input);
    }
}

TEST_CASE("extend_halt_loop produces a total looping table") {
    auto m = load_corpus_machine("trivial_halter").machine;
    TuringMachine ext = extend_halt_loop(m);
    CHECK(ext.looping());
    CHECK_THROWS_AS(run(ext, ext.blank_tape(), 5), LoopingMachineError);
    CHECK_THROWS_AS(extend_halt_loop(ext), LoopingMachineError);

    OrbitVerdict v = classify_orbit(ext, Configuration{ext.initial(), ext.blank_tape()}, 100);
    CHECK(v.periodic());
    CHECK(v.period == 2);
    CHECK(v.preperiod == 0);
}

TEST_CASE("extending a restart machine preserves reversibility") {
    // The loop-back rules enter the otherwise-unreachable initial state with
    // pairwise distinct writes, so injectivity survives the extension.
    for (const auto& name : corpus_names()) {
        auto m = load_corpus_machine(name).machine;
        TuringMachine ext = extend_halt_loop(restartify(m).machine);
        CHECK_MESSAGE(is_reversible(ext, 3).reversible, name);
    }
}

TEST_CASE("extended restart machines are periodic exactly on halting inputs") {
    for (const auto& name : {"flip_halter", "conditional_runner", "shift_rotor"}) {
        auto m = load_corpus_machine(name).machine;
        RestartMachine rm = restartify(m);
        TuringMachine ext = extend_halt_loop(rm.machine);
        for (const Tape& input : load_corpus_inputs(m, name)) {
            RunResult src = run(m, input, 2000);
            RunResult rst = run(rm.machine, input, 7000);
            OrbitVerdict v =
                classify_orbit(ext, Configuration{ext.initial(), input}, 20000);
            if (src.halted()) {
                REQUIRE(rst.halted());
                CHECK(v.periodic());
                CHECK(v.period == rst.steps + 1);  // trace length plus the loop-back
                CHECK(v.preperiod == 0);
            } else {
                CHECK(v.kind == OrbitVerdict::Kind::Unresolved);
            }
        }
    }
}
