#pragma once

// Shared test utilities: an independent naive simulator used as an oracle,
// corpus loading, and seeded random generators for machines and tapes.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantordyn/machine.hpp"
#include "cantordyn/machine_io.hpp"

namespace testing_support {

using namespace cantordyn;

// Array-based simulator with an explicit head position, written directly
// from the four-step description.  Deliberately shares no code with
// cantordyn::run: the tape is a sparse map and the head moves instead of the
// tape shifting.
struct NaiveResult {
    bool halted = false;
    std::uint64_t steps = 0;
    std::map<std::int64_t, SymbolId> cells;  // sparse, blank omitted
    std::int64_t head = 0;
    StateId state = 0;
};

inline NaiveResult naive_run(const TuringMachine& m, const Tape& input,
                             std::uint64_t budget) {
    NaiveResult r;
    for (std::int64_t p = input.stored_min(); p < input.stored_max(); ++p) {
        if (input.at(p) != m.blank()) r.cells[p] = input.at(p);
    }
    r.state = m.initial();
    for (std::uint64_t k = 0; k <= budget; ++k) {
        if (r.state == m.halting()) {
            r.halted = true;
            r.steps = k;
            return r;
        }
        if (k == budget) break;
        auto it = r.cells.find(r.head);
        SymbolId read = it == r.cells.end() ? m.blank() : it->second;
        const Transition& t = m.rule(r.state, read);
        if (t.write == m.blank()) {
            r.cells.erase(r.head);
        } else {
            r.cells[r.head] = t.write;
        }
        r.state = t.next;
        r.head += t.move;
    }
    r.steps = budget;
    return r;
}

// Tape seen by the naive simulator, relative to its head.
inline SymbolId naive_at(const NaiveResult& r, const TuringMachine& m, std::int64_t pos) {
    auto it = r.cells.find(r.head + pos);
    return it == r.cells.end() ? m.blank() : it->second;
}

inline bool naive_tape_equals(const NaiveResult& r, const TuringMachine& m, const Tape& t) {
    std::int64_t lo = t.stored_min(), hi = t.stored_max();
    for (const auto& [abs_pos, sym] : r.cells) {
        (void)sym;
        lo = std::min(lo, abs_pos - r.head);
        hi = std::max(hi, abs_pos - r.head + 1);
    }
    for (std::int64_t p = lo; p < hi; ++p) {
        if (naive_at(r, m, p) != t.at(p)) return false;
    }
    return true;
}

inline std::string machines_dir() {
    if (const char* env = std::getenv("CANTORDYN_MACHINES_DIR")) return env;
#ifdef CANTORDYN_MACHINES_DIR
    return CANTORDYN_MACHINES_DIR;
#else
    return "machines";
#endif
}

inline MachineFile load_corpus_machine(const std::string& name) {
    return load_machine(machines_dir() + "/" + name + ".tm");
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "trivial_halter", "flip_halter",   "conditional_runner",
        "mirror_runner",  "double_runner", "shift_rotor",
    };
    return names;
}

inline std::vector<Tape> load_corpus_inputs(const TuringMachine& m, const std::string& name) {
    std::ifstream in(machines_dir() + "/inputs/" + name + ".txt");
    if (!in) throw std::runtime_error("missing inputs file for " + name);
    std::vector<Tape> tapes;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        tapes.push_back(parse_tape(m, line == "-" ? "" : line));
    }
    return tapes;
}

// Packed random reversible machine: a bijection between (Q \ {halt}) x Sigma
// rule slots and (Q \ {initial}) x Sigma image slots, one shift per target.
inline TuringMachine random_reversible_machine(std::mt19937& rng, int n_states,
                                               int n_symbols) {
    MachineDef def;
    for (int q = 0; q < n_states; ++q) def.states.push_back("s" + std::to_string(q));
    for (int s = 0; s < n_symbols; ++s) def.alphabet.push_back(std::to_string(s));
    def.blank = "0";
    def.initial = "s0";
    def.halting = "s" + std::to_string(n_states - 1);

    std::vector<int> moves(n_states);
    std::uniform_int_distribution<int> mv(-1, 1);
    for (int q = 1; q < n_states; ++q) moves[q] = mv(rng);

    std::vector<std::pair<int, int>> images;  // (target, write)
    for (int q = 1; q < n_states; ++q) {
        for (int s = 0; s < n_symbols; ++s) images.push_back({q, s});
    }
    std::shuffle(images.begin(), images.end(), rng);
    std::size_t next = 0;
    for (int q = 0; q < n_states; ++q) {
        if (q == n_states - 1) continue;  // halting has no rules
        for (int s = 0; s < n_symbols; ++s) {
            auto [p, w] = images[next++];
            def.rules.push_back({def.states[q], def.alphabet[s], def.states[p],
                                 def.alphabet[w], moves[p]});
        }
    }
    return TuringMachine::build(def);
}

// Arbitrary total machine, no structure guaranteed.
inline TuringMachine random_machine(std::mt19937& rng, int n_states, int n_symbols) {
    MachineDef def;
    for (int q = 0; q < n_states; ++q) def.states.push_back("s" + std::to_string(q));
    for (int s = 0; s < n_symbols; ++s) def.alphabet.push_back(std::to_string(s));
    def.blank = "0";
    def.initial = "s0";
    def.halting = "s" + std::to_string(n_states - 1);
    std::uniform_int_distribution<int> st(0, n_states - 1);
    std::uniform_int_distribution<int> sy(0, n_symbols - 1);
    std::uniform_int_distribution<int> mv(-1, 1);
    for (int q = 0; q < n_states - 1; ++q) {
        for (int s = 0; s < n_symbols; ++s) {
            def.rules.push_back({def.states[q], def.alphabet[s], def.states[st(rng)],
                                 def.alphabet[sy(rng)], mv(rng)});
        }
    }
    return TuringMachine::build(def);
}

inline Tape random_tape(std::mt19937& rng, const TuringMachine& m, int radius) {
    std::uniform_int_distribution<int> sy(0, m.n_symbols() - 1);
    Tape t = m.blank_tape();
    for (int p = -radius; p <= radius; ++p) t.set(p, sy(rng));
    return t;
}

inline Configuration random_config(std::mt19937& rng, const TuringMachine& m, int radius,
                                   bool allow_halting = false) {
    std::vector<StateId> pool;
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (!allow_halting && !m.looping() && q == m.halting()) continue;
        pool.push_back(q);
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return Configuration{pool[pick(rng)], random_tape(rng, m, radius)};
}

}  // namespace testing_support
