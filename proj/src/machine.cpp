#include "cantordyn/machine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
              c == '+' || c == '-')) {
            return false;
        }
    }
    return true;
}

std::unordered_map<std::string, std::int32_t> index_names(
    const std::vector<std::string>& names, const char* what) {
    std::unordered_map<std::string, std::int32_t> idx;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!valid_identifier(names[i])) {
            throw ValidationError(std::string(what) + " name '" + names[i] +
                                  "' is not a valid identifier");
        }
        if (!idx.emplace(names[i], static_cast<std::int32_t>(i)).second) {
            throw ValidationError(std::string(what) + " '" + names[i] + "' declared twice");
        }
    }
    return idx;
}

}  // namespace

TuringMachine TuringMachine::build(const MachineDef& def) {
    TuringMachine m;
    m.states_ = def.states;
    m.symbols_ = def.alphabet;
    m.looping_ = def.looping;

    auto state_idx = index_names(m.states_, "state");
    auto sym_idx = index_names(m.symbols_, "symbol");

    if (m.symbols_.size() < 2) throw ValidationError("alphabet must have at least two symbols");

    auto need_state = [&](const std::string& n, const char* ctx) -> StateId {
        auto it = state_idx.find(n);
        if (it == state_idx.end())
            throw ValidationError(std::string("undeclared state '") + n + "' in " + ctx);
        return it->second;
    };
    auto need_symbol = [&](const std::string& n, const char* ctx) -> SymbolId {
        auto it = sym_idx.find(n);
        if (it == sym_idx.end())
            throw ValidationError(std::string("undeclared symbol '") + n + "' in " + ctx);
        return it->second;
    };

    m.blank_ = need_symbol(def.blank, "blank declaration");
    m.initial_ = need_state(def.initial, "initial declaration");
    m.halting_ = need_state(def.halting, "halting declaration");
    if (m.initial_ == m.halting_) throw ValidationError("initial state equals halting state");

    const int ns = m.n_symbols();
    m.table_.assign(static_cast<std::size_t>(m.n_states()) * ns, Transition{});
    std::vector<bool> defined(m.table_.size(), false);

    for (const auto& r : def.rules) {
        std::string ctx = "rule 'trans " + r.from + " " + r.read + " -> " + r.to + " " +
                          r.write + "'";
        StateId q = need_state(r.from, ctx.c_str());
        SymbolId s = need_symbol(r.read, ctx.c_str());
        StateId q2 = need_state(r.to, ctx.c_str());
        SymbolId w = need_symbol(r.write, ctx.c_str());
        if (r.move < -1 || r.move > 1)
            throw ValidationError(ctx + ": move must be one of L/S/R");
        if (q == m.halting_ && !m.looping_)
            throw ValidationError(ctx + ": transition from the halting state requires the looping flag");
        std::size_t i = static_cast<std::size_t>(q) * ns + s;
        if (defined[i]) throw ValidationError(ctx + ": duplicate rule for this (state, symbol)");
        defined[i] = true;
        m.table_[i] = Transition{q2, w, r.move};
    }

    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting_ && !m.looping_) continue;
        for (SymbolId s = 0; s < ns; ++s) {
            if (!defined[static_cast<std::size_t>(q) * ns + s]) {
                throw ValidationError("transition table is not total: no rule for (" +
                                      m.states_[q] + ", " + m.symbols_[s] + ")");
            }
        }
    }
    return m;
}

std::optional<StateId> TuringMachine::find_state(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
}

std::optional<SymbolId> TuringMachine::find_symbol(const std::string& name) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<SymbolId>(it - symbols_.begin());
}

bool TuringMachine::has_rule(StateId q, SymbolId s) const {
    if (q < 0 || q >= n_states() || s < 0 || s >= n_symbols()) return false;
    return looping_ || q != halting_;
}

const Transition& TuringMachine::rule(StateId q, SymbolId s) const {
    return table_.at(static_cast<std::size_t>(q) * n_symbols() + s);
}

MachineDef TuringMachine::to_def() const {
    MachineDef def;
    def.states = states_;
    def.alphabet = symbols_;
    def.blank = symbols_[blank_];
    def.initial = states_[initial_];
    def.halting = states_[halting_];
    def.looping = looping_;
    for (StateId q = 0; q < n_states(); ++q) {
        if (q == halting_ && !looping_) continue;
        for (SymbolId s = 0; s < n_symbols(); ++s) {
            const Transition& t = rule(q, s);
            def.rules.push_back({states_[q], symbols_[s], states_[t.next],
                                 symbols_[t.write], t.move});
        }
    }
    return def;
}

std::string Configuration::key() const {
    std::string k = tape.key();
    k.append(reinterpret_cast<const char*>(&state), sizeof(state));
    return k;
}

bool step_in_place(const TuringMachine& m, Configuration& c) {
    if (c.state < 0 || c.state >= m.n_states()) {
        throw UnknownStateError("configuration state id " + std::to_string(c.state) +
                                " is not a state of the machine");
    }
    if (!m.looping() && c.state == m.halting()) return true;
    SymbolId head = c.tape.at(0);
    if (head < 0 || head >= m.n_symbols()) {
        throw MalformedTapeError("tape symbol id " + std::to_string(head) +
                                 " is outside the machine alphabet");
    }
    const Transition& t = m.rule(c.state, head);
    c.state = t.next;
    c.tape.set(0, t.write);
    c.tape.shift(t.move);
    return false;
}

StepResult step(const TuringMachine& m, const Configuration& c) {
    Configuration next = c;
    bool halted = step_in_place(m, next);
    return StepResult{halted, std::move(next)};
}

RunResult run(const TuringMachine& m, const Tape& input, std::uint64_t budget) {
    if (m.looping()) {
        throw LoopingMachineError("run() requires a halting-capable machine; "
                                  "this table is flagged looping");
    }
    RunResult res;
    Configuration c{m.initial(), input};
    for (std::uint64_t k = 0;; ++k) {
        if (c.state == m.halting()) {
            res.kind = RunResult::Kind::Halted;
            res.output = std::move(c.tape);
            res.steps = k;
            return res;
        }
        if (k == budget) break;
        step_in_place(m, c);
    }
    res.kind = RunResult::Kind::Unresolved;
    res.final_config = std::move(c);
    res.budget = budget;
    return res;
}

std::optional<std::pair<std::pair<StateId, SymbolId>, std::pair<StateId, SymbolId>>>
local_injectivity_violation(const TuringMachine& m) {
    struct Incoming {
        int move;
        SymbolId write;
        StateId from;
        SymbolId read;
    };
    std::map<StateId, std::vector<Incoming>> incoming;
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting() && !m.looping()) continue;
        for (SymbolId s = 0; s < m.n_symbols(); ++s) {
            const Transition& t = m.rule(q, s);
            incoming[t.next].push_back({t.move, t.write, q, s});
        }
    }
    for (auto& [target, rules] : incoming) {
        for (std::size_t i = 0; i < rules.size(); ++i) {
            for (std::size_t j = i + 1; j < rules.size(); ++j) {
                if (rules[i].move != rules[j].move || rules[i].write == rules[j].write) {
                    return std::make_pair(std::make_pair(rules[i].from, rules[i].read),
                                          std::make_pair(rules[j].from, rules[j].read));
                }
            }
        }
    }
    return std::nullopt;
}

namespace {

// Builds a genuine collision witness from a violating rule pair.
std::pair<Configuration, Configuration> collision_witness(
    const TuringMachine& m, std::pair<StateId, SymbolId> a, std::pair<StateId, SymbolId> b) {
    const Transition& ta = m.rule(a.first, a.second);
    const Transition& tb = m.rule(b.first, b.second);
    Tape t1 = m.blank_tape();
    Tape t2 = m.blank_tape();
    if (ta.move == tb.move) {
        // Equal writes and shifts: any shared context collides.
        t1.set(0, a.second);
        t2.set(0, b.second);
    } else {
        // Different shifts: align one tape as a shifted copy of the other.
        Tape base = m.blank_tape();
        base.set(0, ta.write);
        base.set(ta.move - tb.move, tb.write);
        t1 = base;
        t1.set(0, a.second);
        t2 = base;
        t2.shift(ta.move - tb.move);
        t2.set(0, b.second);
    }
    return {Configuration{a.first, t1}, Configuration{b.first, t2}};
}

}  // namespace

ReversibilityResult is_reversible(const TuringMachine& m, int radius) {
    if (radius < 1) throw WindowTooSmallError("reversibility window radius must be >= 1");

    ReversibilityResult res;
    res.radius = radius;

    // Fast structural check; short-circuits with a concrete witness.
    if (auto bad = local_injectivity_violation(m)) {
        auto [c1, c2] = collision_witness(m, bad->first, bad->second);
        StepResult s1 = step(m, c1);
        StepResult s2 = step(m, c2);
        if (s1.config == s2.config && !(c1 == c2)) {
            res.reversible = false;
            res.witness = std::make_pair(c1, c2);
            return res;
        }
        // Fall through to the exhaustive search; the structural criterion is
        // expected to be exact, so reaching here indicates a logic error.
        throw Error("internal: structural collision did not verify");
    }

    // Exhaustive search over all configurations supported in [-radius, radius].
    const int width = 2 * radius + 1;
    const int ns = m.n_symbols();
    double total = 1;
    for (int i = 0; i < width; ++i) total *= ns;
    if (total > 5e7) {
        throw Error("reversibility window too large to enumerate: |Sigma|^" +
                    std::to_string(width) + " assignments");
    }
    const std::uint64_t count = static_cast<std::uint64_t>(total);

    std::unordered_map<std::string, Configuration> images;
    images.reserve(static_cast<std::size_t>(std::min<double>(total * m.n_states(), 1e7)));
    std::vector<SymbolId> window(width, 0);
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting() && !m.looping()) continue;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t v = idx;
            for (int i = width - 1; i >= 0; --i) {
                window[i] = static_cast<SymbolId>(v % ns);
                v /= ns;
            }
            Configuration c{q, Tape::from_window(m.blank(), -radius, window)};
            StepResult sr = step(m, c);
            auto [it, inserted] = images.emplace(sr.config.key(), c);
            if (!inserted) {
                res.reversible = false;
                res.witness = std::make_pair(it->second, c);
                return res;
            }
        }
    }
    res.reversible = true;
    return res;
}

}  // namespace cantordyn
