#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantordyn/machine.hpp"
#include "cantordyn/sequence.hpp"

namespace cantordyn {

// Table-driven map on bi-infinite sequences: rewrite the window D_G through
// the G table, then shift the whole sequence by the F value read off D_F.
// Tables are dense and total over their windows; row order is lexicographic
// in the window symbols, which fixes the serialized form.
struct GeneralizedShift {
    std::vector<std::string> alphabet;
    SymbolId default_symbol = 0;
    std::int64_t df_start = -1;
    int df_len = 0;
    std::int64_t dg_start = -1;
    int dg_len = 0;
    std::vector<std::int64_t> f_table;  // |A|^df_len entries
    std::vector<SymbolId> g_table;      // |A|^dg_len rows of dg_len symbols

    int n_symbols() const { return static_cast<int>(alphabet.size()); }
    std::size_t f_rows() const;
    std::size_t g_rows() const;
    std::int64_t shift_bound() const;

    // Interval closure of D_F and D_G, the decision window of the block map.
    std::pair<std::int64_t, std::int64_t> window() const;  // (start, len)

    void validate() const;
};

Sequence apply(const GeneralizedShift& gs, const Sequence& s);
void apply_in_place(const GeneralizedShift& gs, Sequence& s);

// The injective configuration encoding: the tape with the head cell replaced
// by a fused (state, symbol) marker.  Symbol ids 0..P-1 are the machine's
// alphabet, P + q*P + s is the marker for state q reading s.
class ConfigEncoding {
public:
    static ConfigEncoding for_machine(const TuringMachine& m);
    static ConfigEncoding from_names(std::vector<std::string> alphabet,
                                     const std::string& default_name,
                                     const std::string& initial_name,
                                     const std::string& halting_name, bool looping);

    int n_plain() const { return n_plain_; }
    int n_states() const { return static_cast<int>(state_names_.size()); }
    int n_total() const { return n_plain_ * (1 + n_states()); }

    SymbolId fused(StateId q, SymbolId s) const;
    bool is_fused(SymbolId a) const { return a >= n_plain_; }
    StateId fused_state(SymbolId a) const { return (a - n_plain_) / n_plain_; }
    SymbolId fused_symbol(SymbolId a) const { return (a - n_plain_) % n_plain_; }

    SymbolId blank() const { return blank_; }
    StateId initial() const { return initial_; }
    StateId halting() const { return halting_; }
    bool looping() const { return looping_; }
    const std::vector<std::string>& alphabet_names() const { return alphabet_names_; }
    const std::vector<std::string>& state_names() const { return state_names_; }

    Sequence encode(const Configuration& c) const;
    Configuration decode(const Sequence& s) const;  // throws DecodeError off-image

    // True when the center marker of an encoded configuration denotes the
    // halting state of a halting-capable machine.
    bool is_halt_marker(SymbolId a) const;

private:
    std::vector<std::string> alphabet_names_;
    std::vector<std::string> state_names_;
    int n_plain_ = 0;
    SymbolId blank_ = 0;
    StateId initial_ = 0;
    StateId halting_ = 0;
    bool looping_ = false;
};

struct CompiledShift {
    GeneralizedShift gs;
    ConfigEncoding enc;
};

// Moore construction: a generalized shift conjugate to the machine's global
// transition under the fused-marker encoding.  Windows are D_F = D_G =
// {-1,0,1}; G moves the marker by the rule's shift and writes the new symbol,
// F brings the marker back to position 0.  For a halting-capable machine the
// halting markers act as a pure left shift, which keeps the map injective on
// encoded configurations exactly when the machine is reversible.
CompiledShift compile_tm(const TuringMachine& m);

struct BijectivityResult {
    bool bijective = false;
    int window = 0;
    std::optional<std::pair<Sequence, Sequence>> witness;
};

// Exhaustive injectivity check of `apply` over all encoded configurations
// whose tapes are supported in [-window, window].
BijectivityResult is_bijective_on_encoding(const GeneralizedShift& gs,
                                           const ConfigEncoding& enc, int window);

}  // namespace cantordyn
