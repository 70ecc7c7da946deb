#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

namespace cantordyn {

using SymbolId = std::int32_t;
using StateId = std::int32_t;

// Bi-infinite word over symbol ids, finitely supported relative to a default
// symbol.  Stored in canonical form: the deques never end in the default
// symbol, so equality of the induced bi-infinite sequences is deque equality.
//
// Position convention: pos_[i] holds s_i for i >= 0, neg_[i] holds s_{-1-i}.
// Tapes and generalized-shift sequences share this representation.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(SymbolId def) : def_(def) {}

    // Builds a sequence equal to `syms` on [start, start+syms.size()), default
    // elsewhere.
    static Sequence from_window(SymbolId def, std::int64_t start,
                                std::span<const SymbolId> syms);

    SymbolId def() const { return def_; }

    SymbolId at(std::int64_t pos) const;
    void set(std::int64_t pos, SymbolId sym);

    // Relabels positions: new s_k = old s_{k+n}.  n=+1 is the left shift.
    void shift(std::int64_t n);

    // Extent of stored (non-default-trimmed) content; [0, 0) when empty.
    std::int64_t stored_min() const { return -static_cast<std::int64_t>(neg_.size()); }
    std::int64_t stored_max() const { return static_cast<std::int64_t>(pos_.size()); }
    std::size_t stored_size() const { return neg_.size() + pos_.size(); }
    bool blank() const { return neg_.empty() && pos_.empty(); }

    bool operator==(const Sequence& other) const = default;

    // Stable key for hashing configurations during collision searches.
    std::string key() const;

private:
    void trim();

    std::deque<SymbolId> neg_;
    std::deque<SymbolId> pos_;
    SymbolId def_ = 0;
};

using Tape = Sequence;

}  // namespace cantordyn
