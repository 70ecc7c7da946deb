#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cantordyn/gshift.hpp"
#include "cantordyn/sequence.hpp"

namespace cantordyn {

using Rational = boost::multiprecision::cpp_rational;

// Exact point of the square Cantor set, held as ternary digits over {0,2}.
// x = sum x_k 3^-k (k >= 1), y = sum y_k 3^-(k+1) (k >= 0).  Digit lists are
// trimmed of trailing zeros, so points of finitely supported sequences have a
// canonical finite form and equality is digit equality.
class CantorPoint {
public:
    CantorPoint() = default;
    static CantorPoint from_digits(const std::vector<int>& x_digits,
                                   const std::vector<int>& y_digits);

    int x_digit(std::int64_t k) const;  // k >= 1
    int y_digit(std::int64_t k) const;  // k >= 0

    // View of the encoded binary sequence: bit(p) = s_p.
    int bit(std::int64_t pos) const;
    void set_bit(std::int64_t pos, int b);

    // One Baker-type digit move.  dir=+1 feeds the leading y digit into x
    // (x' = x/3 + y0/3, y' = 3y - y0); dir=-1 is the inverse.
    void baker_shift(int dir);

    std::size_t x_size() const { return x_.size(); }
    std::size_t y_size() const { return y_.size(); }

    std::pair<Rational, Rational> coords() const;

    std::string x_string() const;  // digit characters, possibly empty
    std::string y_string() const;

    bool operator==(const CantorPoint&) const = default;
    std::string key() const;

private:
    void trim();
    std::deque<std::uint8_t> x_;  // x_[i] = digit x_{i+1}
    std::deque<std::uint8_t> y_;  // y_[i] = digit y_i
};

// Point assignment for binary sequences: y_i = 2 s_i, x_i = 2 s_{-i}.
CantorPoint encode_point(const Sequence& bits);
Sequence decode_point(const CantorPoint& p);

// Fixed-width block code between an alphabet and bit sequences.  Symbol a
// maps to the width-bit binary of its code id, most significant bit first;
// the default symbol codes to all zeros so finite support is preserved.
struct BlockCode {
    int width = 1;
    std::vector<std::string> alphabet;
    SymbolId default_symbol = 0;

    int code_id(SymbolId a) const;
    SymbolId symbol_of_code(int cid) const;

    Sequence encode_sequence(const Sequence& s) const;
    Sequence decode_sequence(const Sequence& bits) const;
};

// Block-coded form of a shift: `gs` is over {0,1} and conjugate to the source
// through the code; shifts scale by the code width.
struct BinarizedShift {
    GeneralizedShift gs;
    BlockCode code;
};

BinarizedShift binarize(const GeneralizedShift& gs);

// Piecewise-affine map on cylinder blocks of the square Cantor set.  Bit k of
// a pattern corresponds to window position window_start + k.  Each component
// rewrites the window (the digit substitution) and then shifts by `shift`
// Baker moves; its image cylinder carries the rewritten bits on the window
// translated by -shift.
struct BlockMap {
    struct Component {
        std::uint32_t source = 0;
        std::uint32_t rewrite = 0;
        std::int32_t shift = 0;
    };

    std::int64_t window_start = 0;
    int window_len = 0;
    std::vector<Component> components;
    bool full_coverage = true;  // one component per window valuation

    void build_lookup();
    const Component* find(std::uint32_t source_bits) const;
    void validate() const;

private:
    std::unordered_map<std::uint32_t, std::uint32_t> lookup_;
};

// One component per valuation of the decision window D_F u D_G.
BlockMap to_block_map(const GeneralizedShift& binary_gs);

CantorPoint apply_block_map(const BlockMap& bm, const CantorPoint& p);
void apply_block_map_in_place(const BlockMap& bm, CantorPoint& p);

// Compiled pipeline bundle: machine -> fused shift -> binary code -> block
// map over the admissible windows (one marker, sitting at the head cell).
struct CompiledBlockMap {
    BlockMap bm;
    BlockCode code;
    ConfigEncoding enc;

    CantorPoint encode_config(const Configuration& c) const;
    Configuration decode_config(const CantorPoint& p) const;
    bool is_halt_point(const CantorPoint& p) const;
};

CompiledBlockMap compile_block_map(const CompiledShift& cs);

struct BlockMapAudit {
    bool sources_distinct = false;
    bool sources_cover = false;   // against the declared coverage
    bool images_disjoint = false;
    bool measures_preserved = false;
    std::size_t component_count = 0;
    std::optional<std::pair<std::size_t, std::size_t>> overlap_witness;

    bool ok() const {
        return sources_distinct && sources_cover && images_disjoint && measures_preserved;
    }
};

BlockMapAudit audit_block_map(const BlockMap& bm);

}  // namespace cantordyn
