#include "cantordyn/cantor.hpp"

#include <algorithm>
#include <unordered_set>

#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

void check_digit(int d) {
    if (d != 0 && d != 2) {
        throw ValidationError("Cantor digits must be 0 or 2, got " + std::to_string(d));
    }
}

}  // namespace

CantorPoint CantorPoint::from_digits(const std::vector<int>& x_digits,
                                     const std::vector<int>& y_digits) {
    CantorPoint p;
    for (int d : x_digits) {
        check_digit(d);
        p.x_.push_back(static_cast<std::uint8_t>(d));
    }
    for (int d : y_digits) {
        check_digit(d);
        p.y_.push_back(static_cast<std::uint8_t>(d));
    }
    p.trim();
    return p;
}

int CantorPoint::x_digit(std::int64_t k) const {
    auto i = static_cast<std::size_t>(k - 1);
    return i < x_.size() ? x_[i] : 0;
}

int CantorPoint::y_digit(std::int64_t k) const {
    auto i = static_cast<std::size_t>(k);
    return i < y_.size() ? y_[i] : 0;
}

int CantorPoint::bit(std::int64_t pos) const {
    return (pos >= 0 ? y_digit(pos) : x_digit(-pos)) / 2;
}

void CantorPoint::set_bit(std::int64_t pos, int b) {
    std::uint8_t d = b ? 2 : 0;
    if (pos >= 0) {
        auto i = static_cast<std::size_t>(pos);
        if (i >= y_.size()) {
            if (d == 0) return;
            y_.resize(i + 1, 0);
        }
        y_[i] = d;
    } else {
        auto i = static_cast<std::size_t>(-pos - 1);
        if (i >= x_.size()) {
            if (d == 0) return;
            x_.resize(i + 1, 0);
        }
        x_[i] = d;
    }
    trim();
}

void CantorPoint::baker_shift(int dir) {
    if (dir > 0) {
        std::uint8_t d = y_.empty() ? 0 : y_.front();
        if (!y_.empty()) y_.pop_front();
        x_.push_front(d);
    } else {
        std::uint8_t d = x_.empty() ? 0 : x_.front();
        if (!x_.empty()) x_.pop_front();
        y_.push_front(d);
    }
    trim();
}

void CantorPoint::trim() {
    while (!x_.empty() && x_.back() == 0) x_.pop_back();
    while (!y_.empty() && y_.back() == 0) y_.pop_back();
}

std::pair<Rational, Rational> CantorPoint::coords() const {
    using boost::multiprecision::cpp_int;
    cpp_int xnum = 0, xden = 1;
    for (std::uint8_t d : x_) {
        xnum = xnum * 3 + d;
        xden *= 3;
    }
    cpp_int ynum = 0, yden = 1;
    for (std::uint8_t d : y_) {
        ynum = ynum * 3 + d;
        yden *= 3;
    }
    return {Rational(xnum, xden), Rational(ynum, yden)};
}

std::string CantorPoint::x_string() const {
    std::string s;
    for (std::uint8_t d : x_) s.push_back(static_cast<char>('0' + d));
    return s;
}

std::string CantorPoint::y_string() const {
    std::string s;
    for (std::uint8_t d : y_) s.push_back(static_cast<char>('0' + d));
    return s;
}

std::string CantorPoint::key() const {
    std::string k = x_string();
    k.push_back('|');
    k += y_string();
    return k;
}

CantorPoint encode_point(const Sequence& bits) {
    if (bits.def() != 0) {
        throw NonBinaryAlphabetError("point assignment expects a binary sequence with default 0");
    }
    CantorPoint p;
    for (std::int64_t pos = bits.stored_min(); pos < bits.stored_max(); ++pos) {
        SymbolId b = bits.at(pos);
        if (b != 0 && b != 1) {
            throw NonBinaryAlphabetError("point assignment expects symbols 0/1, got id " +
                                         std::to_string(b));
        }
        p.set_bit(pos, b);
    }
    return p;
}

Sequence decode_point(const CantorPoint& p) {
    Sequence s(0);
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(p.x_size()); ++k) {
        s.set(-k, p.x_digit(k) / 2);
    }
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(p.y_size()); ++k) {
        s.set(k, p.y_digit(k) / 2);
    }
    return s;
}

namespace {

int ceil_log2(int n) {
    int w = 0;
    while ((1 << w) < n) ++w;
    return std::max(w, 1);
}

std::size_t checked_bit_rows(int bits, const char* what) {
    if (bits < 1 || bits > 24) {
        throw Error(std::string(what) + ": bit window of " + std::to_string(bits) +
                    " positions is outside the supported range");
    }
    return std::size_t{1} << bits;
}

}  // namespace

int BlockCode::code_id(SymbolId a) const {
    if (a == default_symbol) return 0;
    return a < default_symbol ? a + 1 : a;
}

SymbolId BlockCode::symbol_of_code(int cid) const {
    if (cid == 0) return default_symbol;
    return cid <= default_symbol ? cid - 1 : cid;
}

Sequence BlockCode::encode_sequence(const Sequence& s) const {
    if (s.def() != default_symbol) {
        throw AlphabetMismatchError("sequence default does not match the block code");
    }
    Sequence bits(0);
    for (std::int64_t m = s.stored_min(); m < s.stored_max(); ++m) {
        int cid = code_id(s.at(m));
        for (int j = 0; j < width; ++j) {
            bits.set(m * width + j, (cid >> (width - 1 - j)) & 1);
        }
    }
    return bits;
}

Sequence BlockCode::decode_sequence(const Sequence& bits) const {
    if (bits.def() != 0) throw DecodeError("binary sequence must default to 0");
    Sequence s(default_symbol);
    std::int64_t lo = bits.stored_min();
    std::int64_t hi = bits.stored_max();
    std::int64_t mlo = lo >= 0 ? lo / width : -((-lo + width - 1) / width);
    std::int64_t mhi = hi >= 0 ? (hi + width - 1) / width : 0;
    const int n = static_cast<int>(alphabet.size());
    for (std::int64_t m = mlo; m < mhi; ++m) {
        int cid = 0;
        for (int j = 0; j < width; ++j) {
            int b = bits.at(m * width + j);
            if (b != 0 && b != 1) throw DecodeError("non-binary symbol in coded sequence");
            cid = (cid << 1) | b;
        }
        if (cid >= n) {
            throw DecodeError("bit block at position " + std::to_string(m * width) +
                              " is not the code of any symbol");
        }
        s.set(m, symbol_of_code(cid));
    }
    return s;
}

BinarizedShift binarize(const GeneralizedShift& src) {
    src.validate();
    BinarizedShift bin;
    bin.code.width = ceil_log2(src.n_symbols());
    bin.code.alphabet = src.alphabet;
    bin.code.default_symbol = src.default_symbol;

    const int w = bin.code.width;
    const int na = src.n_symbols();
    GeneralizedShift& gs = bin.gs;
    gs.alphabet = {"0", "1"};
    gs.default_symbol = 0;
    gs.df_start = src.df_start * w;
    gs.df_len = src.df_len * w;
    gs.dg_start = src.dg_start * w;
    gs.dg_len = src.dg_len * w;

    // A bit window decodes blockwise to source symbols; windows containing an
    // invalid code act as the identity.
    auto decode_window = [&](std::size_t bits, int len_syms) -> std::optional<std::size_t> {
        std::size_t idx = 0;
        for (int k = 0; k < len_syms; ++k) {
            int cid = static_cast<int>((bits >> ((len_syms - 1 - k) * w)) & ((1u << w) - 1));
            if (cid >= na) return std::nullopt;
            idx = idx * na + static_cast<std::size_t>(bin.code.symbol_of_code(cid));
        }
        return idx;
    };

    const std::size_t frows = checked_bit_rows(gs.df_len, "binarized F");
    gs.f_table.assign(frows, 0);
    for (std::size_t v = 0; v < frows; ++v) {
        if (auto idx = decode_window(v, src.df_len)) {
            gs.f_table[v] = src.f_table[*idx] * w;
        }
    }

    const std::size_t grows = checked_bit_rows(gs.dg_len, "binarized G");
    gs.g_table.assign(grows * static_cast<std::size_t>(gs.dg_len), 0);
    for (std::size_t v = 0; v < grows; ++v) {
        SymbolId* row = &gs.g_table[v * gs.dg_len];
        auto idx = decode_window(v, src.dg_len);
        if (idx) {
            const SymbolId* srow = &src.g_table[*idx * src.dg_len];
            for (int k = 0; k < src.dg_len; ++k) {
                int cid = bin.code.code_id(srow[k]);
                for (int j = 0; j < w; ++j) {
                    row[k * w + j] = (cid >> (w - 1 - j)) & 1;
                }
            }
        } else {
            for (int k = 0; k < gs.dg_len; ++k) {
                row[k] = static_cast<SymbolId>((v >> (gs.dg_len - 1 - k)) & 1);
            }
        }
    }
    gs.validate();
    return bin;
}

void BlockMap::build_lookup() {
    lookup_.clear();
    lookup_.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (!lookup_.emplace(components[i].source, static_cast<std::uint32_t>(i)).second) {
            throw ValidationError("block map has two components with the same source cylinder");
        }
    }
}

const BlockMap::Component* BlockMap::find(std::uint32_t source_bits) const {
    auto it = lookup_.find(source_bits);
    return it == lookup_.end() ? nullptr : &components[it->second];
}

void BlockMap::validate() const {
    if (window_len < 1 || window_len > 24) {
        throw ValidationError("block map window length out of supported range");
    }
    const std::uint32_t limit = static_cast<std::uint32_t>(1u << window_len);
    if (components.empty()) throw ValidationError("block map has no components");
    for (const auto& c : components) {
        if (c.source >= limit || c.rewrite >= limit) {
            throw ValidationError("block map component bits exceed the window length");
        }
    }
    if (full_coverage && components.size() != limit) {
        throw ValidationError("full-coverage block map must have one component per valuation");
    }
}

namespace {

std::uint32_t window_bits_of(const Sequence& s, std::int64_t start, int len) {
    std::uint32_t v = 0;
    for (int k = 0; k < len; ++k) v |= static_cast<std::uint32_t>(s.at(start + k) & 1) << k;
    return v;
}

BlockMap::Component component_for(const GeneralizedShift& gs, std::int64_t wstart, int wlen,
                                  std::uint32_t source) {
    Sequence s(0);
    for (int k = 0; k < wlen; ++k) s.set(wstart + k, (source >> k) & 1);

    std::size_t fi = 0;
    for (int k = 0; k < gs.df_len; ++k) fi = fi * 2 + s.at(gs.df_start + k);
    std::size_t gi = 0;
    for (int k = 0; k < gs.dg_len; ++k) gi = gi * 2 + s.at(gs.dg_start + k);

    const SymbolId* row = &gs.g_table[gi * gs.dg_len];
    for (int k = 0; k < gs.dg_len; ++k) s.set(gs.dg_start + k, row[k]);

    BlockMap::Component c;
    c.source = source;
    c.rewrite = window_bits_of(s, wstart, wlen);
    c.shift = static_cast<std::int32_t>(gs.f_table[fi]);
    return c;
}

}  // namespace

BlockMap to_block_map(const GeneralizedShift& binary_gs) {
    binary_gs.validate();
    if (binary_gs.n_symbols() != 2) {
        throw NonBinaryAlphabetError("block maps require a shift over the binary alphabet");
    }
    auto [wstart, wlen64] = binary_gs.window();
    int wlen = static_cast<int>(wlen64);
    const std::size_t rows = checked_bit_rows(wlen, "block map");

    BlockMap bm;
    bm.window_start = wstart;
    bm.window_len = wlen;
    bm.full_coverage = true;
    bm.components.reserve(rows);
    for (std::size_t v = 0; v < rows; ++v) {
        bm.components.push_back(
            component_for(binary_gs, wstart, wlen, static_cast<std::uint32_t>(v)));
    }
    bm.build_lookup();
    bm.validate();
    return bm;
}

void apply_block_map_in_place(const BlockMap& bm, CantorPoint& p) {
    std::uint32_t source = 0;
    for (int k = 0; k < bm.window_len; ++k) {
        source |= static_cast<std::uint32_t>(p.bit(bm.window_start + k)) << k;
    }
    const BlockMap::Component* c = bm.find(source);
    if (!c) {
        throw NoBlockMatchError("point lies outside every source cylinder of the block map");
    }
    for (int k = 0; k < bm.window_len; ++k) {
        p.set_bit(bm.window_start + k, (c->rewrite >> k) & 1);
    }
    for (std::int32_t n = c->shift; n > 0; --n) p.baker_shift(+1);
    for (std::int32_t n = c->shift; n < 0; ++n) p.baker_shift(-1);
}

CantorPoint apply_block_map(const BlockMap& bm, const CantorPoint& p) {
    CantorPoint out = p;
    apply_block_map_in_place(bm, out);
    return out;
}

CompiledBlockMap compile_block_map(const CompiledShift& cs) {
    CompiledBlockMap out;
    out.enc = cs.enc;
    BinarizedShift bin = binarize(cs.gs);
    out.code = bin.code;

    const int w = out.code.width;
    const int np = out.enc.n_plain();
    const int nf = out.enc.n_states() * np;
    auto [wstart, wlen64] = bin.gs.window();
    int wlen = static_cast<int>(wlen64);

    out.bm.window_start = wstart;
    out.bm.window_len = wlen;
    out.bm.full_coverage = false;
    out.bm.components.reserve(static_cast<std::size_t>(np) * np * nf);

    auto pack = [&](SymbolId a, SymbolId b, SymbolId c) {
        // Symbol at window slot m occupies bits m*w .. m*w+w-1 (positions
        // wstart + m*w + j), most significant code bit first.
        std::uint32_t bits = 0;
        SymbolId syms[3] = {a, b, c};
        for (int m = 0; m < 3; ++m) {
            int cid = out.code.code_id(syms[m]);
            for (int j = 0; j < w; ++j) {
                bits |= static_cast<std::uint32_t>((cid >> (w - 1 - j)) & 1) << (m * w + j);
            }
        }
        return bits;
    };

    for (SymbolId a = 0; a < np; ++a) {
        for (SymbolId b = np; b < np + nf; ++b) {
            for (SymbolId c = 0; c < np; ++c) {
                out.bm.components.push_back(component_for(
                    bin.gs, wstart, wlen, pack(a, b, c)));
            }
        }
    }
    out.bm.build_lookup();
    out.bm.validate();
    return out;
}

CantorPoint CompiledBlockMap::encode_config(const Configuration& c) const {
    return encode_point(code.encode_sequence(enc.encode(c)));
}

Configuration CompiledBlockMap::decode_config(const CantorPoint& p) const {
    return enc.decode(code.decode_sequence(decode_point(p)));
}

bool CompiledBlockMap::is_halt_point(const CantorPoint& p) const {
    if (enc.looping()) return false;
    int cid = 0;
    for (int j = 0; j < code.width; ++j) cid = (cid << 1) | p.bit(j);
    if (cid >= static_cast<int>(code.alphabet.size())) return false;
    return enc.is_halt_marker(code.symbol_of_code(cid));
}

BlockMapAudit audit_block_map(const BlockMap& bm) {
    BlockMapAudit audit;
    audit.component_count = bm.components.size();
    audit.measures_preserved = true;  // source and image share the window length

    std::unordered_set<std::uint32_t> sources;
    audit.sources_distinct = true;
    for (const auto& c : bm.components) {
        if (!sources.insert(c.source).second) audit.sources_distinct = false;
    }
    const std::size_t full = std::size_t{1} << bm.window_len;
    audit.sources_cover = bm.full_coverage ? bm.components.size() == full
                                           : audit.sources_distinct;

    // Image cylinders: same-shift components must differ; across shifts the
    // windows are offset and overlap exactly when the shared positions agree.
    std::unordered_map<std::int32_t, std::vector<std::size_t>> by_shift;
    for (std::size_t i = 0; i < bm.components.size(); ++i) {
        by_shift[bm.components[i].shift].push_back(i);
    }
    audit.images_disjoint = true;
    for (auto& [shift, idxs] : by_shift) {
        std::unordered_map<std::uint32_t, std::size_t> seen;
        for (std::size_t i : idxs) {
            auto [it, inserted] = seen.emplace(bm.components[i].rewrite, i);
            if (!inserted) {
                audit.images_disjoint = false;
                if (!audit.overlap_witness) audit.overlap_witness = {it->second, i};
            }
        }
    }
    const int L = bm.window_len;
    for (auto ita = by_shift.begin(); ita != by_shift.end() && audit.images_disjoint; ++ita) {
        for (auto itb = std::next(ita); itb != by_shift.end() && audit.images_disjoint; ++itb) {
            // Image window of shift n starts at window_start - n.
            std::int64_t sa = bm.window_start - ita->first;
            std::int64_t sb = bm.window_start - itb->first;
            auto* lo = &*ita;
            auto* hi = &*itb;
            if (sa > sb) {
                std::swap(sa, sb);
                std::swap(lo, hi);
            }
            std::int64_t d = sb - sa;
            if (d >= L) {
                // Constraint windows do not even meet: the cylinders always
                // share points.
                audit.images_disjoint = false;
                audit.overlap_witness = {lo->second.front(), hi->second.front()};
                break;
            }
            const std::uint32_t mask = (L - d == 32) ? 0xffffffffu
                                                     : ((1u << (L - d)) - 1u);
            std::unordered_map<std::uint32_t, std::size_t> prefixes;
            for (std::size_t i : lo->second) {
                prefixes.emplace(bm.components[i].rewrite >> d, i);
            }
            for (std::size_t i : hi->second) {
                auto it = prefixes.find(bm.components[i].rewrite & mask);
                if (it != prefixes.end()) {
                    audit.images_disjoint = false;
                    audit.overlap_witness = {it->second, i};
                    break;
                }
            }
        }
    }
    return audit;
}

}  // namespace cantordyn
