#include "cantordyn/gshift.hpp"

#include <algorithm>
#include <unordered_map>

#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

std::size_t checked_pow(int base, int exp, const char* what) {
    double total = 1;
    for (int i = 0; i < exp; ++i) total *= base;
    if (total > 16777216.0) {
        throw Error(std::string("window table too large for ") + what + ": " +
                    std::to_string(base) + "^" + std::to_string(exp));
    }
    std::size_t n = 1;
    for (int i = 0; i < exp; ++i) n *= static_cast<std::size_t>(base);
    return n;
}

}  // namespace

std::size_t GeneralizedShift::f_rows() const {
    return checked_pow(n_symbols(), df_len, "F");
}

std::size_t GeneralizedShift::g_rows() const {
    return checked_pow(n_symbols(), dg_len, "G");
}

std::int64_t GeneralizedShift::shift_bound() const {
    std::int64_t b = 0;
    for (std::int64_t v : f_table) b = std::max(b, v < 0 ? -v : v);
    return b;
}

std::pair<std::int64_t, std::int64_t> GeneralizedShift::window() const {
    std::int64_t lo = std::min(df_start, dg_start);
    std::int64_t hi = std::max(df_start + df_len, dg_start + dg_len);
    return {lo, hi - lo};
}

void GeneralizedShift::validate() const {
    if (alphabet.size() < 2) throw ValidationError("shift alphabet must have >= 2 symbols");
    if (default_symbol < 0 || default_symbol >= n_symbols())
        throw ValidationError("shift default symbol is not in the alphabet");
    if (df_len < 1 || dg_len < 1) throw ValidationError("D_F and D_G must be nonempty");
    if (f_table.size() != f_rows())
        throw ValidationError("F table has " + std::to_string(f_table.size()) +
                              " entries, expected " + std::to_string(f_rows()));
    if (g_table.size() != g_rows() * static_cast<std::size_t>(dg_len))
        throw ValidationError("G table size does not match |A|^|D_G| rows");
    for (SymbolId s : g_table) {
        if (s < 0 || s >= n_symbols())
            throw ValidationError("G table writes a symbol outside the alphabet");
    }
}

void apply_in_place(const GeneralizedShift& gs, Sequence& s) {
    if (s.def() != gs.default_symbol) {
        throw AlphabetMismatchError("sequence default symbol does not match the shift's");
    }
    const int na = gs.n_symbols();
    std::size_t fi = 0;
    for (int k = 0; k < gs.df_len; ++k) {
        SymbolId a = s.at(gs.df_start + k);
        if (a < 0 || a >= na)
            throw AlphabetMismatchError("sequence symbol outside the shift alphabet");
        fi = fi * na + static_cast<std::size_t>(a);
    }
    std::size_t gi = 0;
    for (int k = 0; k < gs.dg_len; ++k) {
        SymbolId a = s.at(gs.dg_start + k);
        if (a < 0 || a >= na)
            throw AlphabetMismatchError("sequence symbol outside the shift alphabet");
        gi = gi * na + static_cast<std::size_t>(a);
    }
    const SymbolId* row = &gs.g_table[gi * gs.dg_len];
    for (int k = 0; k < gs.dg_len; ++k) s.set(gs.dg_start + k, row[k]);
    s.shift(gs.f_table[fi]);
}

Sequence apply(const GeneralizedShift& gs, const Sequence& s) {
    Sequence out = s;
    apply_in_place(gs, out);
    return out;
}

ConfigEncoding ConfigEncoding::for_machine(const TuringMachine& m) {
    ConfigEncoding e;
    e.state_names_ = m.state_names();
    e.n_plain_ = m.n_symbols();
    e.blank_ = m.blank();
    e.initial_ = m.initial();
    e.halting_ = m.halting();
    e.looping_ = m.looping();
    e.alphabet_names_ = m.symbol_names();
    for (const auto& q : e.state_names_) {
        for (const auto& s : m.symbol_names()) e.alphabet_names_.push_back(q + ":" + s);
    }
    return e;
}

ConfigEncoding ConfigEncoding::from_names(std::vector<std::string> alphabet,
                                          const std::string& default_name,
                                          const std::string& initial_name,
                                          const std::string& halting_name, bool looping) {
    ConfigEncoding e;
    e.alphabet_names_ = std::move(alphabet);
    int n_plain = 0;
    while (n_plain < static_cast<int>(e.alphabet_names_.size()) &&
           e.alphabet_names_[n_plain].find(':') == std::string::npos) {
        ++n_plain;
    }
    e.n_plain_ = n_plain;
    if (n_plain < 2) throw ValidationError("encoded alphabet needs >= 2 plain symbols");
    std::size_t total = e.alphabet_names_.size();
    if (total % n_plain != 0 || total / n_plain < 2)
        throw ValidationError("encoded alphabet is not plain symbols plus per-state markers");
    int n_states = static_cast<int>(total / n_plain) - 1;
    for (int q = 0; q < n_states; ++q) {
        const std::string& first = e.alphabet_names_[n_plain + std::size_t(q) * n_plain];
        auto colon = first.rfind(':');
        std::string qname = first.substr(0, colon);
        e.state_names_.push_back(qname);
        for (int s = 0; s < n_plain; ++s) {
            std::string want = qname + ":" + e.alphabet_names_[s];
            if (e.alphabet_names_[n_plain + std::size_t(q) * n_plain + s] != want)
                throw ValidationError("marker symbol order is inconsistent with '" + want + "'");
        }
    }
    auto find_plain = [&e](const std::string& n) -> SymbolId {
        for (int i = 0; i < e.n_plain_; ++i) {
            if (e.alphabet_names_[i] == n) return i;
        }
        throw ValidationError("name '" + n + "' is not a plain symbol of the encoding");
    };
    auto find_state = [&e](const std::string& n) -> StateId {
        for (std::size_t i = 0; i < e.state_names_.size(); ++i) {
            if (e.state_names_[i] == n) return static_cast<StateId>(i);
        }
        throw ValidationError("name '" + n + "' is not a state of the encoding");
    };
    e.blank_ = find_plain(default_name);
    e.initial_ = find_state(initial_name);
    e.halting_ = find_state(halting_name);
    e.looping_ = looping;
    return e;
}

SymbolId ConfigEncoding::fused(StateId q, SymbolId s) const {
    if (q < 0 || q >= n_states() || s < 0 || s >= n_plain_) {
        throw TypeMismatchError("fused marker (state, symbol) out of range");
    }
    return n_plain_ + q * n_plain_ + s;
}

Sequence ConfigEncoding::encode(const Configuration& c) const {
    if (c.tape.def() != blank_) {
        throw TypeMismatchError("configuration tape default is not the machine blank");
    }
    Sequence out = c.tape;
    out.set(0, fused(c.state, c.tape.at(0)));
    return out;
}

Configuration ConfigEncoding::decode(const Sequence& s) const {
    SymbolId center = s.at(0);
    if (!is_fused(center)) throw DecodeError("no configuration marker at position 0");
    Configuration c;
    c.state = fused_state(center);
    c.tape = s;
    c.tape.set(0, fused_symbol(center));
    for (std::int64_t p = c.tape.stored_min(); p < c.tape.stored_max(); ++p) {
        SymbolId a = c.tape.at(p);
        if (a < 0 || a >= n_plain_)
            throw DecodeError("marker symbol away from position 0 at offset " +
                              std::to_string(p));
    }
    return c;
}

bool ConfigEncoding::is_halt_marker(SymbolId a) const {
    return !looping_ && is_fused(a) && fused_state(a) == halting_;
}

CompiledShift compile_tm(const TuringMachine& m) {
    ConfigEncoding enc = ConfigEncoding::for_machine(m);
    GeneralizedShift gs;
    gs.alphabet = enc.alphabet_names();
    gs.default_symbol = m.blank();
    gs.df_start = gs.dg_start = -1;
    gs.df_len = gs.dg_len = 3;

    const int na = gs.n_symbols();
    const int np = enc.n_plain();
    const std::size_t rows = gs.g_rows();
    gs.f_table.assign(rows, 0);
    gs.g_table.resize(rows * 3);

    for (std::size_t idx = 0; idx < rows; ++idx) {
        SymbolId am1 = static_cast<SymbolId>(idx / (std::size_t(na) * na));
        SymbolId a0 = static_cast<SymbolId>((idx / na) % na);
        SymbolId ap1 = static_cast<SymbolId>(idx % na);
        SymbolId* row = &gs.g_table[idx * 3];
        row[0] = am1;
        row[1] = a0;
        row[2] = ap1;
        if (a0 < np || am1 >= np || ap1 >= np) continue;  // no marker, or junk window

        StateId q = enc.fused_state(a0);
        SymbolId s = enc.fused_symbol(a0);
        if (q == m.halting() && !m.looping()) {
            // Halting marker: drift left so halted configurations leave the
            // encoding image instead of colliding with live ones.
            gs.f_table[idx] = 1;
            continue;
        }
        const Transition& t = m.rule(q, s);
        switch (t.move) {
            case 0:
                row[1] = enc.fused(t.next, t.write);
                break;
            case 1:
                row[1] = t.write;
                row[2] = enc.fused(t.next, ap1);
                gs.f_table[idx] = 1;
                break;
            case -1:
                row[0] = enc.fused(t.next, am1);
                row[1] = t.write;
                gs.f_table[idx] = -1;
                break;
        }
    }
    gs.validate();
    return CompiledShift{std::move(gs), std::move(enc)};
}

BijectivityResult is_bijective_on_encoding(const GeneralizedShift& gs,
                                           const ConfigEncoding& enc, int window) {
    auto [wstart, wlen] = gs.window();
    int need = static_cast<int>(std::max(std::max(-wstart, wstart + wlen),
                                         gs.shift_bound()));
    if (window < need) {
        throw WindowTooSmallError("bijectivity window " + std::to_string(window) +
                                  " is smaller than the shift's reach " + std::to_string(need));
    }

    BijectivityResult res;
    res.window = window;
    const int width = 2 * window + 1;
    const int np = enc.n_plain();
    const std::size_t count = checked_pow(np, width, "bijectivity search");

    std::unordered_map<std::string, Sequence> images;
    std::vector<SymbolId> cells(width, 0);
    for (StateId q = 0; q < enc.n_states(); ++q) {
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t v = idx;
            for (int i = width - 1; i >= 0; --i) {
                cells[i] = static_cast<SymbolId>(v % np);
                v /= np;
            }
            Configuration c{q, Sequence::from_window(enc.blank(), -window, cells)};
            Sequence in = enc.encode(c);
            Sequence out = apply(gs, in);
            auto [it, inserted] = images.emplace(out.key(), in);
            if (!inserted) {
                res.bijective = false;
                res.witness = std::make_pair(it->second, in);
                return res;
            }
        }
    }
    res.bijective = true;
    return res;
}

}  // namespace cantordyn
