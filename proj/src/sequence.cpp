#include "cantordyn/sequence.hpp"

namespace cantordyn {

Sequence Sequence::from_window(SymbolId def, std::int64_t start,
                               std::span<const SymbolId> syms) {
    Sequence s(def);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        s.set(start + static_cast<std::int64_t>(i), syms[i]);
    }
    return s;
}

SymbolId Sequence::at(std::int64_t pos) const {
    if (pos >= 0) {
        auto i = static_cast<std::size_t>(pos);
        return i < pos_.size() ? pos_[i] : def_;
    }
    auto i = static_cast<std::size_t>(-pos - 1);
    return i < neg_.size() ? neg_[i] : def_;
}

void Sequence::set(std::int64_t pos, SymbolId sym) {
    if (pos >= 0) {
        auto i = static_cast<std::size_t>(pos);
        if (i >= pos_.size()) {
            if (sym == def_) return;
            pos_.resize(i + 1, def_);
        }
        pos_[i] = sym;
    } else {
        auto i = static_cast<std::size_t>(-pos - 1);
        if (i >= neg_.size()) {
            if (sym == def_) return;
            neg_.resize(i + 1, def_);
        }
        neg_[i] = sym;
    }
    trim();
}

void Sequence::shift(std::int64_t n) {
    for (; n > 0; --n) {
        SymbolId s0 = pos_.empty() ? def_ : pos_.front();
        if (!pos_.empty()) pos_.pop_front();
        neg_.push_front(s0);
    }
    for (; n < 0; ++n) {
        SymbolId sm1 = neg_.empty() ? def_ : neg_.front();
        if (!neg_.empty()) neg_.pop_front();
        pos_.push_front(sm1);
    }
    trim();
}

void Sequence::trim() {
    while (!neg_.empty() && neg_.back() == def_) neg_.pop_back();
    while (!pos_.empty() && pos_.back() == def_) pos_.pop_back();
}

std::string Sequence::key() const {
    std::string k;
    k.reserve(stored_size() * 3 + 8);
    auto put = [&k](std::int64_t v) {
        k.append(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    put(static_cast<std::int64_t>(neg_.size()));
    for (SymbolId s : neg_) put(s);
    for (SymbolId s : pos_) put(s);
    return k;
}

}  // namespace cantordyn
