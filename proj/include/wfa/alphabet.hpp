#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfa/errors.hpp"

namespace wfa {

/// A word is a sequence of letter indices into an Alphabet.
using Word = std::vector<std::size_t>;

/// Ordered finite set of distinct symbols. Letter order fixes the
/// length-lexicographic enumeration of words used throughout.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].empty())
                throw alphabet_error("empty symbol at alphabet position " + std::to_string(i));
            for (std::size_t j = 0; j < i; ++j)
                if (symbols_[i] == symbols_[j])
                    throw alphabet_error("duplicate symbol '" + symbols_[i] + "'");
        }
    }

    std::size_t size() const { return symbols_.size(); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::string& symbol(std::size_t i) const { return symbols_.at(i); }

    std::size_t index(std::string_view symbol) const {
        auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
        if (it == symbols_.end())
            throw alphabet_error("unknown symbol '" + std::string(symbol) + "'");
        return static_cast<std::size_t>(it - symbols_.begin());
    }

    bool single_characters() const {
        return std::all_of(symbols_.begin(), symbols_.end(),
                           [](const std::string& s) { return s.size() == 1; });
    }

    /// Words over single-character alphabets print as plain strings ("aba");
    /// otherwise symbols are joined with '.' ("open.close").
    std::string format(const Word& w) const {
        std::string out;
        const bool compact = single_characters();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!compact && i > 0)
                out += '.';
            out += symbol(w[i]);
        }
        return out;
    }

    Word parse(std::string_view text) const {
        Word w;
        if (text.empty())
            return w;
        if (single_characters()) {
            for (char c : text)
                w.push_back(index(std::string_view(&c, 1)));
            return w;
        }
        std::size_t start = 0;
        while (true) {
            auto dot = text.find('.', start);
            w.push_back(index(text.substr(start, dot - start)));
            if (dot == std::string_view::npos)
                break;
            start = dot + 1;
        }
        return w;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

/// All words of length <= depth in length-lexicographic order.
inline std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t depth) {
    std::vector<Word> out{Word{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= depth; ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (std::size_t a = 0; a < alphabet_size; ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        level_begin = level_end;
        if (alphabet_size == 0)
            break;
    }
    return out;
}

} // namespace wfa
