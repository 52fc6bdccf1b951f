#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pcw/numeric.hpp"

namespace pcw {

// One syllable g_gen^exp; gen is 1-based, exp != 0.
struct Syllable {
    int gen = 0;
    Int exp;

    Syllable() = default;
    Syllable(int g, Int e) : gen(g), exp(std::move(e)) {}

    bool operator==(const Syllable& o) const { return gen == o.gen && exp == o.exp; }
};

struct MalformedWord : std::runtime_error {
    explicit MalformedWord(const std::string& what) : std::runtime_error(what) {}
};

// Word in the polycyclic generators, stored in freely reduced syllable form:
// adjacent syllables carry distinct generators and no exponent is zero.
class Word {
  public:
    Word() = default;

    static Word generator(int gen, Int exp = 1) {
        Word w;
        w.append(gen, std::move(exp));
        return w;
    }

    // Appends g_gen^exp, merging with the trailing syllable; drops zeros.
    void append(int gen, const Int& exp) {
        if (gen <= 0) throw MalformedWord("generator index must be positive");
        if (exp == 0) return;
        if (!syllables_.empty() && syllables_.back().gen == gen) {
            syllables_.back().exp += exp;
            if (syllables_.back().exp == 0) syllables_.pop_back();
            return;
        }
        syllables_.emplace_back(gen, exp);
    }

    void append(const Syllable& s) { append(s.gen, s.exp); }

    void append(const Word& w) {
        for (const auto& s : w.syllables_) append(s);
    }

    Word inverse() const {
        Word r;
        for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
            r.append(it->gen, -it->exp);
        return r;
    }

    Word operator*(const Word& o) const {
        Word r = *this;
        r.append(o);
        return r;
    }

    bool empty() const { return syllables_.empty(); }
    std::size_t size() const { return syllables_.size(); }
    const Syllable& operator[](std::size_t i) const { return syllables_[i]; }
    const std::vector<Syllable>& syllables() const { return syllables_; }

    // Letter count sum |exp_k|, the word length used by protocols and the
    // length-based attack.
    Int letter_length() const {
        Int n = 0;
        for (const auto& s : syllables_) n += abs(s.exp);
        return n;
    }

    int max_generator() const {
        int m = 0;
        for (const auto& s : syllables_) m = std::max(m, s.gen);
        return m;
    }

    bool operator==(const Word& o) const { return syllables_ == o.syllables_; }

    // Space-separated g<k>^<e> tokens; empty word prints as "1".
    std::string str() const {
        if (syllables_.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < syllables_.size(); ++i) {
            if (i) out.push_back(' ');
            out += "g" + std::to_string(syllables_[i].gen);
            if (syllables_[i].exp != 1) out += "^" + syllables_[i].exp.get_str();
        }
        return out;
    }

    // Parses the str() format. Accepts "1" or "" as the empty word and bare
    // g<k> tokens as exponent 1.
    static Word parse(const std::string& text);

  private:
    std::vector<Syllable> syllables_;
};

}  // namespace pcw
