#include "pcw/smallcanc.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace pcw::smallcanc {

FreeWord free_reduce(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (int letter : w) {
        if (letter == 0) continue;
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

FreeWord fw_inverse(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

FreeWord fw_concat(const FreeWord& a, const FreeWord& b) {
    FreeWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(out);
}

bool is_cyclically_reduced(const FreeWord& w) {
    if (free_reduce(w) != w) return false;
    if (w.size() >= 2 && w.front() == -w.back()) return false;
    return true;
}

std::string fw_str(const FreeWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int letter : w) {
        char base = letter > 0 ? 'a' : 'A';
        int idx = letter > 0 ? letter : -letter;
        s.push_back(static_cast<char>(base + idx - 1));
    }
    return s;
}

FreeWord fw_parse(const std::string& text) {
    FreeWord w;
    for (char c : text) {
        if (c == '1' || c == ' ') continue;
        if (c >= 'a' && c <= 'z')
            w.push_back(c - 'a' + 1);
        else if (c >= 'A' && c <= 'Z')
            w.push_back(-(c - 'A' + 1));
        else
            throw std::runtime_error(std::string("bad letter '") + c + "' in word");
    }
    return w;
}

std::vector<FreeWord> parse_word_lines(std::istream& in) {
    std::vector<FreeWord> words;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        words.push_back(fw_parse(line));
    }
    return words;
}

std::string format_word_lines(const std::vector<FreeWord>& words) {
    std::ostringstream os;
    for (const auto& w : words) os << fw_str(w) << "\n";
    return os.str();
}

std::vector<FreeWord> symmetrize(const std::vector<FreeWord>& relators) {
    if (relators.empty()) throw std::runtime_error("relator set must be nonempty");
    std::set<FreeWord> out;
    for (const auto& r : relators) {
        if (r.empty() || !is_cyclically_reduced(r)) throw NotCyclicallyReduced();
        for (const FreeWord& base : {r, fw_inverse(r)}) {
            FreeWord rot = base;
            for (std::size_t k = 0; k < base.size(); ++k) {
                out.insert(rot);
                std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            }
        }
    }
    return {out.begin(), out.end()};
}

std::size_t SmallCancPresentation::min_relator_len() const {
    std::size_t m = SIZE_MAX;
    for (const auto& r : relators) m = std::min(m, r.size());
    return m;
}

Rat check_metric(const SmallCancPresentation& p) {
    // Piece = maximal common prefix of two distinct symmetrized relators.
    const auto& sym = p.symmetrized;
    std::size_t max_piece = 0;
    for (std::size_t i = 0; i < sym.size(); ++i) {
        for (std::size_t j = i + 1; j < sym.size(); ++j) {
            std::size_t n = std::min(sym[i].size(), sym[j].size());
            std::size_t k = 0;
            while (k < n && sym[i][k] == sym[j][k]) ++k;
            max_piece = std::max(max_piece, k);
        }
    }
    Rat lambda(static_cast<long>(max_piece), static_cast<long>(p.min_relator_len()));
    lambda.canonicalize();
    return lambda;
}

SmallCancPresentation make_presentation(int alphabet_size, std::vector<FreeWord> relators) {
    SmallCancPresentation p;
    p.alphabet_size = alphabet_size;
    p.relators = std::move(relators);
    for (const auto& r : p.relators)
        for (int letter : r)
            if (letter == 0 || std::abs(letter) > alphabet_size)
                throw std::runtime_error("relator letter outside alphabet");
    p.symmetrized = symmetrize(p.relators);
    p.lambda = check_metric(p);
    p.verified = p.lambda < Rat(1, 6);
    return p;
}

FreeWord dehn_reduce(const SmallCancPresentation& p, const FreeWord& w) {
    if (!p.verified) throw MetricNotVerified();
    FreeWord cur = free_reduce(w);
    bool changed = true;
    while (changed && !cur.empty()) {
        changed = false;
        // Leftmost position; longest matching prefix of any symmetrized
        // relator that exceeds half that relator's length.
        for (std::size_t pos = 0; pos < cur.size() && !changed; ++pos) {
            std::size_t best_len = 0;
            const FreeWord* best_rel = nullptr;
            for (const auto& rel : p.symmetrized) {
                std::size_t limit = std::min(rel.size(), cur.size() - pos);
                std::size_t k = 0;
                while (k < limit && cur[pos + k] == rel[k]) ++k;
                if (2 * k > rel.size() && k > best_len) {
                    best_len = k;
                    best_rel = &rel;
                }
            }
            if (best_rel != nullptr) {
                // cur = u . prefix . v with prefix * suffix = relator = 1, so
                // prefix = suffix^-1; replace prefix by the shorter suffix^-1
                // ... i.e. by inverse of the remaining part of the relator.
                FreeWord suffix(best_rel->begin() + best_len, best_rel->end());
                FreeWord replacement = fw_inverse(suffix);
                FreeWord next(cur.begin(), cur.begin() + pos);
                next.insert(next.end(), replacement.begin(), replacement.end());
                next.insert(next.end(), cur.begin() + pos + best_len, cur.end());
                cur = free_reduce(next);
                changed = true;
            }
        }
    }
    return cur;
}

SmallCancPresentation generate_relator_set(int alphabet_size, int count, int min_len, Rng& rng) {
    if (alphabet_size < 2) throw std::runtime_error("alphabet_size must be >= 2");
    if (count < 1) throw std::runtime_error("count must be >= 1");

    // Proper powers are excluded: periodic relators collapse the symmetrized
    // set and sneak past the metric while adding torsion.
    auto is_proper_power = [](const FreeWord& w) {
        const std::size_t n = w.size();
        for (std::size_t d = 1; d <= n / 2; ++d) {
            if (n % d != 0) continue;
            bool periodic = true;
            for (std::size_t i = d; i < n && periodic; ++i) periodic = (w[i] == w[i - d]);
            if (periodic) return true;
        }
        return false;
    };

    auto random_cyclically_reduced = [&](int len) {
        FreeWord w;
        while (true) {
            w.clear();
            for (int k = 0; k < len; ++k) {
                int letter;
                do {
                    letter = static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet_size))) + 1;
                    if (rng.coin()) letter = -letter;
                } while (!w.empty() && letter == -w.back());
                w.push_back(letter);
            }
            if (is_cyclically_reduced(w) && !is_proper_power(w)) return w;
        }
    };

    std::vector<FreeWord> accepted;
    const int max_attempts = 20000;
    int attempts = 0;
    while (static_cast<int>(accepted.size()) < count) {
        if (++attempts > max_attempts) throw GenerationTimeout();
        FreeWord cand = random_cyclically_reduced(min_len);
        accepted.push_back(cand);
        SmallCancPresentation trial;
        try {
            trial = make_presentation(alphabet_size, accepted);
        } catch (const NotCyclicallyReduced&) {
            accepted.pop_back();
            continue;
        }
        if (!trial.verified)
            accepted.pop_back();
        else if (static_cast<int>(accepted.size()) == count)
            return trial;
    }
    throw GenerationTimeout();
}

FreeWord encode_bit(const SmallCancPresentation& p, int bit, Rng& rng) {
    if (!p.verified) throw MetricNotVerified();
    const int nrel = static_cast<int>(p.relators.size());

    // Shared structural sampling keeps bit-0 and bit-1 length distributions
    // aligned: the same (conjugate count, conjugator lengths, relator picks)
    // drive both branches.
    const int nconj = static_cast<int>(rng.below(3)) + 1;  // 1..3
    std::vector<int> conj_len(nconj), rel_idx(nconj), rel_sign(nconj);
    std::size_t target_len = 0;
    for (int k = 0; k < nconj; ++k) {
        conj_len[k] = static_cast<int>(rng.below(4));  // 0..3
        rel_idx[k] = static_cast<int>(rng.below(static_cast<std::uint64_t>(nrel)));
        rel_sign[k] = rng.coin() ? 1 : -1;
        target_len += 2 * static_cast<std::size_t>(conj_len[k]) + p.relators[rel_idx[k]].size();
    }

    auto random_word = [&](std::size_t len) {
        FreeWord w;
        while (w.size() < len) {
            int letter;
            do {
                letter = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.alphabet_size))) + 1;
                if (rng.coin()) letter = -letter;
            } while (!w.empty() && letter == -w.back());
            w.push_back(letter);
        }
        return w;
    };

    if (bit == 1) {
        for (int tries = 0; tries < 64; ++tries) {
            FreeWord out;
            for (int k = 0; k < nconj; ++k) {
                FreeWord x = random_word(static_cast<std::size_t>(conj_len[k]));
                FreeWord r = p.relators[rel_idx[k]];
                if (rel_sign[k] < 0) r = fw_inverse(r);
                out = fw_concat(out, fw_concat(fw_concat(x, r), fw_inverse(x)));
            }
            if (!out.empty()) return out;
        }
        // A bare relator is always trivial and nonempty.
        return p.relators[rel_idx[0]];
    }

    // bit == 0: random word of the matched length, nontrivial in the group.
    for (int tries = 0; tries < 256; ++tries) {
        FreeWord w = free_reduce(random_word(std::max<std::size_t>(target_len, 1)));
        if (w.empty()) continue;
        if (!dehn_reduce(p, w).empty()) return w;
    }
    throw std::runtime_error("could not sample a nontrivial codeword");
}

int decode_bit(const SmallCancPresentation& p, const FreeWord& w) {
    return dehn_reduce(p, w).empty() ? 1 : 0;
}

}  // namespace pcw::smallcanc
