#include "pcw/element.hpp"

#include <sstream>

namespace pcw {

static void require_same_group(const GroupElement& a, const GroupElement& b) {
    if (a.group().get() != b.group().get()) throw GroupMismatch();
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    return GroupElement(a.group(), a.group()->collect_onto(a.exps(), b.word()));
}

GroupElement inv(const GroupElement& a) {
    return GroupElement(a.group(), a.group()->collect(a.word().inverse()));
}

GroupElement conjugate(const GroupElement& a, const GroupElement& x) {
    require_same_group(a, x);
    Word w = x.word().inverse();
    w.append(a.word());
    w.append(x.word());
    return GroupElement(a.group(), a.group()->collect(w));
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    Word w = a.word().inverse();
    w.append(b.word().inverse());
    w.append(a.word());
    w.append(b.word());
    return GroupElement(a.group(), a.group()->collect(w));
}

GroupElement power(const GroupElement& a, const Int& n) {
    if (n == 0) return GroupElement::identity(a.group());
    GroupElement base = n > 0 ? a : inv(a);
    Int k = abs(n);
    // Square-and-multiply keeps collection calls logarithmic in |n|.
    GroupElement acc = GroupElement::identity(a.group());
    GroupElement sq = base;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, sq);
        k >>= 1;
        if (k > 0) sq = mul(sq, sq);
    }
    return acc;
}

std::pair<Word, GroupElement> random_element(const PresentationPtr& g, long len_min,
                                             long len_max, Rng& rng) {
    if (len_min < 0 || len_min > len_max)
        throw BadRange("need 0 <= len_min <= len_max");
    const int n = g->ngens();
    if (n == 0 || len_max == 0) {
        Word w;
        return {w, GroupElement::identity(g)};
    }
    long len = len_min + rng.range(0, len_max - len_min);
    Word w;
    int last_gen = 0;
    int last_sign = 0;
    for (long k = 0; k < len; ++k) {
        int gen, sig;
        do {
            gen = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
            sig = rng.sign();
        } while (gen == last_gen && sig == -last_sign);
        w.append(gen, Int(sig));
        last_gen = gen;
        last_sign = sig;
    }
    return {w, GroupElement::from_word(g, w)};
}

ConsistencyVerdict check_consistency(const PresentationPtr& g, int trials, Rng& rng) {
    if (trials < 1) throw BadRange("trials must be >= 1");
    const int n = g->ngens();

    // Relation re-collection: g_i * u_ij * g_i^-1 must collect back to g_j,
    // and symmetrically for the negative relation.
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (bool pos : {true, false}) {
                Word w = Word::generator(i, pos ? 1 : -1);
                w.append(g->conjugate_word(i, j, pos));
                w.append(i, pos ? -1 : 1);
                std::vector<Int> got;
                try {
                    got = g->collect(w);
                } catch (const BudgetExceeded&) {
                    return {false, "budget exceeded re-collecting relation (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")"};
                }
                std::vector<Int> want(n, 0);
                want[j - 1] = 1;
                if (got != want) {
                    std::ostringstream os;
                    os << "conj " << (pos ? "+" : "-") << " " << i << " " << j
                       << " relation fails mutual-inverse re-collection: got " << join_exps(got);
                    return {false, os.str()};
                }
            }
        }
        // Power overlap: w_ii * g_i must equal g_i * w_ii.
        if (const Word* pw = g->power_word(i)) {
            Word left = *pw;
            left.append(i, 1);
            Word right = Word::generator(i);
            right.append(*pw);
            if (g->collect(left) != g->collect(right)) {
                return {false, "power relation for g" + std::to_string(i) +
                                   " fails overlap g_i^(r_i) * g_i = g_i * g_i^(r_i)"};
            }
        }
    }

    for (int t = 0; t < trials; ++t) {
        auto [wa, a] = random_element(g, 1, 6, rng);
        auto [wb, b] = random_element(g, 1, 6, rng);
        auto [wc, c] = random_element(g, 1, 6, rng);
        GroupElement left = mul(mul(a, b), c);
        GroupElement right = mul(a, mul(b, c));
        if (left != right) {
            std::ostringstream os;
            os << "associativity fails on words (" << wa.str() << ", " << wb.str() << ", "
               << wc.str() << "): " << join_exps(left.exps()) << " vs "
               << join_exps(right.exps());
            return {false, os.str()};
        }
    }
    return {true, ""};
}

}  // namespace pcw
