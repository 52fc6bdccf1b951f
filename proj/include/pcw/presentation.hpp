#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcw/numeric.hpp"
#include "pcw/word.hpp"

namespace pcw {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct PresentationError : std::runtime_error {
    explicit PresentationError(const std::string& what) : std::runtime_error(what) {}
};

// Default rewrite-step cap for one collection; pathological presentations
// surface as BudgetExceeded instead of a hang.
inline constexpr long kDefaultCollectBudget = 10'000'000L;

// Polycyclic presentation
//   < g_1..g_n | g_j^{g_i} = u_ij, g_j^{g_i^-1} = v_ij (i<j),
//                g_i^{r_i} = w_ii (i in I) >
// where every u_ij, v_ij, w_ii is a word in generators of index > i.
// Missing conjugation relations mean g_j^{g_i^&pm;1} = g_j.
class PcPresentation {
  public:
    // orders[i-1] == 0 marks infinite relative order, otherwise r_i >= 2.
    explicit PcPresentation(std::vector<Int> orders);

    int ngens() const { return ngens_; }
    const std::vector<Int>& orders() const { return orders_; }
    bool finite_order(int gen) const { return orders_[gen - 1] != 0; }
    const Int& order(int gen) const { return orders_[gen - 1]; }

    // Relation installers; words are validated (indices in (i, ngens]).
    void set_conjugate(int i, int j, bool positive, const Word& w);
    void set_power(int i, const Word& w);

    bool has_conjugate(int i, int j, bool positive) const;
    // Defaults to g_j when the relation is absent (commuting pair).
    Word conjugate_word(int i, int j, bool positive) const;
    const Word* power_word(int i) const;  // null when i has infinite order

    // Count of infinite relative orders.
    int hirsch_length() const;

    // Collects w to its unique normal form exponent vector. Collection from
    // the left: the accumulator holds the collected prefix and the leftmost
    // uncollected syllable is rewritten first. `budget` caps rewrite steps.
    std::vector<Int> collect(const Word& w, long budget = kDefaultCollectBudget) const;

    // Collect starting from a normal form, multiplying word syllables in.
    std::vector<Int> collect_onto(std::vector<Int> exps, const Word& w,
                                  long budget = kDefaultCollectBudget) const;

    Word word_of(const std::vector<Int>& exps) const;

    std::string describe() const;

    // Structural equality: same orders and relator words.
    bool operator==(const PcPresentation& o) const;

    // Relation texture used by the collector fast paths.
    enum class RelKind : unsigned char {
        Trivial,      // g_j^{g_i^s} = g_j
        CentralTail,  // g_j^{g_i^s} = g_j * g_c^t with g_c commuting with g_i and g_j
        AbelianWord,  // relator letters pairwise commute: (u)^a scales exponents
        General,
    };

  private:
    struct ConjRel {
        RelKind kind = RelKind::Trivial;
        Word word;     // full relator word (empty for Trivial)
        int tail_gen = 0;
        Int tail_exp;  // CentralTail data
    };

    std::size_t pair_index(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * ngens_ + (j - 1);
    }
    const ConjRel& rel(int i, int j, bool positive) const {
        return (positive ? conj_pos_ : conj_neg_)[pair_index(i, j)];
    }
    void classify_all();
    bool commutes(int i, int j) const;  // both stored relator words trivial

    int ngens_;
    std::vector<Int> orders_;
    std::vector<ConjRel> conj_pos_;
    std::vector<ConjRel> conj_neg_;
    std::vector<std::optional<Word>> powers_;
    std::vector<bool> pow_abelian_;  // power-word letters pairwise commute
};

using PresentationPtr = std::shared_ptr<const PcPresentation>;

// Text format "pcgroup v1" (see README). Throws PresentationError with a
// line number on malformed input, duplicate relations, or bad indices.
PcPresentation parse_presentation(std::istream& in);
PcPresentation parse_presentation_file(const std::string& path);
std::string format_presentation(const PcPresentation& p);

}  // namespace pcw
