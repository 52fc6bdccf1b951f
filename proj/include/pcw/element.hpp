#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcw/presentation.hpp"
#include "pcw/rng.hpp"

namespace pcw {

struct GroupMismatch : std::runtime_error {
    GroupMismatch() : std::runtime_error("elements belong to different groups") {}
};

struct BadRange : std::runtime_error {
    explicit BadRange(const std::string& what) : std::runtime_error(what) {}
};

// Element in collected normal form. Equality is exponent-vector equality
// within one presentation (compared by presentation identity).
class GroupElement {
  public:
    GroupElement() = default;
    GroupElement(PresentationPtr group, std::vector<Int> exps)
        : group_(std::move(group)), exps_(std::move(exps)) {}

    static GroupElement identity(const PresentationPtr& g) {
        return GroupElement(g, std::vector<Int>(g->ngens(), 0));
    }
    static GroupElement from_word(const PresentationPtr& g, const Word& w,
                                  long budget = kDefaultCollectBudget) {
        return GroupElement(g, g->collect(w, budget));
    }

    const PresentationPtr& group() const { return group_; }
    const std::vector<Int>& exps() const { return exps_; }
    bool is_identity() const {
        for (const auto& e : exps_)
            if (e != 0) return false;
        return true;
    }

    Word word() const { return group_->word_of(exps_); }

    // Normal-form length: sum of |exps[i]| (the word metric the attacks use).
    Int length() const {
        Int n = 0;
        for (const auto& e : exps_) n += abs(e);
        return n;
    }

    // Exponent equality; presentations compared by identity first, then
    // structurally (covers elements rebuilt from serialized transcripts).
    bool operator==(const GroupElement& o) const {
        if (exps_ != o.exps_) return false;
        if (group_.get() == o.group_.get()) return true;
        return group_ && o.group_ && *group_ == *o.group_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    // Canonical serialization "e1,e2,...,en"; also the f: G -> {0,1}* used by
    // the signature scheme.
    std::string str() const { return join_exps(exps_); }

  private:
    PresentationPtr group_;
    std::vector<Int> exps_;
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
// a^x = x^-1 a x.
GroupElement conjugate(const GroupElement& a, const GroupElement& x);
// [a,b] = a^-1 b^-1 a b.
GroupElement commutator(const GroupElement& a, const GroupElement& b);
// a^n for any integer n (n <= 0 allowed).
GroupElement power(const GroupElement& a, const Int& n);

// Uniformly random freely reduced word whose letter count is uniform in
// [len_min, len_max]; letters are uniform over the 2n signed generators with
// the single constraint that no letter cancels its predecessor (so marginal
// letter frequencies stay uniform). Returns the word and its normal form.
std::pair<Word, GroupElement> random_element(const PresentationPtr& g, long len_min,
                                             long len_max, Rng& rng);

struct ConsistencyVerdict {
    bool consistent = true;
    std::string witness;  // human-readable description of a failing instance
};

// Randomized consistency check: associativity on random triples plus
// re-collection of the defining relations (mutual-inverse of conj +/- and
// power overlap). Trusted built-in constructors skip this.
ConsistencyVerdict check_consistency(const PresentationPtr& g, int trials, Rng& rng);

}  // namespace pcw
