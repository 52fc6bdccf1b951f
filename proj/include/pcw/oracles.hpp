#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcw/element.hpp"
#include "pcw/endomorphism.hpp"
#include "pcw/word.hpp"

namespace pcw::oracles {

struct SearchBudget {
    long max_nodes = 100000;
    int max_radius = 8;
};

// Exhaustive-search outcome. A Found witness has been re-verified against its
// defining equation before being returned; Exhausted reports how far the
// search got.
struct OracleResult {
    bool found = false;
    Word witness;                       // conjugator word (CSP / twisted)
    std::optional<Int> exponent;        // power CSP n
    long nodes_explored = 0;
    int radius_reached = 0;
};

// Breadth-first search over conjugator words (deduplicated by normal form)
// for one simultaneous conjugator: conjugate(a_i, c) == b_i for every pair.
// BFS by word length yields a minimum-length witness. Traversal order is
// fixed: generator index ascending, +1 before -1.
OracleResult csp_enumerate(const PresentationPtr& g,
                           const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                           const SearchBudget& budget);

// Finds (n >= 1, c) with a^n = conjugate(b, c), dovetailing n against the
// BFS radius so neither direction starves.
OracleResult power_csp_enumerate(const PresentationPtr& g, const GroupElement& a,
                                 const GroupElement& b, const SearchBudget& budget);

// Finds a with t = psi(a^-1) * w * phi(a). phi and psi must be verified
// endomorphisms. Single-twisted is psi = identity.
OracleResult twisted_csp_enumerate(const PresentationPtr& g, const GroupElement& w,
                                   const GroupElement& t, const Endomorphism& phi,
                                   const Endomorphism& psi, const SearchBudget& budget);

}  // namespace pcw::oracles
