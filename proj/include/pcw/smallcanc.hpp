#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pcw/numeric.hpp"
#include "pcw/rng.hpp"

namespace pcw::smallcanc {

struct NotCyclicallyReduced : std::runtime_error {
    NotCyclicallyReduced() : std::runtime_error("relator must be cyclically reduced") {}
};

struct MetricNotVerified : std::runtime_error {
    MetricNotVerified() : std::runtime_error("presentation does not satisfy C'(1/6)") {}
};

struct GenerationTimeout : std::runtime_error {
    GenerationTimeout() : std::runtime_error("could not sample a C'(1/6) relator set") {}
};

// Free word over alphabet a..z: letter +k is the k-th generator (1-based),
// -k its inverse.
using FreeWord = std::vector<int>;

FreeWord free_reduce(const FreeWord& w);
FreeWord fw_inverse(const FreeWord& w);
FreeWord fw_concat(const FreeWord& a, const FreeWord& b);
bool is_cyclically_reduced(const FreeWord& w);

// Text form: a..z generators, A..Z inverses, "1" for the empty word.
std::string fw_str(const FreeWord& w);
FreeWord fw_parse(const std::string& text);

// Relator-set / codeword files: one word per line, '#' comments allowed.
std::vector<FreeWord> parse_word_lines(std::istream& in);
std::string format_word_lines(const std::vector<FreeWord>& words);

// Closure of the relators under cyclic shifts and inversion, deduplicated.
// Every relator must be nonempty and cyclically reduced.
std::vector<FreeWord> symmetrize(const std::vector<FreeWord>& relators);

struct SmallCancPresentation {
    int alphabet_size = 0;
    std::vector<FreeWord> relators;
    std::vector<FreeWord> symmetrized;
    Rat lambda;  // max piece length / min relator length, exact
    bool verified = false;  // lambda < 1/6

    std::size_t min_relator_len() const;
};

// Builds the symmetrized set and computes the metric exactly.
SmallCancPresentation make_presentation(int alphabet_size, std::vector<FreeWord> relators);

// Exact max-piece / min-relator-length ratio over the symmetrized set.
Rat check_metric(const SmallCancPresentation& p);

// Dehn's algorithm: free-reduce, then replace any subword matching more than
// half of a symmetrized relator by the shorter complement, repeating until no
// replacement applies. For verified C'(1/6) input the result is empty iff w
// represents the identity. Deterministic scan: leftmost match position,
// longest match, lowest relator index.
FreeWord dehn_reduce(const SmallCancPresentation& p, const FreeWord& w);

// Rejection-samples cyclically reduced words of length min_len until the full
// set satisfies C'(1/6). Deterministic under the rng seed.
SmallCancPresentation generate_relator_set(int alphabet_size, int count, int min_len, Rng& rng);

// bit=1: freely reduced product of 1..3 conjugated relators (trivial in the
// group, nonempty as written). bit=0: random word of matching length
// distribution, verified nontrivial with dehn_reduce.
FreeWord encode_bit(const SmallCancPresentation& p, int bit, Rng& rng);
int decode_bit(const SmallCancPresentation& p, const FreeWord& w);

}  // namespace pcw::smallcanc
