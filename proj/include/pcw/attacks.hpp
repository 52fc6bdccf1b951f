#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcw/matrix.hpp"
#include "pcw/platform.hpp"
#include "pcw/protocols.hpp"

namespace pcw::attacks {

// Which party's conjugator the attack goes after. Attacking Alice conjugates
// the b-tuple by Alice's public set; attacking Bob is the mirror image.
enum class Side { Alice, Bob };

struct LbaConfig {
    int memory = 2;            // beam width M
    long max_iterations = 10000;
    long time_budget_ms = 0;   // 0 = unlimited; checked between iterations
};

// Letter of a word over a public generator SET (not group generators).
struct SetLetter {
    int index = 0;  // 1-based position in the attacked set
    int sign = 1;
};

struct LbaResult {
    bool success = false;
    std::vector<SetLetter> conjugator;  // recovered private-key word
    std::optional<GroupElement> conjugator_elem;
    long iterations = 0;
    std::size_t peak_set_size = 0;
    long conjugations = 0;  // cooperative work counter
};

// The beam search of "LBA with Memory M", run literally: every beam element
// is expanded by all conjugations of the attacked set, candidates are sorted
// by tuple length (ties: lexicographic tuple serialization, then word), and
// the smallest M survive. Any Success is re-verified against the transcript
// before being reported.
LbaResult lba(const protocols::AagPublic& pub, Side side, const LbaConfig& cfg);

std::string lba_result_json(const LbaResult& r);

// ---------------------------------------------------------------------------
// Field-based attack: exact linear algebra on a matrix image

struct FieldAttackResult {
    bool success = false;
    std::string failure;  // "singular_system" or "unsupported_rep" when !success
    std::optional<GroupElement> key;  // recovered shared key kappa
    MatQ key_matrix;
    int span_dim = 0;
    int solution_dim = 0;
};

// Solves the stacked conjugacy system u_i X = X u'_i over the rational span
// of the victim-set subgroup's matrix image, picks an invertible solution,
// and telescopes it against the primed generators to produce the shared key.
// Wholly deterministic and exact. Failures are reported (never guessed):
// "singular_system" when no invertible solution exists in the span.
FieldAttackResult field_based_attack(const protocols::AagPublic& pub, const MatrixRep& rep,
                                     Side side = Side::Alice);

std::string field_result_json(const FieldAttackResult& r);

}  // namespace pcw::attacks
