#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcw/element.hpp"
#include "pcw/endomorphism.hpp"
#include "pcw/oracles.hpp"
#include "pcw/platform.hpp"
#include "pcw/rng.hpp"

namespace pcw::protocols {

// ---------------------------------------------------------------------------
// Anshel-Anshel-Goldfeld commutator key exchange

struct AagParams {
    int N1 = 5, N2 = 5;  // public set sizes
    int L1 = 2, L2 = 4;  // generator word lengths, 1 <= L1 <= L2
    int L = 5;           // private key factor count

    void validate() const {
        if (N1 < 1 || N2 < 1 || L < 1 || L1 < 1 || L1 > L2)
            throw std::invalid_argument("bad AAG parameters");
    }
};

struct DegenerateKey : std::runtime_error {
    DegenerateKey() : std::runtime_error("AAG produced an identity shared key") {}
};

struct AagPublic {
    PresentationPtr group;
    std::string group_name;
    AagParams params;
    std::uint64_t seed = 0;
    std::vector<GroupElement> a_gens;  // \bar A
    std::vector<GroupElement> b_gens;  // \bar B
    std::vector<GroupElement> a_conj;  // a'_i = B^-1 a_i B
    std::vector<GroupElement> b_conj;  // b'_j = A^-1 b_j A
};

struct AagPrivate {
    std::vector<std::pair<int, int>> alice_factors;  // (s_k 1-based, eps = +-1)
    std::vector<std::pair<int, int>> bob_factors;    // (t_k, delta)
    GroupElement alice_key;  // A
    GroupElement bob_key;    // B
    GroupElement kappa;      // shared key = kappa_A = [A, B]
};

struct AagTranscript {
    AagPublic pub;
    AagPrivate priv;
};

// Runs a full session. Both parties derive their key from the public
// conjugate tuples plus their own factor sequence; kappa_A = kappa_B^-1 and
// kappa_A = [A,B] are asserted on every run. An identity key triggers a
// redraw, up to max_retries, then DegenerateKey.
AagTranscript aag_run(const PlatformGroup& g, const AagParams& params, Rng& rng,
                      int max_retries = 16);

// Same, with caller-supplied public generator sets (tests plant these).
AagTranscript aag_run_with_sets(const PlatformGroup& g, std::vector<GroupElement> a_gens,
                                std::vector<GroupElement> b_gens, const AagParams& params,
                                Rng& rng, int max_retries = 16);

std::string aag_public_json(const AagPublic& pub);
std::string aag_private_json(const AagTranscript& t);
AagPublic aag_public_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Ko-Lee conjugacy Diffie-Hellman

struct NoCommutingPair : std::runtime_error {
    NoCommutingPair() : std::runtime_error("platform group lacks a commuting pair") {}
};

struct KoleeTranscript {
    GroupElement base;      // public g
    GroupElement ga, gb;    // exchanged g^a, g^b
    GroupElement a, b;      // private
    GroupElement key;       // g^{ab}; equality of both derivations asserted
};

KoleeTranscript kolee_run(const PlatformGroup& g, Rng& rng, int word_len = 6);

// ---------------------------------------------------------------------------
// Non-commutative ElGamal (Kahrobaei-Khan)

struct NonCommutingSubgroups : std::runtime_error {
    NonCommutingSubgroups() : std::runtime_error("S and T generators do not commute") {}
};

struct ElgamalCspTranscript {
    GroupElement b, c;  // Bob's public key, c = b^s
    GroupElement h, E;  // Alice's message, h = b^t, E = x^{c^t}
    GroupElement s, t, x;
    GroupElement recovered;  // Bob's x = E^{(c^t)^-1}
};

// S_gens/T_gens are generator index sets whose elements must commute
// pairwise across the sets (verified, else NonCommutingSubgroups).
ElgamalCspTranscript elgamal_csp(const PlatformGroup& g, const std::vector<int>& s_gens,
                                 const std::vector<int>& t_gens, Rng& rng);
// Convenience: uses the platform's commuting_pair.
ElgamalCspTranscript elgamal_csp(const PlatformGroup& g, Rng& rng);

// Re-runs Bob's recovery from transcript fields; true iff it returns x.
bool elgamal_csp_check(const ElgamalCspTranscript& t);

struct SolverExhausted : std::runtime_error {
    SolverExhausted() : std::runtime_error("CSP solver budget exhausted during recovery") {}
};

struct ElgamalPowerTranscript {
    GroupElement g_elem;   // Bob's random g
    Int n, m;              // private exponents
    GroupElement s, t, x;  // privates (x = shared secret)
    GroupElement v, w;     // public key: v = g^n, w = s^-1 g s
    GroupElement h, E;     // message: h = t^-1 w^m t, E = x^-1 (t^-1 v^m t) x
    GroupElement e_prime;  // s h^n s^-1; equality with t^-1 v^m t asserted
    GroupElement recovered;  // x' with E = x'^-1 E' x'
};

ElgamalPowerTranscript elgamal_power(const PlatformGroup& g, const std::vector<int>& s_gens,
                                     const std::vector<int>& t_gens,
                                     const oracles::SearchBudget& budget, Rng& rng);
ElgamalPowerTranscript elgamal_power(const PlatformGroup& g,
                                     const oracles::SearchBudget& budget, Rng& rng);

// ---------------------------------------------------------------------------
// Kahrobaei-Koupparis digital signature

struct NoCertifiedElement : std::runtime_error {
    NoCertifiedElement()
        : std::runtime_error("platform supplies no certified self-centralizing element") {}
};

struct FactorReuse : std::runtime_error {
    FactorReuse() : std::runtime_error("signature key exhausted; regenerate s and n") {}
};

struct SigPublic {
    PresentationPtr group;
    GroupElement x;  // (g^n)^s
    Int n;
    std::vector<Int> used_factors;  // public list of spent n_i
};

struct SignatureKeypair {
    SigPublic pub;
    GroupElement base;  // certified g
    GroupElement s;     // private
    int signatures_issued = 0;
};

struct Signature {
    GroupElement y;
    GroupElement alpha;
    Int n_j;
};

inline constexpr long kSignatureN = 720;      // 2^4 * 3^2 * 5, 30 divisors
inline constexpr int kSignatureLifetime = 8;  // max signatures per keypair

// Digest chunks reduced to exponents in [-4, 4] per generator (then mod r_i
// for finite orders); the H: {0,1}* -> G of the scheme.
GroupElement hash_to_group(const PresentationPtr& g, const std::string& data);

SignatureKeypair sig_keygen(const PlatformGroup& g, Rng& rng);
// Signs message bytes; verifies the identity y^{n_j alpha} = x^{h y} before
// returning. Throws FactorReuse once the keypair lifetime is spent.
Signature sig_sign(SignatureKeypair& kp, const std::string& message, Rng& rng);
bool sig_verify(const SigPublic& pub, const std::string& message, const Signature& sig);

// ---------------------------------------------------------------------------
// Shpilrain-Ushakov twisted-conjugacy authentication

struct TwistedAuthKey {
    GroupElement s;     // private
    GroupElement w, t;  // public, t = psi(s^-1) w phi(s)
};

struct TwistedAuthResult {
    bool accepted = true;
    int rounds = 0;
    int failed_round = -1;  // first round the verifier rejected, -1 if none
};

TwistedAuthKey twisted_auth_keygen(const PlatformGroup& g, const Endomorphism& phi,
                                   const Endomorphism& psi, Rng& rng);

// Honest prover: accepted in all k rounds (forgery odds for a prover without
// s are 2^-k).
TwistedAuthResult twisted_auth_session(const PlatformGroup& g, const Endomorphism& phi,
                                       const Endomorphism& psi, int rounds, Rng& rng);

// Prover without s who guesses each challenge bit; passes a round iff the
// guess was right.
TwistedAuthResult twisted_auth_cheater(const PlatformGroup& g, const Endomorphism& phi,
                                       const Endomorphism& psi, int rounds, Rng& rng);

}  // namespace pcw::protocols
