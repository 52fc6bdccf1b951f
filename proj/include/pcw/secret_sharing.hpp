#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pcw/rng.hpp"
#include "pcw/smallcanc.hpp"

namespace pcw::protocols {

struct InsufficientShares : std::runtime_error {
    InsufficientShares() : std::runtime_error("not enough shares to reach the threshold") {}
};

// One participant's share: their private relator set plus the codewords the
// dealer sent over the open channel.
struct ShareBundle {
    int participant = 0;  // 1-based; also the Shamir evaluation point
    smallcanc::SmallCancPresentation relators;
    std::vector<smallcanc::FreeWord> codewords;  // one per secret bit
};

std::string xor_bits(const std::string& a, const std::string& b);

// (n,n) scheme: the secret bitstring is split into n random bitstrings with
// XOR equal to the secret; each split is encoded bitwise through that
// participant's word problem.
std::vector<ShareBundle> ss_deal_nn(const std::string& secret_bits, int n, Rng& rng);
std::string ss_reconstruct_nn(const std::vector<ShareBundle>& shares);

// (t,n) scheme: Shamir over Z_p. y_j = f(j) mod p is encoded bitwise through
// participant j's word problem; any t decoded shares interpolate f(0) = x.
std::vector<ShareBundle> ss_deal_tn(long x, long p, int t, int n, Rng& rng);
long ss_reconstruct_tn(const std::vector<ShareBundle>& shares, long p, int t);

// Decodes one participant's bits by solving their word problem.
std::string ss_decode_bits(const ShareBundle& share);

}  // namespace pcw::protocols
