#include "pcw/secret_sharing.hpp"

#include <algorithm>

namespace pcw::protocols {

using smallcanc::FreeWord;
using smallcanc::SmallCancPresentation;

namespace {

constexpr int kRelatorCount = 2;
constexpr int kRelatorLen = 16;
constexpr int kAlphabet = 4;

void check_bits(const std::string& bits) {
    if (bits.empty()) throw std::invalid_argument("secret must be a nonempty bitstring");
    for (char c : bits)
        if (c != '0' && c != '1') throw std::invalid_argument("secret must be over {0,1}");
}

std::vector<FreeWord> encode_bits(const SmallCancPresentation& p, const std::string& bits,
                                  Rng& rng) {
    std::vector<FreeWord> w;
    w.reserve(bits.size());
    for (char c : bits) w.push_back(smallcanc::encode_bit(p, c == '1' ? 1 : 0, rng));
    return w;
}

long mod_pow(long base, long e, long p) {
    long r = 1 % p;
    base %= p;
    if (base < 0) base += p;
    while (e > 0) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return r;
}

long mod_inv(long a, long p) { return mod_pow(a, p - 2, p); }  // p prime

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int bit_width(long v) {
    int k = 0;
    while (v > 0) {
        ++k;
        v >>= 1;
    }
    return std::max(k, 1);
}

}  // namespace

std::string xor_bits(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) throw std::invalid_argument("bitstring lengths differ");
    std::string out(a.size(), '0');
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] != b[i]) ? '1' : '0';
    return out;
}

std::string ss_decode_bits(const ShareBundle& share) {
    std::string bits;
    bits.reserve(share.codewords.size());
    for (const auto& w : share.codewords)
        bits.push_back(smallcanc::decode_bit(share.relators, w) ? '1' : '0');
    return bits;
}

std::vector<ShareBundle> ss_deal_nn(const std::string& secret_bits, int n, Rng& rng) {
    check_bits(secret_bits);
    if (n < 2) throw std::invalid_argument("(n,n) scheme needs n >= 2");

    // C = C_1 xor ... xor C_n with C_1..C_{n-1} uniform.
    std::vector<std::string> parts;
    std::string acc(secret_bits.size(), '0');
    for (int j = 0; j < n - 1; ++j) {
        std::string r(secret_bits.size(), '0');
        for (auto& c : r) c = rng.coin() ? '1' : '0';
        acc = xor_bits(acc, r);
        parts.push_back(std::move(r));
    }
    parts.push_back(xor_bits(acc, secret_bits));

    std::vector<ShareBundle> shares;
    for (int j = 1; j <= n; ++j) {
        ShareBundle s;
        s.participant = j;
        s.relators = smallcanc::generate_relator_set(kAlphabet, kRelatorCount, kRelatorLen, rng);
        s.codewords = encode_bits(s.relators, parts[j - 1], rng);
        shares.push_back(std::move(s));
    }
    return shares;
}

std::string ss_reconstruct_nn(const std::vector<ShareBundle>& shares) {
    if (shares.empty()) throw InsufficientShares();
    std::string acc(shares.front().codewords.size(), '0');
    for (const auto& s : shares) acc = xor_bits(acc, ss_decode_bits(s));
    return acc;
}

std::vector<ShareBundle> ss_deal_tn(long x, long p, int t, int n, Rng& rng) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (t < 1 || t > n || n >= p) throw std::invalid_argument("need 1 <= t <= n < p");
    if (x < 0 || x >= p) throw std::invalid_argument("secret must lie in [0, p)");

    // f of degree t-1 with f(0) = x.
    std::vector<long> coeff{x};
    for (int k = 1; k < t; ++k) coeff.push_back(static_cast<long>(rng.below(p)));

    const int k_bits = bit_width(p - 1);
    std::vector<ShareBundle> shares;
    for (int j = 1; j <= n; ++j) {
        long y = 0;
        for (int k = t - 1; k >= 0; --k) y = (y * j + coeff[k]) % p;
        std::string bits(k_bits, '0');
        for (int b = 0; b < k_bits; ++b)
            if ((y >> b) & 1) bits[b] = '1';  // little-endian bit order

        ShareBundle s;
        s.participant = j;
        s.relators = smallcanc::generate_relator_set(kAlphabet, kRelatorCount, kRelatorLen, rng);
        s.codewords = encode_bits(s.relators, bits, rng);
        shares.push_back(std::move(s));
    }
    return shares;
}

long ss_reconstruct_tn(const std::vector<ShareBundle>& shares, long p, int t) {
    if (static_cast<int>(shares.size()) < t) throw InsufficientShares();

    // Decode the first t shares, then Lagrange-interpolate at 0.
    long x = 0;
    for (int a = 0; a < t; ++a) {
        const auto& sa = shares[a];
        std::string bits = ss_decode_bits(sa);
        long y = 0;
        for (int b = static_cast<int>(bits.size()) - 1; b >= 0; --b)
            y = (y << 1) | (bits[b] == '1' ? 1 : 0);
        long lam = 1;
        for (int b = 0; b < t; ++b) {
            if (b == a) continue;
            long num = shares[b].participant % p;
            long den = (shares[b].participant - sa.participant) % p;
            if (den < 0) den += p;
            lam = (lam * num) % p;
            lam = (lam * mod_inv(den, p)) % p;
        }
        x = (x + y % p * lam) % p;
    }
    return x;
}

}  // namespace pcw::protocols
