#include "pcw/protocols.hpp"

#include <json.hpp>

#include "pcw/sha256.hpp"

namespace pcw::protocols {

using ordered_json = nlohmann::ordered_json;

namespace {

// The algebraic identities below are theorems for honest runs; a violation
// means the implementation is broken, not the input.
[[noreturn]] void protocol_broken(const char* what) {
    throw std::logic_error(std::string("protocol invariant violated: ") + what);
}

GroupElement random_subgroup_word(const PlatformGroup& g, const std::vector<int>& gens,
                                  int len, Rng& rng) {
    Word w;
    for (int k = 0; k < len; ++k) {
        int idx = gens[rng.below(gens.size())];
        w.append(idx, Int(rng.sign()));
    }
    return g.elem(w);
}

}  // namespace

// ---------------------------------------------------------------------------
// AAG

static AagTranscript aag_attempt(const PlatformGroup& g, std::vector<GroupElement> a_gens,
                                 std::vector<GroupElement> b_gens, const AagParams& params,
                                 Rng& rng) {
    AagTranscript t;
    t.pub.group = g.presentation;
    t.pub.group_name = g.name;
    t.pub.params = params;
    t.pub.a_gens = std::move(a_gens);
    t.pub.b_gens = std::move(b_gens);

    // Private factor sequences.
    auto draw_factors = [&](int count, int max_idx) {
        std::vector<std::pair<int, int>> f;
        for (int k = 0; k < count; ++k)
            f.emplace_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(max_idx))) + 1,
                           rng.sign());
        return f;
    };
    t.priv.alice_factors = draw_factors(params.L, params.N1);
    t.priv.bob_factors = draw_factors(params.L, params.N2);

    auto assemble = [](const std::vector<GroupElement>& gens,
                       const std::vector<std::pair<int, int>>& factors) {
        GroupElement acc = GroupElement::identity(gens.front().group());
        for (const auto& [idx, eps] : factors) {
            const GroupElement& base = gens[idx - 1];
            acc = mul(acc, eps > 0 ? base : inv(base));
        }
        return acc;
    };
    t.priv.alice_key = assemble(t.pub.a_gens, t.priv.alice_factors);
    t.priv.bob_key = assemble(t.pub.b_gens, t.priv.bob_factors);
    const GroupElement& A = t.priv.alice_key;
    const GroupElement& B = t.priv.bob_key;

    t.pub.a_conj.clear();
    t.pub.b_conj.clear();
    for (const auto& a : t.pub.a_gens) t.pub.a_conj.push_back(conjugate(a, B));
    for (const auto& b : t.pub.b_gens) t.pub.b_conj.push_back(conjugate(b, A));

    // Alice: kappa_A = A^-1 * prod (a'_{s_k})^{eps_k}, from public a' only.
    GroupElement prod_a = assemble(t.pub.a_conj, t.priv.alice_factors);
    GroupElement kappa_a = mul(inv(A), prod_a);
    // Bob: kappa_B = B^-1 * prod (b'_{t_k})^{delta_k}.
    GroupElement prod_b = assemble(t.pub.b_conj, t.priv.bob_factors);
    GroupElement kappa_b = mul(inv(B), prod_b);

    if (mul(kappa_a, kappa_b) != GroupElement::identity(g.presentation))
        protocol_broken("kappa_A * kappa_B != 1");
    if (kappa_a != commutator(A, B)) protocol_broken("kappa_A != [A,B]");

    t.priv.kappa = kappa_a;
    return t;
}

AagTranscript aag_run_with_sets(const PlatformGroup& g, std::vector<GroupElement> a_gens,
                                std::vector<GroupElement> b_gens, const AagParams& params,
                                Rng& rng, int max_retries) {
    params.validate();
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        AagTranscript t = aag_attempt(g, a_gens, b_gens, params, rng);
        if (!t.priv.kappa.is_identity()) return t;
    }
    throw DegenerateKey();
}

AagTranscript aag_run(const PlatformGroup& g, const AagParams& params, Rng& rng,
                      int max_retries) {
    params.validate();
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::vector<GroupElement> a_gens, b_gens;
        for (int i = 0; i < params.N1; ++i)
            a_gens.push_back(random_element(g.presentation, params.L1, params.L2, rng).second);
        for (int j = 0; j < params.N2; ++j)
            b_gens.push_back(random_element(g.presentation, params.L1, params.L2, rng).second);
        AagTranscript t = aag_attempt(g, std::move(a_gens), std::move(b_gens), params, rng);
        if (!t.priv.kappa.is_identity()) return t;
    }
    throw DegenerateKey();
}

static ordered_json element_json(const GroupElement& e) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : e.exps()) arr.push_back(v.get_str());
    return arr;
}

static GroupElement element_from_json(const PresentationPtr& g, const ordered_json& arr) {
    std::vector<Int> exps;
    for (const auto& v : arr) exps.emplace_back(v.get<std::string>());
    if (static_cast<int>(exps.size()) != g->ngens())
        throw std::runtime_error("element entry has wrong arity");
    return GroupElement(g, std::move(exps));
}

std::string aag_public_json(const AagPublic& pub) {
    ordered_json j;
    j["schema"] = "pcw-aag-public/1";
    j["group_name"] = pub.group_name;
    j["presentation"] = format_presentation(*pub.group);
    j["params"] = {{"N1", pub.params.N1},
                   {"N2", pub.params.N2},
                   {"L1", pub.params.L1},
                   {"L2", pub.params.L2},
                   {"L", pub.params.L}};
    j["seed"] = pub.seed;
    auto dump = [&](const std::vector<GroupElement>& v) {
        ordered_json arr = ordered_json::array();
        for (const auto& e : v) arr.push_back(element_json(e));
        return arr;
    };
    j["a_gens"] = dump(pub.a_gens);
    j["b_gens"] = dump(pub.b_gens);
    j["a_conj"] = dump(pub.a_conj);
    j["b_conj"] = dump(pub.b_conj);
    return j.dump(2) + "\n";
}

std::string aag_private_json(const AagTranscript& t) {
    ordered_json j;
    j["schema"] = "pcw-aag-private/1";
    auto factors = [&](const std::vector<std::pair<int, int>>& f) {
        ordered_json arr = ordered_json::array();
        for (const auto& [idx, eps] : f) arr.push_back({{"index", idx}, {"sign", eps}});
        return arr;
    };
    j["alice_factors"] = factors(t.priv.alice_factors);
    j["bob_factors"] = factors(t.priv.bob_factors);
    j["alice_key"] = element_json(t.priv.alice_key);
    j["bob_key"] = element_json(t.priv.bob_key);
    j["kappa"] = element_json(t.priv.kappa);
    return j.dump(2) + "\n";
}

AagPublic aag_public_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != "pcw-aag-public/1")
        throw std::runtime_error("unexpected transcript schema");
    AagPublic pub;
    pub.group_name = j.at("group_name").get<std::string>();
    {
        std::istringstream in(j.at("presentation").get<std::string>());
        pub.group = std::make_shared<PcPresentation>(parse_presentation(in));
    }
    pub.params.N1 = j.at("params").at("N1").get<int>();
    pub.params.N2 = j.at("params").at("N2").get<int>();
    pub.params.L1 = j.at("params").at("L1").get<int>();
    pub.params.L2 = j.at("params").at("L2").get<int>();
    pub.params.L = j.at("params").at("L").get<int>();
    pub.seed = j.at("seed").get<std::uint64_t>();
    auto load = [&](const char* key) {
        std::vector<GroupElement> v;
        for (const auto& e : j.at(key)) v.push_back(element_from_json(pub.group, e));
        return v;
    };
    pub.a_gens = load("a_gens");
    pub.b_gens = load("b_gens");
    pub.a_conj = load("a_conj");
    pub.b_conj = load("b_conj");
    return pub;
}

// ---------------------------------------------------------------------------
// Ko-Lee

KoleeTranscript kolee_run(const PlatformGroup& g, Rng& rng, int word_len) {
    if (!g.commuting_pair) throw NoCommutingPair();
    const auto& [sub_a, sub_b] = *g.commuting_pair;

    KoleeTranscript t;
    t.base = random_element(g.presentation, 1, std::max(1, word_len), rng).second;
    t.a = random_subgroup_word(g, sub_a, word_len, rng);
    t.b = random_subgroup_word(g, sub_b, word_len, rng);
    t.ga = conjugate(t.base, t.a);
    t.gb = conjugate(t.base, t.b);

    GroupElement alice = conjugate(t.gb, t.a);  // (g^b)^a
    GroupElement bob = conjugate(t.ga, t.b);    // (g^a)^b
    if (alice != bob) protocol_broken("Ko-Lee keys disagree");
    t.key = alice;
    return t;
}

// ---------------------------------------------------------------------------
// ElGamal via conjugacy search

static void verify_commuting_sets(const PlatformGroup& g, const std::vector<int>& s_gens,
                                  const std::vector<int>& t_gens) {
    for (int i : s_gens)
        for (int j : t_gens)
            if (!commutator(g.gen(i), g.gen(j)).is_identity()) throw NonCommutingSubgroups();
}

ElgamalCspTranscript elgamal_csp(const PlatformGroup& g, const std::vector<int>& s_gens,
                                 const std::vector<int>& t_gens, Rng& rng) {
    verify_commuting_sets(g, s_gens, t_gens);

    ElgamalCspTranscript t;
    t.s = random_subgroup_word(g, s_gens, 4, rng);
    t.t = random_subgroup_word(g, t_gens, 4, rng);
    t.b = random_element(g.presentation, 1, 6, rng).second;
    t.c = conjugate(t.b, t.s);
    t.x = random_element(g.presentation, 1, 6, rng).second;
    t.h = conjugate(t.b, t.t);
    GroupElement ct = conjugate(t.c, t.t);
    t.E = conjugate(t.x, ct);

    // Bob: h^s = c^t, then x = E^{(c^t)^-1}.
    GroupElement hs = conjugate(t.h, t.s);
    if (hs != ct) protocol_broken("ElGamal h^s != c^t");
    t.recovered = conjugate(t.E, inv(hs));
    if (t.recovered != t.x) protocol_broken("ElGamal recovery failed on honest run");
    return t;
}

ElgamalCspTranscript elgamal_csp(const PlatformGroup& g, Rng& rng) {
    if (!g.commuting_pair) throw NoCommutingPair();
    return elgamal_csp(g, g.commuting_pair->first, g.commuting_pair->second, rng);
}

bool elgamal_csp_check(const ElgamalCspTranscript& t) {
    GroupElement hs = conjugate(t.h, t.s);
    return conjugate(t.E, inv(hs)) == t.x;
}

// ---------------------------------------------------------------------------
// ElGamal via power conjugacy search

ElgamalPowerTranscript elgamal_power(const PlatformGroup& g, const std::vector<int>& s_gens,
                                     const std::vector<int>& t_gens,
                                     const oracles::SearchBudget& budget, Rng& rng) {
    verify_commuting_sets(g, s_gens, t_gens);

    ElgamalPowerTranscript t;
    t.s = random_subgroup_word(g, s_gens, 3, rng);
    t.t = random_subgroup_word(g, t_gens, 3, rng);
    t.g_elem = random_element(g.presentation, 1, 4, rng).second;
    t.n = Int(rng.range(1, 3));
    t.m = Int(rng.range(1, 3));
    // Shared secret kept short so the receiver's CSP stays inside budget.
    t.x = random_element(g.presentation, 1, 2, rng).second;

    // Public key: v = g^n, w = s^-1 g s (so w^n = s^-1 v s).
    t.v = power(t.g_elem, t.n);
    t.w = conjugate(t.g_elem, t.s);
    // Message: h = t^-1 w^m t, E = x^-1 (t^-1 v^m t) x.
    GroupElement wm = power(t.w, t.m);
    t.h = conjugate(wm, t.t);
    GroupElement vm_t = conjugate(power(t.v, t.m), t.t);
    t.E = conjugate(vm_t, t.x);

    // Receiver: E' = s h^n s^-1 must equal t^-1 v^m t.
    t.e_prime = mul(mul(t.s, power(t.h, t.n)), inv(t.s));
    if (t.e_prime != vm_t) protocol_broken("ElGamal power: E' != t^-1 v^m t");

    // E = x^-1 E' x: conjugacy search recovers some x'.
    auto res = oracles::csp_enumerate(g.presentation, {{t.e_prime, t.E}}, budget);
    if (!res.found) throw SolverExhausted();
    t.recovered = GroupElement::from_word(g.presentation, res.witness);
    if (conjugate(t.e_prime, t.recovered) != t.E)
        protocol_broken("ElGamal power: recovered witness fails equation");
    return t;
}

ElgamalPowerTranscript elgamal_power(const PlatformGroup& g,
                                     const oracles::SearchBudget& budget, Rng& rng) {
    if (!g.commuting_pair) throw NoCommutingPair();
    return elgamal_power(g, g.commuting_pair->first, g.commuting_pair->second, budget, rng);
}

// ---------------------------------------------------------------------------
// Signature scheme

GroupElement hash_to_group(const PresentationPtr& g, const std::string& data) {
    Word w;
    const int n = g->ngens();
    std::string block = data;
    int produced = 0;
    int round = 0;
    while (produced < n) {
        auto digest = sha256(block + "#" + std::to_string(round++));
        for (std::size_t k = 0; k < digest.size() && produced < n; ++k) {
            int e = static_cast<int>(digest[k] % 9) - 4;  // [-4, 4]
            ++produced;
            if (e != 0) w.append(produced, Int(e));
        }
    }
    return GroupElement::from_word(g, w);
}

static std::vector<Int> divisors_of(long n) {
    std::vector<Int> d;
    for (long k = 1; k <= n; ++k)
        if (n % k == 0) d.emplace_back(k);
    return d;
}

SignatureKeypair sig_keygen(const PlatformGroup& g, Rng& rng) {
    if (!g.certified_base) throw NoCertifiedElement();
    SignatureKeypair kp;
    kp.pub.group = g.presentation;
    kp.pub.n = kSignatureN;
    kp.base = g.gen(*g.certified_base);
    do {
        kp.s = random_element(g.presentation, 2, 6, rng).second;
    } while (kp.s.is_identity());
    kp.pub.x = conjugate(power(kp.base, kp.pub.n), kp.s);
    if (kp.pub.x.is_identity()) protocol_broken("signature public key is trivial");
    return kp;
}

Signature sig_sign(SignatureKeypair& kp, const std::string& message, Rng& rng) {
    if (kp.signatures_issued >= kSignatureLifetime) throw FactorReuse();
    auto divisors = divisors_of(kSignatureN);
    std::vector<Int> fresh;
    for (const auto& d : divisors) {
        bool used = false;
        for (const auto& u : kp.pub.used_factors)
            if (u == d) used = true;
        if (!used) fresh.push_back(d);
    }
    if (fresh.empty()) throw FactorReuse();

    Int n_i = fresh[rng.below(fresh.size())];
    Int n_j = Int(kSignatureN) / n_i;
    kp.pub.used_factors.push_back(n_i);
    ++kp.signatures_issued;

    GroupElement t = random_element(kp.pub.group, 2, 6, rng).second;
    Signature sig;
    sig.n_j = n_j;
    sig.y = conjugate(power(kp.base, n_i), t);  // y = (g^{n_i})^t
    GroupElement h = hash_to_group(kp.pub.group, message + "|" + sig.y.str());
    sig.alpha = mul(mul(mul(inv(t), kp.s), h), sig.y);  // alpha = t^-1 s h y

    if (!sig_verify(kp.pub, message, sig)) protocol_broken("honest signature fails verification");
    return sig;
}

bool sig_verify(const SigPublic& pub, const std::string& message, const Signature& sig) {
    GroupElement h = hash_to_group(pub.group, message + "|" + sig.y.str());
    GroupElement lhs = conjugate(power(sig.y, sig.n_j), sig.alpha);  // y^{n_j alpha}
    GroupElement rhs = conjugate(pub.x, mul(h, sig.y));              // x^{h y}
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Twisted-conjugacy authentication (the * antihomomorphism is inversion)

TwistedAuthKey twisted_auth_keygen(const PlatformGroup& g, const Endomorphism& phi,
                                   const Endomorphism& psi, Rng& rng) {
    if (!phi.verified()) phi.verify();
    if (!psi.verified()) psi.verify();
    TwistedAuthKey key;
    for (int tries = 0; tries < 64; ++tries) {
        key.s = random_element(g.presentation, 2, 5, rng).second;
        key.w = random_element(g.presentation, 1, 5, rng).second;
        key.t = mul(mul(psi.apply(inv(key.s)), key.w), phi.apply(key.s));
        // Degenerate keys (t = w) would let a prover pass without s.
        if (key.t != key.w && !key.s.is_identity()) return key;
    }
    throw std::runtime_error("could not sample a non-degenerate twisted-auth key");
}

TwistedAuthResult twisted_auth_session(const PlatformGroup& g, const Endomorphism& phi,
                                       const Endomorphism& psi, int rounds, Rng& rng) {
    TwistedAuthKey key = twisted_auth_keygen(g, phi, psi, rng);
    TwistedAuthResult res;
    res.rounds = rounds;
    for (int k = 0; k < rounds; ++k) {
        GroupElement r = random_element(g.presentation, 1, 5, rng).second;
        GroupElement u = mul(mul(psi.apply(inv(r)), key.t), phi.apply(r));  // commitment
        int c = rng.coin() ? 1 : 0;
        GroupElement v = (c == 0) ? r : mul(key.s, r);
        // Verifier: c = 0 checks against t, c = 1 against w.
        const GroupElement& base = (c == 0) ? key.t : key.w;
        GroupElement u_prime = mul(mul(psi.apply(inv(v)), base), phi.apply(v));
        if (u_prime != u) {
            res.accepted = false;
            res.failed_round = k;
            return res;
        }
    }
    return res;
}

TwistedAuthResult twisted_auth_cheater(const PlatformGroup& g, const Endomorphism& phi,
                                       const Endomorphism& psi, int rounds, Rng& rng) {
    TwistedAuthKey key = twisted_auth_keygen(g, phi, psi, rng);
    TwistedAuthResult res;
    res.rounds = rounds;
    for (int k = 0; k < rounds; ++k) {
        // Cheater guesses the challenge and prepares the only branch they can
        // answer without s.
        int guess = rng.coin() ? 1 : 0;
        GroupElement v = random_element(g.presentation, 1, 5, rng).second;
        GroupElement u = (guess == 0)
                             ? mul(mul(psi.apply(inv(v)), key.t), phi.apply(v))
                             : mul(mul(psi.apply(inv(v)), key.w), phi.apply(v));
        int c = rng.coin() ? 1 : 0;
        const GroupElement& base = (c == 0) ? key.t : key.w;
        GroupElement u_prime = mul(mul(psi.apply(inv(v)), base), phi.apply(v));
        if (u_prime != u) {
            res.accepted = false;
            if (res.failed_round < 0) res.failed_round = k;
        }
    }
    return res;
}

}  // namespace pcw::protocols
