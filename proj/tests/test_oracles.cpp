#include <doctest.h>

#include "pcw/oracles.hpp"
#include "pcw/platform.hpp"

using namespace pcw;
using oracles::SearchBudget;

TEST_CASE("csp_enumerate: identity witness at radius 0") {
    auto H = platform::heisenberg();
    Rng rng(1);
    auto a = random_element(H.presentation, 1, 4, rng).second;
    auto res = oracles::csp_enumerate(H.presentation, {{a, a}}, {1000, 4});
    REQUIRE(res.found);
    CHECK(res.witness.empty());
    CHECK(res.radius_reached == 0);
}

TEST_CASE("csp_enumerate: planted single-letter conjugator") {
    auto H = platform::heisenberg();
    auto a = GroupElement(H.presentation, {0, 1, 0});
    auto b = conjugate(a, H.gen(1));  // a^{g1}
    auto res = oracles::csp_enumerate(H.presentation, {{a, b}}, {10000, 4});
    REQUIRE(res.found);
    CHECK(res.witness.letter_length() <= 1);
    auto c = GroupElement::from_word(H.presentation, res.witness);
    CHECK(conjugate(a, c) == b);
}

TEST_CASE("csp_enumerate: simultaneous conjugator across pairs") {
    auto U = platform::unitriangular(4);
    Rng rng(12);
    auto c0 = random_element(U.presentation, 2, 2, rng).second;
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
    for (int i = 0; i < 3; ++i) {
        auto a = random_element(U.presentation, 1, 5, rng).second;
        pairs.emplace_back(a, conjugate(a, c0));
    }
    auto res = oracles::csp_enumerate(U.presentation, pairs, {200000, 4});
    REQUIRE(res.found);
    auto c = GroupElement::from_word(U.presentation, res.witness);
    for (const auto& [a, b] : pairs) CHECK(conjugate(a, c) == b);
}

TEST_CASE("csp_enumerate: non-conjugate pair exhausts, certified by abelianization") {
    auto H = platform::heisenberg();
    // g1 and g1^2 have distinct abelianized (g1,g2)-coordinates, hence are
    // not conjugate: conjugation preserves the image in G/[G,G].
    auto a = H.gen(1);
    auto b = GroupElement(H.presentation, {2, 0, 0});
    CHECK(a.exps()[0] != b.exps()[0]);  // the abelianization invariant
    auto res = oracles::csp_enumerate(H.presentation, {{a, b}}, {2000, 3});
    CHECK_FALSE(res.found);
    CHECK(res.nodes_explored > 0);
}

TEST_CASE("csp_enumerate: determinism") {
    auto H = platform::heisenberg();
    Rng rng(77);
    auto a = random_element(H.presentation, 1, 4, rng).second;
    auto b = conjugate(a, random_element(H.presentation, 2, 2, rng).second);
    auto r1 = oracles::csp_enumerate(H.presentation, {{a, b}}, {5000, 5});
    auto r2 = oracles::csp_enumerate(H.presentation, {{a, b}}, {5000, 5});
    CHECK(r1.found == r2.found);
    CHECK(r1.witness == r2.witness);
    CHECK(r1.nodes_explored == r2.nodes_explored);
    CHECK(r1.radius_reached == r2.radius_reached);
}

TEST_CASE("csp_enumerate: BFS witness is minimum length") {
    auto H = platform::heisenberg();
    // Plant a conjugator of word length 3; BFS must return a witness of
    // letter length <= 3.
    auto a = GroupElement(H.presentation, {1, 2, 0});
    auto c0 = H.elem(Word::parse("g1 g2 g1"));
    auto b = conjugate(a, c0);
    auto res = oracles::csp_enumerate(H.presentation, {{a, b}}, {100000, 6});
    REQUIRE(res.found);
    CHECK(res.witness.letter_length() <= 3);
}

TEST_CASE("power_csp_enumerate: trivial and planted instances") {
    auto H = platform::heisenberg();

    SUBCASE("a == b gives (1, identity)") {
        Rng rng(3);
        auto a = random_element(H.presentation, 1, 4, rng).second;
        auto res = oracles::power_csp_enumerate(H.presentation, a, a, {2000, 3});
        REQUIRE(res.found);
        CHECK(*res.exponent == 1);
        CHECK(res.witness.empty());
    }

    SUBCASE("planted square: b = a^2, central instance") {
        auto a = GroupElement(H.presentation, {0, 0, 1});
        auto b = GroupElement(H.presentation, {0, 0, 2});
        // a^2 = b^identity.
        auto res = oracles::power_csp_enumerate(H.presentation, a, b, {2000, 3});
        REQUIRE(res.found);
        auto c = GroupElement::from_word(H.presentation, res.witness);
        CHECK(power(a, *res.exponent) == conjugate(b, c));
        CHECK(*res.exponent == 2);
    }

    SUBCASE("planted a^3 = b^{g2}") {
        Rng rng(9);
        auto a = random_element(H.presentation, 1, 3, rng).second;
        // Choose b with b^{g2} = a^3, i.e. b = (a^3)^{g2^-1}.
        auto b = conjugate(power(a, 3), inv(H.gen(2)));
        auto res = oracles::power_csp_enumerate(H.presentation, a, b, {20000, 4});
        REQUIRE(res.found);
        auto c = GroupElement::from_word(H.presentation, res.witness);
        CHECK(power(a, *res.exponent) == conjugate(b, c));
    }
}

TEST_CASE("twisted_csp_enumerate") {
    auto H = platform::heisenberg();
    auto id_endo = Endomorphism::identity(H.presentation);

    SUBCASE("phi = psi = id, t = w finds the identity") {
        Rng rng(4);
        auto w = random_element(H.presentation, 1, 4, rng).second;
        auto res = oracles::twisted_csp_enumerate(H.presentation, w, w, id_endo, id_endo,
                                                  {2000, 3});
        REQUIRE(res.found);
        CHECK(res.witness.empty());
    }

    SUBCASE("reduces to standard CSP: agreement on 20 planted instances") {
        Rng rng(5);
        for (int t = 0; t < 20; ++t) {
            auto w = random_element(H.presentation, 1, 4, rng).second;
            auto a0 = random_element(H.presentation, 1, 2, rng).second;
            auto target = mul(mul(inv(a0), w), a0);  // psi=phi=id instance
            auto twisted = oracles::twisted_csp_enumerate(H.presentation, w, target, id_endo,
                                                          id_endo, {30000, 4});
            auto plain = oracles::csp_enumerate(H.presentation, {{w, target}}, {30000, 4});
            CHECK(twisted.found == plain.found);
            if (twisted.found) {
                auto a = GroupElement::from_word(H.presentation, twisted.witness);
                CHECK(mul(mul(inv(a), w), a) == target);
            }
        }
    }

    SUBCASE("double twisted planted witness verifies") {
        Rng rng(6);
        auto z1 = random_element(H.presentation, 1, 3, rng).second;
        auto phi = Endomorphism::inner(z1);
        auto psi = Endomorphism::inner(inv(z1));
        auto w = random_element(H.presentation, 1, 4, rng).second;
        auto a0 = random_element(H.presentation, 1, 2, rng).second;
        auto t = mul(mul(psi.apply(inv(a0)), w), phi.apply(a0));
        auto res = oracles::twisted_csp_enumerate(H.presentation, w, t, phi, psi, {30000, 4});
        REQUIRE(res.found);
        auto a = GroupElement::from_word(H.presentation, res.witness);
        CHECK(mul(mul(psi.apply(inv(a)), w), phi.apply(a)) == t);
    }
}

TEST_CASE("endomorphism verification") {
    auto H = platform::heisenberg();

    SUBCASE("central twist is a verified endomorphism") {
        // g1 -> g1 g3^2, g2 -> g2 g3^-1, g3 -> g3.
        std::vector<GroupElement> imgs{H.elem(Word::parse("g1 g3^2")),
                                       H.elem(Word::parse("g2 g3^-1")), H.gen(3)};
        Endomorphism e(H.presentation, imgs);
        CHECK_NOTHROW(e.verify());
    }

    SUBCASE("bad images are rejected") {
        // g1 -> g2 breaks the commutator relation when g3 maps to identity.
        std::vector<GroupElement> imgs{H.gen(2), H.gen(1), H.identity()};
        Endomorphism e(H.presentation, imgs);
        CHECK_THROWS_AS(e.verify(), InvalidEndomorphism);
    }

    SUBCASE("abelianization quotient map is an endomorphism") {
        // g1 -> g1, g2 -> g2, g3 -> 1 is NOT one (relation g2^g1 = g2 g3
        // fails); but g1 -> g1, g2 -> 1, g3 -> 1 is.
        std::vector<GroupElement> imgs{H.gen(1), H.identity(), H.identity()};
        Endomorphism e(H.presentation, imgs);
        CHECK_NOTHROW(e.verify());
    }
}
