#include <doctest.h>

#include <set>
#include <sstream>

#include "pcw/element.hpp"
#include "pcw/platform.hpp"

using namespace pcw;

namespace {

// Closed-form Heisenberg coordinates: (a,b,c)*(a',b',c') = (a+a', b+b',
// c+c'+b*a'). The independent oracle for mul/inv/conjugate.
struct Heis {
    Int a, b, c;
    static Heis of(const GroupElement& e) { return {e.exps()[0], e.exps()[1], e.exps()[2]}; }
    bool matches(const GroupElement& e) const {
        return e.exps()[0] == a && e.exps()[1] == b && e.exps()[2] == c;
    }
};

Heis heis_mul(const Heis& x, const Heis& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c + x.b * y.a};
}

Heis heis_inv(const Heis& x) {
    // Solve x * y = 1: y = (-a, -b, -c + b*a) wait-free from the formula:
    // c + y.c + b*(-a) = 0.
    return {-x.a, -x.b, -x.c + x.b * x.a};
}

}  // namespace

TEST_CASE("collect: frozen Heisenberg examples") {
    auto H = platform::heisenberg();
    const auto& g = H.presentation;

    CHECK(g->collect(Word::parse("g2 g1")) == std::vector<Int>{1, 1, 1});
    CHECK(g->collect(Word()) == std::vector<Int>{0, 0, 0});
    CHECK(g->collect(Word::parse("g1 g2 g1^-1 g2^-1")) == std::vector<Int>{0, 0, -1});
}

TEST_CASE("collect rejects out-of-range generators") {
    auto H = platform::heisenberg();
    CHECK_THROWS_AS(H.presentation->collect(Word::parse("g4")), MalformedWord);
}

TEST_CASE("collect step budget turns blowup into an error") {
    // Doubling relation g2^{g1} = g2^2: exponents inflate exponentially while
    // each unit move of g1 charges the budget.
    PcPresentation p(std::vector<Int>{0, 0});
    p.set_conjugate(1, 2, true, Word::generator(2, 2));
    auto g = std::make_shared<PcPresentation>(std::move(p));
    CHECK(g->collect(Word::parse("g2 g1^5")) == std::vector<Int>{5, 32});
    CHECK_THROWS_AS(g->collect(Word::parse("g2 g1^100000"), 1000), BudgetExceeded);

    // Non-commuting relator letters force copy expansion; the budget caps it.
    PcPresentation q(std::vector<Int>{0, 0, 0});
    Word u12 = Word::generator(3);
    u12.append(2, 1);  // g2^{g1} = g3 g2 with [g2, g3] != 1
    q.set_conjugate(1, 2, true, u12);
    q.set_conjugate(2, 3, true, Word::generator(3, 2));  // g3^{g2} = g3^2
    auto gq = std::make_shared<PcPresentation>(std::move(q));
    CHECK_THROWS_AS(gq->collect(Word::parse("g2^10000 g1"), 2000), BudgetExceeded);
}

TEST_CASE("mul/inv/conjugate/commutator match the closed form on 1000 random pairs") {
    auto H = platform::heisenberg();
    Rng rng(101);
    for (int t = 0; t < 1000; ++t) {
        auto x = random_element(H.presentation, 0, 10, rng).second;
        auto y = random_element(H.presentation, 0, 10, rng).second;

        CHECK(heis_mul(Heis::of(x), Heis::of(y)).matches(mul(x, y)));
        CHECK(heis_inv(Heis::of(x)).matches(inv(x)));

        Heis cx = Heis::of(x), cy = Heis::of(y);
        Heis conj = heis_mul(heis_mul(heis_inv(cy), cx), cy);
        CHECK(conj.matches(conjugate(x, y)));

        Heis comm = heis_mul(heis_mul(heis_inv(cx), heis_inv(cy)), heis_mul(cx, cy));
        CHECK(comm.matches(commutator(x, y)));
    }
}

TEST_CASE("frozen examples: mul, inv, conjugate, commutator") {
    auto H = platform::heisenberg();
    auto g1 = H.gen(1), g2 = H.gen(2);
    auto e110 = mul(g1, g2);  // (1,1,0)
    CHECK(e110.exps() == std::vector<Int>{1, 1, 0});
    CHECK(mul(e110, g1).exps() == std::vector<Int>{2, 1, 1});
    CHECK(mul(g1, g2).exps() == std::vector<Int>{1, 1, 0});
    CHECK(inv(e110).exps() == std::vector<Int>{-1, -1, 1});
    CHECK(inv(H.identity()) == H.identity());
    CHECK(conjugate(g2, g1).exps() == std::vector<Int>{0, 1, 1});
    CHECK(commutator(g1, g2).exps() == std::vector<Int>{0, 0, -1});

    Rng rng(55);
    for (int t = 0; t < 100; ++t) {
        auto a = random_element(H.presentation, 0, 8, rng).second;
        auto b = random_element(H.presentation, 0, 8, rng).second;
        CHECK(inv(inv(a)) == a);
        CHECK(conjugate(a, H.identity()) == a);
        CHECK(commutator(a, a) == H.identity());
        CHECK(commutator(a, b) == inv(commutator(b, a)));
        CHECK(mul(a, H.identity()) == a);
    }

    // Central elements are fixed by conjugation.
    auto central = GroupElement::from_word(H.presentation, Word::parse("g3^5"));
    Rng rng2(77);
    for (int t = 0; t < 20; ++t) {
        auto x = random_element(H.presentation, 0, 8, rng2).second;
        CHECK(conjugate(central, x) == central);
    }
}

TEST_CASE("power: signs, zero, and addition law") {
    auto H = platform::heisenberg();
    Rng rng(63);
    for (int t = 0; t < 50; ++t) {
        auto a = random_element(H.presentation, 0, 6, rng).second;
        CHECK(power(a, 0) == H.identity());
        CHECK(power(a, -3) == inv(power(a, 3)));
        CHECK(power(a, 5) == mul(power(a, 2), power(a, 3)));
    }
    CHECK(power(H.gen(1), 7).exps() == std::vector<Int>{7, 0, 0});
}

TEST_CASE("mul throws GroupMismatch across groups") {
    auto H1 = platform::heisenberg();
    auto H2 = platform::heisenberg();
    CHECK_THROWS_AS(mul(H1.gen(1), H2.gen(1)), GroupMismatch);
}

TEST_CASE("associativity property on every shipped platform") {
    std::vector<PlatformGroup> groups;
    groups.push_back(platform::heisenberg());
    groups.push_back(platform::unitriangular(4));
    {
        MatQ m(2, 2);
        m.at(0, 0) = 1;
        m.at(0, 1) = 2;
        m.at(1, 0) = 1;
        m.at(1, 1) = 1;
        groups.push_back(platform::semidirect_from_action(2, {m}, "zsqrt2"));
    }
    groups.push_back(platform::direct_product(groups[0], groups[0]));

    Rng rng(9);
    for (const auto& g : groups) {
        for (int t = 0; t < 100; ++t) {
            auto a = random_element(g.presentation, 0, 6, rng).second;
            auto b = random_element(g.presentation, 0, 6, rng).second;
            auto c = random_element(g.presentation, 0, 6, rng).second;
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        }
    }
}

TEST_CASE("normal-form uniqueness under relator padding") {
    auto H = platform::heisenberg();
    const auto& g = H.presentation;
    Rng rng(31);
    // Padding w with inserted defining-relation instances must not change the
    // normal form: g2 g1 == g1 g2 g3 as elements.
    for (int t = 0; t < 1000; ++t) {
        auto [w, e] = random_element(g, 0, 12, rng);
        // Insert the relation word g1^-1 g2^-1 g1 g2 g3 (which collects to 1)
        // at a random syllable boundary.
        Word padded;
        std::size_t cut = w.empty() ? 0 : rng.below(w.size() + 1);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i == cut) padded.append(Word::parse("g1^-1 g2^-1 g1 g2 g3"));
            padded.append(w[i]);
        }
        if (cut == w.size()) padded.append(Word::parse("g1^-1 g2^-1 g1 g2 g3"));
        CHECK(g->collect(padded) == e.exps());
    }
}

TEST_CASE("exponent bounds with finite relative orders") {
    // Dihedral-flavored test group: g1 of order 2 inverting g2 (infinite).
    PcPresentation p(std::vector<Int>{2, 0});
    p.set_conjugate(1, 2, true, Word::generator(2, -1));
    p.set_conjugate(1, 2, false, Word::generator(2, -1));
    auto g = std::make_shared<PcPresentation>(std::move(p));

    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        auto e = random_element(g, 0, 12, rng).second;
        CHECK(e.exps()[0] >= 0);
        CHECK(e.exps()[0] < 2);
    }
    // g1^2 = 1, g1^-1 = g1.
    CHECK(g->collect(Word::parse("g1^2")) == std::vector<Int>{0, 0});
    CHECK(g->collect(Word::parse("g1^-1")) == std::vector<Int>{1, 0});
    // g1 g2 g1 = g2^-1.
    CHECK(g->collect(Word::parse("g1 g2 g1")) == std::vector<Int>{0, -1});

    Rng rng2(4);
    auto verdict = check_consistency(g, 200, rng2);
    CHECK(verdict.consistent);
}

TEST_CASE("finite-order power relation with a tail word") {
    // g1^3 = g2 (g2 infinite): collection must expand overflow into g2.
    PcPresentation p(std::vector<Int>{3, 0});
    p.set_power(1, Word::generator(2));
    auto g = std::make_shared<PcPresentation>(std::move(p));
    CHECK(g->collect(Word::parse("g1^3")) == std::vector<Int>{0, 1});
    CHECK(g->collect(Word::parse("g1^7")) == std::vector<Int>{1, 2});
    CHECK(g->collect(Word::parse("g1^-1")) == std::vector<Int>{2, -1});
    Rng rng(5);
    CHECK(check_consistency(g, 200, rng).consistent);
}

TEST_CASE("growth function of Heisenberg by two independent routes") {
    auto H = platform::heisenberg();
    const auto& g = H.presentation;

    // Route 1: enumerate every word of length <= 4 over the 6 signed letters
    // and count distinct collected normal forms.
    std::set<std::vector<Int>> forms;
    forms.insert(g->collect(Word()));
    std::vector<Word> frontier{Word()};
    for (int len = 1; len <= 4; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (int gen = 1; gen <= 3; ++gen) {
                for (int s : {1, -1}) {
                    Word nw = w;
                    nw.append(gen, Int(s));
                    forms.insert(g->collect(nw));
                    next.push_back(std::move(nw));
                }
            }
        }
        frontier = std::move(next);
    }

    // Route 2: BFS over elements via the closed-form product.
    std::set<std::vector<Int>> ball;
    std::vector<Heis> layer{{0, 0, 0}};
    ball.insert({0, 0, 0});
    auto key = [](const Heis& h) { return std::vector<Int>{h.a, h.b, h.c}; };
    for (int len = 1; len <= 4; ++len) {
        std::vector<Heis> next;
        for (const auto& h : layer) {
            const Heis gens[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                  {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
            for (const auto& step : gens) {
                Heis nh = heis_mul(h, step);
                if (ball.insert(key(nh)).second) next.push_back(nh);
            }
        }
        layer = std::move(next);
    }

    CHECK(forms == ball);
    CHECK(forms.size() == ball.size());
}

TEST_CASE("hirsch_length") {
    CHECK(platform::heisenberg().hirsch_length() == 3);
    CHECK(platform::unitriangular(4).hirsch_length() == 6);
    PcPresentation finite(std::vector<Int>{2, 3});
    CHECK(finite.hirsch_length() == 0);
}

TEST_CASE("check_consistency verdicts") {
    SUBCASE("heisenberg is consistent") {
        auto H = platform::heisenberg();
        Rng rng(1);
        CHECK(check_consistency(H.presentation, 100, rng).consistent);
    }
    SUBCASE("corrupted u12 is caught with a witness") {
        PcPresentation p(std::vector<Int>(3, 0));
        Word bad = Word::generator(2);
        bad.append(3, 2);  // g2^g1 = g2 g3^2 while the inverse relation says g3^-1
        p.set_conjugate(1, 2, true, bad);
        Word v12 = Word::generator(2);
        v12.append(3, -1);
        p.set_conjugate(1, 2, false, v12);
        auto g = std::make_shared<PcPresentation>(std::move(p));
        Rng rng(2);
        auto verdict = check_consistency(g, 100, rng);
        CHECK_FALSE(verdict.consistent);
        CHECK_FALSE(verdict.witness.empty());
    }
    SUBCASE("trivial group") {
        auto g = std::make_shared<PcPresentation>(std::vector<Int>{});
        Rng rng(3);
        CHECK(check_consistency(g, 10, rng).consistent);
    }
}

TEST_CASE("presentation file format round-trip and errors") {
    auto H = platform::unitriangular(4);
    std::string text = format_presentation(*H.presentation);
    std::istringstream in(text);
    PcPresentation back = parse_presentation(in);
    CHECK(format_presentation(back) == text);

    SUBCASE("duplicate relation rejected with line number") {
        std::string bad =
            "pcgroup v1\nngens 2\nconj + 1 2 g2\nconj + 1 2 g2\n";
        std::istringstream bin(bad);
        try {
            parse_presentation(bin);
            FAIL("expected PresentationError");
        } catch (const PresentationError& e) {
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
            CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
        }
    }
    SUBCASE("out-of-range index rejected") {
        std::string bad = "pcgroup v1\nngens 2\nconj + 1 3 g2\n";
        std::istringstream bin(bad);
        CHECK_THROWS_AS(parse_presentation(bin), PresentationError);
    }
    SUBCASE("relator beyond ngens rejected") {
        std::string bad = "pcgroup v1\nngens 2\nconj + 1 2 g5\n";
        std::istringstream bin(bad);
        CHECK_THROWS_AS(parse_presentation(bin), PresentationError);
    }
    SUBCASE("bad header rejected") {
        std::string bad = "pcgrp v9\n";
        std::istringstream bin(bad);
        CHECK_THROWS_AS(parse_presentation(bin), PresentationError);
    }
}

TEST_CASE("word parsing and printing") {
    Word w = Word::parse("g1^2 g2^-3 g1");
    CHECK(w.str() == "g1^2 g2^-3 g1");
    CHECK(Word::parse("1").empty());
    CHECK(Word::parse(w.str()) == w);
    CHECK(w.letter_length() == 6);
    CHECK_THROWS_AS(Word::parse("x3"), MalformedWord);
    CHECK_THROWS_AS(Word::parse("g1^"), MalformedWord);
    // Adjacent same-generator tokens merge; exact cancellation drops out.
    CHECK(Word::parse("g1 g1").size() == 1);
    CHECK(Word::parse("g1 g1^-1").empty());
}
