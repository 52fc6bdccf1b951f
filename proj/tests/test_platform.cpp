#include <doctest.h>

#include <sstream>

#include "pcw/element.hpp"
#include "pcw/platform.hpp"

using namespace pcw;

namespace {

PlatformGroup zsqrt2() {
    MatQ m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    return platform::semidirect_from_action(2, {m}, "zsqrt2");
}

}  // namespace

TEST_CASE("all shipped platforms pass 500-trial consistency at construction") {
    std::vector<PlatformGroup> groups;
    groups.push_back(platform::heisenberg());
    groups.push_back(platform::unitriangular(4));
    groups.push_back(zsqrt2());
    groups.push_back(platform::direct_product(groups[0], groups[2]));
    for (const auto& g : groups) {
        Rng rng(404);
        CHECK(check_consistency(g.presentation, 500, rng).consistent);
    }
}

TEST_CASE("heisenberg matrix image satisfies the relators") {
    auto H = platform::heisenberg();
    REQUIRE(H.matrix_image.has_value());
    CHECK(rep_respects_relations(*H.presentation, *H.matrix_image));
    CHECK(H.hirsch_length() == 3);
}

TEST_CASE("unitriangular: UT(3) is Heisenberg under (a,b,c) -> (a,b,-c)") {
    auto H = platform::heisenberg();
    auto U = platform::unitriangular(3);
    REQUIRE(U.presentation->ngens() == 3);

    // Explicit isomorphism oracle: g1->t12, g2->t23, g3->t13^{-1}.
    auto to_ut = [&](const GroupElement& h) {
        return GroupElement(U.presentation,
                            {h.exps()[0], h.exps()[1], -h.exps()[2]});
    };
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        auto x = random_element(H.presentation, 0, 8, rng).second;
        auto y = random_element(H.presentation, 0, 8, rng).second;
        CHECK(to_ut(mul(x, y)) == mul(to_ut(x), to_ut(y)));
    }
}

TEST_CASE("unitriangular sizes and guards") {
    CHECK(platform::unitriangular(4).hirsch_length() == 6);
    CHECK(platform::unitriangular(6).hirsch_length() == 15);
    CHECK_THROWS_AS(platform::unitriangular(2), PlatformError);
    auto U = platform::unitriangular(5);
    REQUIRE(U.matrix_image.has_value());
    CHECK(rep_respects_relations(*U.presentation, *U.matrix_image));
}

TEST_CASE("semidirect_from_action: unit action on Z[sqrt 2]") {
    auto S = zsqrt2();
    CHECK(S.hirsch_length() == 3);
    CHECK(S.certified_base == 1);
    Rng rng(5);
    CHECK(check_consistency(S.presentation, 200, rng).consistent);

    // Conjugation of a translation by the unit equals the matrix action on
    // its exponent coordinates, on random translations.
    MatQ m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    auto mu = S.gen(1);
    Rng rng2(6);
    for (int t = 0; t < 100; ++t) {
        Int x0 = rng2.range(-20, 20), x1 = rng2.range(-20, 20);
        Word w;
        w.append(2, x0);
        w.append(3, x1);
        auto tau = S.elem(w);
        auto conj = conjugate(tau, mu);
        Int y0 = m.at(0, 0).get_num() * x0 + m.at(0, 1).get_num() * x1;
        Int y1 = m.at(1, 0).get_num() * x0 + m.at(1, 1).get_num() * x1;
        CHECK(conj.exps() == std::vector<Int>{0, y0, y1});
    }
}

TEST_CASE("semidirect_from_action: degree 1 identity action is Z^2") {
    MatQ one(1, 1);
    one.at(0, 0) = 1;
    auto G = platform::semidirect_from_action(1, {one}, "z2");
    CHECK(G.hirsch_length() == 2);
    auto a = G.gen(1), b = G.gen(2);
    CHECK(commutator(a, b) == G.identity());
}

TEST_CASE("semidirect_from_action: golden-ratio unit") {
    MatQ m(2, 2);
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    auto G = platform::semidirect_from_action(2, {m}, "golden");
    Rng rng(8);
    CHECK(check_consistency(G.presentation, 200, rng).consistent);
    // (1,0)-translation conjugates to the (0,1)-translation.
    auto tau1 = G.gen(2);
    auto mu = G.gen(1);
    CHECK(conjugate(tau1, mu).exps() == std::vector<Int>{0, 0, 1});
}

TEST_CASE("shipped number-field examples") {
    auto S = platform::zsqrt2();
    CHECK(S.hirsch_length() == 3);
    CHECK(S.certified_base == 1);

    auto G = platform::golden();
    CHECK(G.hirsch_length() == 3);
    CHECK(G.certified_base == 1);
    Rng rng(91);
    CHECK(check_consistency(G.presentation, 200, rng).consistent);

    auto H7 = platform::hirsch7();
    CHECK(H7.hirsch_length() == 7);
    CHECK_FALSE(H7.certified_base.has_value());  // two units, no certificate
    Rng rng2(92);
    CHECK(check_consistency(H7.presentation, 200, rng2).consistent);
    REQUIRE(H7.matrix_image.has_value());
    CHECK(rep_respects_relations(*H7.presentation, *H7.matrix_image));

    // Conjugation by either unit acts on translation coordinates by its
    // block matrix: check unit 2 (the cubic block) on tau_3 = gen 5.
    auto tau3 = H7.gen(5);
    auto mu2 = H7.gen(2);
    // Column 0 of the cubic block is e_2 (coordinates 3..5 of the lattice).
    CHECK(conjugate(tau3, mu2).exps() == std::vector<Int>{0, 0, 0, 0, 0, 1, 0});
}

TEST_CASE("semidirect_from_action rejects bad actions") {
    MatQ notuni(2, 2);
    notuni.at(0, 0) = 2;
    notuni.at(1, 1) = 1;
    CHECK_THROWS_AS(platform::semidirect_from_action(2, {notuni}), PlatformError);

    MatQ a(2, 2), b(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 1) = 1;              // shear
    b.at(0, 0) = 0;
    b.at(0, 1) = 1;
    b.at(1, 0) = 1;
    b.at(1, 1) = 0;              // swap; does not commute with the shear
    CHECK_THROWS_AS(platform::semidirect_from_action(2, {a, b}), PlatformError);
}

TEST_CASE("direct_product: hirsch additivity, commuting pair, component oracle") {
    auto H = platform::heisenberg();
    auto P = platform::direct_product(H, H);
    CHECK(P.hirsch_length() == 6);
    REQUIRE(P.commuting_pair.has_value());

    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        // Random members of each factor commute.
        Word wa, wb;
        for (int k = 0; k < 4; ++k) {
            wa.append(P.commuting_pair->first[rng.below(3)], Int(rng.sign()));
            wb.append(P.commuting_pair->second[rng.below(3)], Int(rng.sign()));
        }
        auto x = P.elem(wa), y = P.elem(wb);
        CHECK(commutator(x, y) == P.identity());
    }

    // Componentwise multiplication oracle.
    Rng rng2(18);
    for (int t = 0; t < 100; ++t) {
        auto xl = random_element(H.presentation, 0, 6, rng2).second;
        auto xr = random_element(H.presentation, 0, 6, rng2).second;
        auto yl = random_element(H.presentation, 0, 6, rng2).second;
        auto yr = random_element(H.presentation, 0, 6, rng2).second;
        auto embed = [&](const GroupElement& l, const GroupElement& r) {
            std::vector<Int> exps = l.exps();
            exps.insert(exps.end(), r.exps().begin(), r.exps().end());
            return GroupElement(P.presentation, std::move(exps));
        };
        CHECK(mul(embed(xl, xr), embed(yl, yr)) == embed(mul(xl, yl), mul(xr, yr)));
    }
}

TEST_CASE("matrix_of: identity, frozen value, homomorphism property") {
    auto H = platform::heisenberg();
    const auto& rep = *H.matrix_image;
    CHECK(matrix_of(H.identity(), rep).is_identity());

    // (1,1,1) = g1 g2 g3 maps to the product of the generator images.
    auto e = GroupElement(H.presentation, {1, 1, 1});
    MatQ expect = rep.images[0] * rep.images[1] * rep.images[2];
    CHECK(matrix_of(e, rep) == expect);

    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        auto x = random_element(H.presentation, 0, 8, rng).second;
        auto y = random_element(H.presentation, 0, 8, rng).second;
        CHECK(matrix_of(mul(x, y), rep) == matrix_of(x, rep) * matrix_of(y, rep));
    }

    auto U = platform::unitriangular(3);
    CHECK_THROWS_AS(matrix_of(H.gen(1), MatrixRep{4, {MatQ::identity(4)}}), RepMismatch);
    (void)U;
}

TEST_CASE("matrix rep file round-trip") {
    auto S = zsqrt2();
    std::string text = format_matrix_rep(*S.matrix_image);
    std::istringstream in(text);
    MatrixRep back = parse_matrix_rep(in);
    CHECK(back.dim == S.matrix_image->dim);
    REQUIRE(back.images.size() == S.matrix_image->images.size());
    for (std::size_t i = 0; i < back.images.size(); ++i)
        CHECK(back.images[i] == S.matrix_image->images[i]);
    CHECK(rep_respects_relations(*S.presentation, back));
}
