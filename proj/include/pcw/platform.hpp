#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcw/element.hpp"
#include "pcw/matrix.hpp"
#include "pcw/presentation.hpp"

namespace pcw {

struct RepMismatch : std::runtime_error {
    RepMismatch() : std::runtime_error("matrix representation belongs to another group") {}
};

struct PlatformError : std::runtime_error {
    explicit PlatformError(const std::string& what) : std::runtime_error(what) {}
};

// Exact matrix images of the polycyclic generators; verified against every
// defining relation at construction.
struct MatrixRep {
    int dim = 0;
    std::vector<MatQ> images;  // one per generator, each invertible
};

struct PlatformGroup {
    std::string name;
    PresentationPtr presentation;
    std::optional<MatrixRep> matrix_image;
    // Generator index sets certified to commute elementwise (Ko-Lee / ElGamal
    // subgroups).
    std::optional<std::pair<std::vector<int>, std::vector<int>>> commuting_pair;
    // Generator certified self-centralizing (signature scheme base).
    std::optional<int> certified_base;

    GroupElement identity() const { return GroupElement::identity(presentation); }
    GroupElement gen(int i, const Int& e = 1) const {
        return GroupElement::from_word(presentation, Word::generator(i, e));
    }
    GroupElement elem(const Word& w) const { return GroupElement::from_word(presentation, w); }
    int hirsch_length() const { return presentation->hirsch_length(); }
};

namespace platform {

// Discrete Heisenberg group: <g1,g2,g3 | g2^g1 = g2 g3, g2^(g1^-1) = g2 g3^-1,
// g3 central>, Hirsch length 3, with its 3x3 unitriangular matrix image.
PlatformGroup heisenberg();

// UT(n, Z) on the n(n-1)/2 elementary transvections, ordered superdiagonal by
// superdiagonal (row-major inside each), so relators only use later
// generators. Hirsch length n(n-1)/2.
PlatformGroup unitriangular(int n);

// Z^degree x| Z^k for commuting unimodular integer action matrices; unit
// generators come first, then translations. Conjugating a translation by
// unit i applies matrix i to its coordinate vector. Hirsch length degree+k.
PlatformGroup semidirect_from_action(int degree, const std::vector<MatQ>& action_matrices,
                                     const std::string& name = "semidirect");

// Generators of a precede generators of b; cross relations trivial;
// commuting_pair records the two factors.
PlatformGroup direct_product(const PlatformGroup& a, const PlatformGroup& b);

// Worked number-field examples (precomputed unit actions).
PlatformGroup zsqrt2();   // Z[sqrt 2] acted on by the unit 1+sqrt 2, Hirsch length 3
PlatformGroup golden();   // Z[phi] acted on by the golden unit, Hirsch length 3
PlatformGroup hirsch7();  // rank-5 lattice with two block units, Hirsch length 7

}  // namespace platform

// Exact homomorphic image of g under rep. Throws RepMismatch when the
// generator count disagrees with g's group.
MatQ matrix_of(const GroupElement& g, const MatrixRep& rep);

// Checks every defining relation of p under the candidate images.
bool rep_respects_relations(const PcPresentation& p, const MatrixRep& rep);

// "matrixrep v1" text format.
MatrixRep parse_matrix_rep(std::istream& in);
MatrixRep parse_matrix_rep_file(const std::string& path);
std::string format_matrix_rep(const MatrixRep& rep);

}  // namespace pcw
