#pragma once

#include <stdexcept>
#include <vector>

#include "pcw/element.hpp"

namespace pcw {

struct InvalidEndomorphism : std::runtime_error {
    explicit InvalidEndomorphism(const std::string& what) : std::runtime_error(what) {}
};

// Endomorphism given by generator images. verify() checks every defining
// relation maps to a relation (a word-problem instance per relation).
class Endomorphism {
  public:
    Endomorphism(PresentationPtr group, std::vector<GroupElement> images);

    static Endomorphism identity(const PresentationPtr& g);
    // x -> z^-1 x z.
    static Endomorphism inner(const GroupElement& z);

    const PresentationPtr& group() const { return group_; }
    const std::vector<GroupElement>& images() const { return images_; }

    GroupElement apply(const GroupElement& x) const;
    GroupElement apply_word(const Word& w) const;

    // Throws InvalidEndomorphism naming the first violated relation.
    void verify() const;
    bool verified() const { return verified_; }

  private:
    PresentationPtr group_;
    std::vector<GroupElement> images_;
    mutable bool verified_ = false;
};

}  // namespace pcw
