#include "pcw/endomorphism.hpp"

namespace pcw {

Endomorphism::Endomorphism(PresentationPtr group, std::vector<GroupElement> images)
    : group_(std::move(group)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != group_->ngens())
        throw InvalidEndomorphism("need one image per generator");
    for (const auto& img : images_)
        if (img.group().get() != group_.get())
            throw InvalidEndomorphism("image lies in a different group");
}

Endomorphism Endomorphism::identity(const PresentationPtr& g) {
    std::vector<GroupElement> imgs;
    for (int i = 1; i <= g->ngens(); ++i)
        imgs.push_back(GroupElement::from_word(g, Word::generator(i)));
    Endomorphism e(g, std::move(imgs));
    e.verified_ = true;
    return e;
}

Endomorphism Endomorphism::inner(const GroupElement& z) {
    const auto& g = z.group();
    std::vector<GroupElement> imgs;
    for (int i = 1; i <= g->ngens(); ++i)
        imgs.push_back(conjugate(GroupElement::from_word(g, Word::generator(i)), z));
    Endomorphism e(g, std::move(imgs));
    e.verified_ = true;  // inner maps satisfy all relations by construction
    return e;
}

GroupElement Endomorphism::apply_word(const Word& w) const {
    GroupElement acc = GroupElement::identity(group_);
    for (const auto& s : w.syllables()) acc = mul(acc, power(images_[s.gen - 1], s.exp));
    return acc;
}

GroupElement Endomorphism::apply(const GroupElement& x) const {
    return apply_word(x.word());
}

void Endomorphism::verify() const {
    const int n = group_->ngens();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (bool pos : {true, false}) {
                GroupElement xi = pos ? images_[i - 1] : inv(images_[i - 1]);
                GroupElement lhs = mul(mul(inv(xi), images_[j - 1]), xi);
                GroupElement rhs = apply_word(group_->conjugate_word(i, j, pos));
                if (lhs != rhs)
                    throw InvalidEndomorphism("images violate conj " +
                                              std::string(pos ? "+" : "-") + " relation (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        if (group_->finite_order(i)) {
            GroupElement lhs = power(images_[i - 1], group_->order(i));
            GroupElement rhs = group_->power_word(i) ? apply_word(*group_->power_word(i))
                                                     : GroupElement::identity(group_);
            if (lhs != rhs)
                throw InvalidEndomorphism("images violate power relation of g" +
                                          std::to_string(i));
        }
    }
    verified_ = true;
}

}  // namespace pcw
