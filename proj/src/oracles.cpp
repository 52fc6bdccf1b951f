#include "pcw/oracles.hpp"

#include <map>
#include <stdexcept>

namespace pcw::oracles {

namespace {

// BFS layers of group elements by word length, remembering the first word
// that reached each element. Shared machinery for all three oracles.
class ElementBfs {
  public:
    explicit ElementBfs(PresentationPtr g) : group_(std::move(g)) {
        GroupElement id = GroupElement::identity(group_);
        seen_.emplace(id.exps(), 0);
        layers_.push_back({{Word(), id}});
    }

    long nodes() const { return static_cast<long>(seen_.size()); }
    int radius() const { return static_cast<int>(layers_.size()) - 1; }
    const std::vector<std::pair<Word, GroupElement>>& layer(int r) const { return layers_[r]; }

    // Builds the next layer (possibly partial when the node budget is hit).
    // Returns false when no further expansion is possible.
    bool expand(long max_nodes) {
        if (exhausted_) return false;
        const auto& frontier = layers_.back();
        std::vector<std::pair<Word, GroupElement>> next;
        for (const auto& [w, e] : frontier) {
            for (int gen = 1; gen <= group_->ngens(); ++gen) {
                for (int s : {1, -1}) {
                    if (nodes() >= max_nodes) {
                        exhausted_ = true;
                        if (!next.empty()) layers_.push_back(std::move(next));
                        return false;
                    }
                    Word nw = w;
                    nw.append(gen, Int(s));
                    GroupElement ne(group_,
                                    group_->collect_onto(e.exps(), Word::generator(gen, Int(s))));
                    auto [it, inserted] = seen_.emplace(ne.exps(), 0);
                    if (inserted) next.emplace_back(std::move(nw), std::move(ne));
                }
            }
        }
        if (next.empty()) {
            exhausted_ = true;  // group exhausted (finite at this budget)
            return false;
        }
        layers_.push_back(std::move(next));
        return true;
    }

    bool exhausted() const { return exhausted_; }

  private:
    PresentationPtr group_;
    std::map<std::vector<Int>, int> seen_;
    std::vector<std::vector<std::pair<Word, GroupElement>>> layers_;
    bool exhausted_ = false;
};

[[noreturn]] void unsound_witness() {
    throw std::logic_error("oracle produced a witness that fails re-verification");
}

}  // namespace

OracleResult csp_enumerate(const PresentationPtr& g,
                           const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                           const SearchBudget& budget) {
    for (const auto& [a, b] : pairs)
        if (a.group().get() != g.get() || b.group().get() != g.get()) throw GroupMismatch();

    ElementBfs bfs(g);
    OracleResult res;
    for (int r = 0; r <= budget.max_radius; ++r) {
        if (r > bfs.radius() && !bfs.expand(budget.max_nodes)) break;
        if (r > bfs.radius()) break;
        res.radius_reached = r;
        for (const auto& [w, c] : bfs.layer(r)) {
            bool ok = true;
            for (const auto& [a, b] : pairs)
                if (conjugate(a, c) != b) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            // Soundness: re-verify from the witness word before returning.
            GroupElement cw = GroupElement::from_word(g, w);
            for (const auto& [a, b] : pairs)
                if (conjugate(a, cw) != b) unsound_witness();
            res.found = true;
            res.witness = w;
            res.nodes_explored = bfs.nodes();
            return res;
        }
    }
    res.nodes_explored = bfs.nodes();
    return res;
}

OracleResult power_csp_enumerate(const PresentationPtr& g, const GroupElement& a,
                                 const GroupElement& b, const SearchBudget& budget) {
    if (a.group().get() != g.get() || b.group().get() != g.get()) throw GroupMismatch();

    ElementBfs bfs(g);
    OracleResult res;
    std::vector<GroupElement> pows{a};  // pows[n-1] = a^n
    // Exponent side of the dovetail is capped so exhaustion terminates.
    const long n_cap = 64 + 4L * budget.max_radius;

    for (long total = 1; total <= n_cap + budget.max_radius; ++total) {
        for (int r = 0; r <= budget.max_radius && r < total; ++r) {
            const long n = total - r;
            if (n < 1 || n > n_cap) continue;
            while (bfs.radius() < r && bfs.expand(budget.max_nodes)) {
            }
            if (bfs.radius() < r) continue;
            while (static_cast<long>(pows.size()) < n) pows.push_back(mul(pows.back(), a));
            const GroupElement& an = pows[n - 1];
            for (const auto& [w, c] : bfs.layer(r)) {
                if (an != conjugate(b, c)) continue;
                GroupElement cw = GroupElement::from_word(g, w);
                if (an != conjugate(b, cw)) unsound_witness();
                res.found = true;
                res.witness = w;
                res.exponent = Int(n);
                res.nodes_explored = bfs.nodes();
                res.radius_reached = r;
                return res;
            }
        }
    }
    res.nodes_explored = bfs.nodes();
    res.radius_reached = bfs.radius();
    return res;
}

OracleResult twisted_csp_enumerate(const PresentationPtr& g, const GroupElement& w,
                                   const GroupElement& t, const Endomorphism& phi,
                                   const Endomorphism& psi, const SearchBudget& budget) {
    if (w.group().get() != g.get() || t.group().get() != g.get()) throw GroupMismatch();
    if (!phi.verified()) phi.verify();
    if (!psi.verified()) psi.verify();

    ElementBfs bfs(g);
    OracleResult res;
    auto lhs = [&](const GroupElement& a) {
        return mul(mul(psi.apply(inv(a)), w), phi.apply(a));
    };

    for (int r = 0; r <= budget.max_radius; ++r) {
        if (r > bfs.radius() && !bfs.expand(budget.max_nodes)) break;
        if (r > bfs.radius()) break;
        res.radius_reached = r;
        for (const auto& [wd, a] : bfs.layer(r)) {
            if (lhs(a) != t) continue;
            GroupElement aw = GroupElement::from_word(g, wd);
            if (lhs(aw) != t) unsound_witness();
            res.found = true;
            res.witness = wd;
            res.nodes_explored = bfs.nodes();
            return res;
        }
    }
    res.nodes_explored = bfs.nodes();
    return res;
}

}  // namespace pcw::oracles
