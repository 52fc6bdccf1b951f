#include <json.hpp>

#include <deque>

#include "pcw/attacks.hpp"

namespace pcw::attacks {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<Rat> vec_of(const MatQ& m) {
    std::vector<Rat> v;
    v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c));
    return v;
}

// Incremental row echelon over Q used to keep only linearly independent
// span members.
class Echelon {
  public:
    // Returns true (and absorbs the vector) when v is independent of the
    // current rows.
    bool add(std::vector<Rat> v) {
        reduce(v);
        int pivot = -1;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) return false;
        Rat inv_p = 1 / v[pivot];
        for (auto& x : v) x *= inv_p;
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }

  private:
    void reduce(std::vector<Rat>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rat& f = v[pivots_[r]];
            if (f == 0) continue;
            Rat fr = f;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= fr * rows_[r][i];
        }
    }

    std::vector<std::vector<Rat>> rows_;
    std::vector<int> pivots_;
};

struct Span {
    std::vector<std::vector<SetLetter>> words;  // over the spanning set
    std::vector<MatQ> mats;                     // images under the unprimed set
};

// Right-multiplication closure of the span of {words in the set}; terminates
// because the dimension is bounded by dim^2.
Span closed_span(const std::vector<MatQ>& set_mats, int dim) {
    Span span;
    Echelon ech;
    std::deque<std::size_t> queue;

    MatQ id = MatQ::identity(dim);
    ech.add(vec_of(id));
    span.words.push_back({});
    span.mats.push_back(id);
    queue.push_back(0);

    std::vector<MatQ> inv_mats;
    inv_mats.reserve(set_mats.size());
    for (const auto& m : set_mats) inv_mats.push_back(m.inverse());

    while (!queue.empty()) {
        std::size_t at = queue.front();
        queue.pop_front();
        for (std::size_t gi = 0; gi < set_mats.size(); ++gi) {
            for (int sign : {1, -1}) {
                MatQ cand = span.mats[at] * (sign > 0 ? set_mats[gi] : inv_mats[gi]);
                if (!ech.add(vec_of(cand))) continue;
                auto w = span.words[at];
                w.push_back({static_cast<int>(gi) + 1, sign});
                span.words.push_back(std::move(w));
                span.mats.push_back(std::move(cand));
                queue.push_back(span.mats.size() - 1);
            }
        }
    }
    return span;
}

MatQ eval_span_word(const std::vector<SetLetter>& w, const std::vector<MatQ>& set_mats,
                    const std::vector<MatQ>& inv_mats, int dim) {
    MatQ m = MatQ::identity(dim);
    for (const auto& [idx, sign] : w)
        m = m * (sign > 0 ? set_mats[idx - 1] : inv_mats[idx - 1]);
    return m;
}

MatQ combine(const std::vector<MatQ>& parts, const std::vector<Rat>& coeffs, int dim) {
    MatQ m(dim, dim);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (coeffs[k] == 0) continue;
        m = m + parts[k].scaled(coeffs[k]);
    }
    return m;
}

}  // namespace

FieldAttackResult field_based_attack(const protocols::AagPublic& pub, const MatrixRep& rep,
                                     Side side) {
    FieldAttackResult res;
    const int dim = rep.dim;

    const std::vector<GroupElement>& span_set = side == Side::Alice ? pub.a_gens : pub.b_gens;
    const std::vector<GroupElement>& span_primed = side == Side::Alice ? pub.a_conj : pub.b_conj;
    const std::vector<GroupElement>& pair_lhs = side == Side::Alice ? pub.b_gens : pub.a_gens;
    const std::vector<GroupElement>& pair_rhs = side == Side::Alice ? pub.b_conj : pub.a_conj;

    auto images = [&](const std::vector<GroupElement>& v) {
        std::vector<MatQ> out;
        out.reserve(v.size());
        for (const auto& e : v) out.push_back(matrix_of(e, rep));
        return out;
    };
    std::vector<MatQ> span_mats = images(span_set);
    std::vector<MatQ> span_primed_mats = images(span_primed);
    std::vector<MatQ> lhs_mats = images(pair_lhs);
    std::vector<MatQ> rhs_mats = images(pair_rhs);

    Span span = closed_span(span_mats, dim);
    const int m = static_cast<int>(span.words.size());
    res.span_dim = m;

    // Stacked system over the span coordinates: for every pair (u, u') and
    // every matrix slot, sum_k lambda_k (u W_k - W_k u') = 0.
    const int eq_per_pair = dim * dim;
    MatQ sys(static_cast<int>(lhs_mats.size()) * eq_per_pair, m);
    for (std::size_t p = 0; p < lhs_mats.size(); ++p) {
        for (int k = 0; k < m; ++k) {
            MatQ diff = lhs_mats[p] * span.mats[k] - span.mats[k] * rhs_mats[p];
            auto v = vec_of(diff);
            for (int e = 0; e < eq_per_pair; ++e)
                sys.at(static_cast<int>(p) * eq_per_pair + e, k) = v[e];
        }
    }
    auto null_basis = sys.nullspace();
    res.solution_dim = static_cast<int>(null_basis.size());
    if (null_basis.empty()) {
        res.failure = "singular_system";
        return res;
    }

    // Deterministic sweep for an invertible solution: nullspace basis
    // members, prefix sums, then a moment-curve family.
    std::vector<MatQ> null_mats;
    null_mats.reserve(null_basis.size());
    for (const auto& coeffs : null_basis) null_mats.push_back(combine(span.mats, coeffs, dim));

    std::optional<std::pair<MatQ, std::vector<Rat>>> found;  // (X, lambda)
    auto try_lambda = [&](const std::vector<Rat>& lambda) {
        if (found) return;
        MatQ x = combine(span.mats, lambda, dim);
        if (x.det() != 0) found = {x, lambda};
    };

    auto lambda_from_null = [&](const std::vector<Rat>& weights) {
        std::vector<Rat> lambda(m, Rat(0));
        for (std::size_t b = 0; b < null_basis.size(); ++b) {
            if (weights[b] == 0) continue;
            for (int k = 0; k < m; ++k) lambda[k] += weights[b] * null_basis[b][k];
        }
        return lambda;
    };

    const int nb = static_cast<int>(null_basis.size());
    for (int b = 0; b < nb && !found; ++b) {
        std::vector<Rat> w(nb, Rat(0));
        w[b] = 1;
        try_lambda(lambda_from_null(w));
    }
    if (!found) {
        std::vector<Rat> w(nb, Rat(0));
        for (int b = 0; b < nb && !found; ++b) {
            w[b] = 1;
            try_lambda(lambda_from_null(w));
        }
    }
    for (long c = 2; c <= 2L * dim * nb + 2 && !found; ++c) {
        std::vector<Rat> w(nb);
        Rat acc = 1;
        for (int b = 0; b < nb; ++b) {
            w[b] = acc;
            acc *= c;
        }
        try_lambda(lambda_from_null(w));
    }
    if (!found) {
        res.failure = "singular_system";
        return res;
    }

    const auto& [x_mat, lambda] = *found;

    // Telescope: X^conj evaluates the same span words over the primed set.
    std::vector<MatQ> span_primed_inv;
    span_primed_inv.reserve(span_primed_mats.size());
    for (const auto& mm : span_primed_mats) span_primed_inv.push_back(mm.inverse());
    MatQ x_conj(dim, dim);
    for (int k = 0; k < m; ++k) {
        if (lambda[k] == 0) continue;
        x_conj = x_conj +
                 eval_span_word(span.words[k], span_primed_mats, span_primed_inv, dim)
                     .scaled(lambda[k]);
    }
    if (x_conj.det() == 0) {
        res.failure = "singular_system";
        return res;
    }
    MatQ kappa_mat = x_conj.inverse() * x_mat;
    if (side == Side::Alice) kappa_mat = kappa_mat.inverse();  // that side yields kappa^-1
    res.key_matrix = kappa_mat;

    // Read the group element back out of the matrix. Translation generators
    // are recognizable in the affine image; the shared key of an honest AAG
    // run is a pure translation (commutators die in the unit quotient).
    const int ng = static_cast<int>(rep.images.size());
    std::vector<int> translation_gen(dim - 1, 0);  // coordinate -> generator
    for (int gi = 0; gi < ng; ++gi) {
        const MatQ& img = rep.images[gi];
        int hot = -1;
        bool shape = true;
        for (int r = 0; r < dim && shape; ++r)
            for (int c = 0; c < dim; ++c) {
                Rat want = (r == c) ? 1 : 0;
                if (c == dim - 1 && r < dim - 1) {
                    if (img.at(r, c) == 1 && hot < 0)
                        hot = r;
                    else if (img.at(r, c) != 0)
                        shape = false;
                } else if (img.at(r, c) != want) {
                    shape = false;
                }
            }
        if (shape && hot >= 0) translation_gen[hot] = gi + 1;
    }

    bool readable = true;
    for (int r = 0; r < dim && readable; ++r)
        for (int c = 0; c < dim; ++c) {
            if (c == dim - 1 && r < dim - 1) continue;  // translation column
            if (kappa_mat.at(r, c) != (r == c ? 1 : 0)) readable = false;
        }
    if (readable) {
        std::vector<Int> exps(pub.group->ngens(), 0);
        for (int r = 0; r < dim - 1; ++r) {
            const Rat& z = kappa_mat.at(r, dim - 1);
            if (z == 0) continue;
            if (z.get_den() != 1 || translation_gen[r] == 0) {
                readable = false;
                break;
            }
            exps[translation_gen[r] - 1] = z.get_num();
        }
        if (readable) {
            GroupElement key(pub.group, std::move(exps));
            if (matrix_of(key, rep) == kappa_mat) {
                res.key = std::move(key);
                res.success = true;
                return res;
            }
        }
    }
    res.failure = "unsupported_rep";
    return res;
}

std::string field_result_json(const FieldAttackResult& r) {
    ordered_json j;
    j["schema"] = "pcw-attack-field/1";
    j["outcome"] = r.success ? "success" : r.failure;
    if (r.key) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : r.key->exps()) arr.push_back(v.get_str());
        j["key"] = arr;
    }
    j["span_dim"] = r.span_dim;
    j["solution_dim"] = r.solution_dim;
    return j.dump(2) + "\n";
}

}  // namespace pcw::attacks
