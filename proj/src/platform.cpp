#include "pcw/platform.hpp"

#include <fstream>
#include <sstream>

namespace pcw {

MatQ matrix_of(const GroupElement& g, const MatrixRep& rep) {
    if (static_cast<int>(rep.images.size()) != g.group()->ngens()) throw RepMismatch();
    MatQ m = MatQ::identity(rep.dim);
    const auto& exps = g.exps();
    for (int i = 0; i < g.group()->ngens(); ++i) {
        if (exps[i] == 0) continue;
        m = m * rep.images[i].pow(exps[i]);
    }
    return m;
}

static MatQ eval_word(const Word& w, const MatrixRep& rep) {
    MatQ m = MatQ::identity(rep.dim);
    for (const auto& s : w.syllables()) m = m * rep.images[s.gen - 1].pow(s.exp);
    return m;
}

bool rep_respects_relations(const PcPresentation& p, const MatrixRep& rep) {
    if (static_cast<int>(rep.images.size()) != p.ngens()) return false;
    for (const auto& img : rep.images)
        if (img.rows() != rep.dim || img.cols() != rep.dim || img.det() == 0) return false;
    for (int i = 1; i <= p.ngens(); ++i) {
        MatQ gi = rep.images[i - 1];
        MatQ gi_inv = gi.inverse();
        for (int j = i + 1; j <= p.ngens(); ++j) {
            MatQ gj = rep.images[j - 1];
            if (!(gi_inv * gj * gi == eval_word(p.conjugate_word(i, j, true), rep))) return false;
            if (!(gi * gj * gi_inv == eval_word(p.conjugate_word(i, j, false), rep))) return false;
        }
        if (p.finite_order(i)) {
            Word rhs = p.power_word(i) ? *p.power_word(i) : Word();
            if (!(gi.pow(p.order(i)) == eval_word(rhs, rep))) return false;
        }
    }
    return true;
}

namespace platform {

PlatformGroup heisenberg() {
    PcPresentation p(std::vector<Int>(3, 0));
    Word u12 = Word::generator(2);
    u12.append(3, 1);
    Word v12 = Word::generator(2);
    v12.append(3, -1);
    p.set_conjugate(1, 2, true, u12);
    p.set_conjugate(1, 2, false, v12);
    // g3 central: (1,3) and (2,3) relations stay trivial.

    PlatformGroup g;
    g.name = "heisenberg";
    g.presentation = std::make_shared<PcPresentation>(std::move(p));

    MatrixRep rep;
    rep.dim = 3;
    MatQ m1 = MatQ::identity(3), m2 = MatQ::identity(3), m3 = MatQ::identity(3);
    m1.at(0, 1) = 1;   // I + E12
    m2.at(1, 2) = 1;   // I + E23
    m3.at(0, 2) = -1;  // I - E13, so that g2^g1 = g2 g3
    rep.images = {m1, m2, m3};
    if (!rep_respects_relations(*g.presentation, rep))
        throw PlatformError("heisenberg: matrix image fails relations");
    g.matrix_image = std::move(rep);
    return g;
}

PlatformGroup unitriangular(int n) {
    if (n < 3) throw PlatformError("unitriangular needs n >= 3");
    // Generator order: superdiagonals d = 1..n-1, row-major inside each.
    const int ngens = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pos;  // gen index -> (row, col), 0-based
    std::vector<std::vector<int>> gen_at(n, std::vector<int>(n, 0));
    pos.reserve(ngens);
    for (int d = 1; d < n; ++d)
        for (int r = 0; r + d < n; ++r) {
            pos.emplace_back(r, r + d);
            gen_at[r][r + d] = static_cast<int>(pos.size());  // 1-based
        }

    PcPresentation p(std::vector<Int>(ngens, 0));
    // t_ab^t_ij: nontrivial only when j == a (gives tail t_ib^-1) or b == i
    // (gives tail t_aj); see the E_ij E_ab product rule.
    for (int gi = 1; gi <= ngens; ++gi) {
        auto [i, j] = pos[gi - 1];
        for (int gj = gi + 1; gj <= ngens; ++gj) {
            auto [a, b] = pos[gj - 1];
            if (j == a) {  // chain i->j=a->b
                Word u = Word::generator(gj);
                u.append(gen_at[i][b], -1);
                Word v = Word::generator(gj);
                v.append(gen_at[i][b], 1);
                p.set_conjugate(gi, gj, true, u);
                p.set_conjugate(gi, gj, false, v);
            } else if (b == i) {  // chain a->b=i->j
                Word u = Word::generator(gj);
                u.append(gen_at[a][j], 1);
                Word v = Word::generator(gj);
                v.append(gen_at[a][j], -1);
                p.set_conjugate(gi, gj, true, u);
                p.set_conjugate(gi, gj, false, v);
            }
        }
    }

    PlatformGroup g;
    g.name = "ut" + std::to_string(n);
    g.presentation = std::make_shared<PcPresentation>(std::move(p));

    MatrixRep rep;
    rep.dim = n;
    for (int k = 0; k < ngens; ++k) {
        MatQ m = MatQ::identity(n);
        m.at(pos[k].first, pos[k].second) = 1;
        rep.images.push_back(std::move(m));
    }
    if (!rep_respects_relations(*g.presentation, rep))
        throw PlatformError("unitriangular: matrix image fails relations");
    g.matrix_image = std::move(rep);
    return g;
}

PlatformGroup semidirect_from_action(int degree, const std::vector<MatQ>& action,
                                     const std::string& name) {
    if (degree < 1) throw PlatformError("semidirect degree must be >= 1");
    const int k = static_cast<int>(action.size());
    for (const auto& m : action) {
        if (m.rows() != degree || m.cols() != degree)
            throw PlatformError("action matrix has wrong dimensions");
        for (int r = 0; r < degree; ++r)
            for (int c = 0; c < degree; ++c)
                if (m.at(r, c).get_den() != 1)
                    throw PlatformError("action matrix entries must be integers");
        Rat d = m.det();
        if (d != 1 && d != -1) throw PlatformError("action matrix is not unimodular");
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (!(action[a] * action[b] == action[b] * action[a]))
                throw PlatformError("action matrices must pairwise commute");

    // Generators: mu_1..mu_k (units) then tau_1..tau_degree (translations).
    const int ngens = k + degree;
    PcPresentation p(std::vector<Int>(ngens, 0));
    std::vector<MatQ> inverses;
    inverses.reserve(k);
    for (const auto& m : action) inverses.push_back(m.inverse());
    for (int u = 1; u <= k; ++u) {
        for (int t = 1; t <= degree; ++t) {
            // tau_t^mu_u has coordinate vector = column t of M_u.
            Word pos_w, neg_w;
            for (int r = 0; r < degree; ++r) {
                const Rat& e = action[u - 1].at(r, t - 1);
                if (e != 0) pos_w.append(k + r + 1, e.get_num());
                const Rat& ei = inverses[u - 1].at(r, t - 1);
                if (ei != 0) neg_w.append(k + r + 1, ei.get_num());
            }
            p.set_conjugate(u, k + t, true, pos_w);
            p.set_conjugate(u, k + t, false, neg_w);
        }
    }

    PlatformGroup g;
    g.name = name;
    g.presentation = std::make_shared<PcPresentation>(std::move(p));

    // Affine image: tau_t -> [[I, e_t],[0,1]], mu_u -> [[M_u^-1, 0],[0,1]]
    // (the inverse block makes conjugation act as M_u on coordinates).
    MatrixRep rep;
    rep.dim = degree + 1;
    for (int u = 0; u < k; ++u) {
        MatQ m = MatQ::identity(degree + 1);
        for (int r = 0; r < degree; ++r)
            for (int c = 0; c < degree; ++c) m.at(r, c) = inverses[u].at(r, c);
        rep.images.push_back(std::move(m));
    }
    for (int t = 0; t < degree; ++t) {
        MatQ m = MatQ::identity(degree + 1);
        m.at(t, degree) = 1;
        rep.images.push_back(std::move(m));
    }
    if (!rep_respects_relations(*g.presentation, rep))
        throw PlatformError("semidirect: matrix image fails relations");
    g.matrix_image = std::move(rep);

    // With a single unit whose action fixes no nonzero lattice vector, the
    // unit generator is self-centralizing: C(mu) = <mu>.
    if (k == 1) {
        MatQ m_minus_i = action[0] - MatQ::identity(degree);
        if (m_minus_i.det() != 0) g.certified_base = 1;
    }
    return g;
}

PlatformGroup direct_product(const PlatformGroup& a, const PlatformGroup& b) {
    const int na = a.presentation->ngens();
    const int nb = b.presentation->ngens();
    std::vector<Int> orders;
    orders.reserve(na + nb);
    for (const auto& r : a.presentation->orders()) orders.push_back(r);
    for (const auto& r : b.presentation->orders()) orders.push_back(r);
    PcPresentation p(orders);

    auto shift_word = [](const Word& w, int off) {
        Word out;
        for (const auto& s : w.syllables()) out.append(s.gen + off, s.exp);
        return out;
    };
    for (int i = 1; i <= na; ++i) {
        for (int j = i + 1; j <= na; ++j) {
            if (a.presentation->has_conjugate(i, j, true))
                p.set_conjugate(i, j, true, a.presentation->conjugate_word(i, j, true));
            if (a.presentation->has_conjugate(i, j, false))
                p.set_conjugate(i, j, false, a.presentation->conjugate_word(i, j, false));
        }
        if (const Word* w = a.presentation->power_word(i)) p.set_power(i, *w);
    }
    for (int i = 1; i <= nb; ++i) {
        for (int j = i + 1; j <= nb; ++j) {
            if (b.presentation->has_conjugate(i, j, true))
                p.set_conjugate(i + na, j + na, true,
                                shift_word(b.presentation->conjugate_word(i, j, true), na));
            if (b.presentation->has_conjugate(i, j, false))
                p.set_conjugate(i + na, j + na, false,
                                shift_word(b.presentation->conjugate_word(i, j, false), na));
        }
        if (const Word* w = b.presentation->power_word(i))
            p.set_power(i + na, shift_word(*w, na));
    }

    PlatformGroup g;
    g.name = a.name + "x" + b.name;
    g.presentation = std::make_shared<PcPresentation>(std::move(p));
    std::vector<int> left(na), right(nb);
    for (int i = 0; i < na; ++i) left[i] = i + 1;
    for (int i = 0; i < nb; ++i) right[i] = na + i + 1;
    g.commuting_pair = {left, right};

    if (a.matrix_image && b.matrix_image) {
        // Block-diagonal image.
        MatrixRep rep;
        rep.dim = a.matrix_image->dim + b.matrix_image->dim;
        auto embed = [&](const MatQ& m, int off) {
            MatQ out = MatQ::identity(rep.dim);
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) out.at(r + off, c + off) = m.at(r, c);
            return out;
        };
        for (const auto& m : a.matrix_image->images) rep.images.push_back(embed(m, 0));
        for (const auto& m : b.matrix_image->images)
            rep.images.push_back(embed(m, a.matrix_image->dim));
        if (!rep_respects_relations(*g.presentation, rep))
            throw PlatformError("direct_product: matrix image fails relations");
        g.matrix_image = std::move(rep);
    }
    return g;
}

PlatformGroup zsqrt2() {
    MatQ m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;  // multiplication by 1+sqrt(2) on the basis {1, sqrt 2}
    return semidirect_from_action(2, {m}, "zsqrt2");
}

PlatformGroup golden() {
    MatQ m(2, 2);
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;  // multiplication by phi on the basis {1, phi}
    return semidirect_from_action(2, {m}, "golden");
}

PlatformGroup hirsch7() {
    // Rank-5 lattice; two commuting block units (1+sqrt 2 on the first
    // plane, the Pisot unit of x^3 - x - 1 on the last three coordinates).
    MatQ u1 = MatQ::identity(5), u2 = MatQ::identity(5);
    u1.at(0, 0) = 1;
    u1.at(0, 1) = 2;
    u1.at(1, 0) = 1;
    u1.at(1, 1) = 1;
    u2.at(2, 2) = 0;
    u2.at(2, 3) = 0;
    u2.at(2, 4) = 1;
    u2.at(3, 2) = 1;
    u2.at(3, 3) = 0;
    u2.at(3, 4) = 1;
    u2.at(4, 2) = 0;
    u2.at(4, 3) = 1;
    u2.at(4, 4) = 0;
    return semidirect_from_action(5, {u1, u2}, "hirsch7");
}

}  // namespace platform

// ---------------------------------------------------------------------------
// matrixrep v1 text format

MatrixRep parse_matrix_rep(std::istream& in) {
    std::string magic, ver;
    in >> magic >> ver;
    if (magic != "matrixrep" || ver != "v1")
        throw MatrixError("expected header 'matrixrep v1'");
    std::string kw;
    int dim = 0, ngens = 0;
    in >> kw >> dim;
    if (kw != "dim" || dim < 1) throw MatrixError("bad dim line");
    in >> kw >> ngens;
    if (kw != "ngens" || ngens < 1) throw MatrixError("bad ngens line");
    MatrixRep rep;
    rep.dim = dim;
    for (int g = 0; g < ngens; ++g) {
        MatQ m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                std::string tok;
                if (!(in >> tok)) throw MatrixError("truncated matrix data");
                try {
                    Rat v(tok);
                    v.canonicalize();
                    m.at(r, c) = v;
                } catch (...) {
                    throw MatrixError("bad rational token '" + tok + "'");
                }
            }
        rep.images.push_back(std::move(m));
    }
    return rep;
}

MatrixRep parse_matrix_rep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixError("cannot open matrix rep file " + path);
    return parse_matrix_rep(in);
}

std::string format_matrix_rep(const MatrixRep& rep) {
    std::ostringstream os;
    os << "matrixrep v1\n";
    os << "dim " << rep.dim << "\n";
    os << "ngens " << rep.images.size() << "\n";
    for (const auto& m : rep.images) {
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c).get_str();
            os << "\n";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pcw
