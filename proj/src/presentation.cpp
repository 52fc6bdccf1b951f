#include "pcw/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace pcw {

Word Word::parse(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        if (tok.size() < 2 || tok[0] != 'g')
            throw MalformedWord("bad word token '" + tok + "'");
        auto caret = tok.find('^');
        int gen = 0;
        std::string ge = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        try {
            std::size_t used = 0;
            gen = std::stoi(ge, &used);
            if (used != ge.size()) throw std::invalid_argument(ge);
        } catch (const std::exception&) {
            throw MalformedWord("bad generator index in token '" + tok + "'");
        }
        Int exp = 1;
        if (caret != std::string::npos) {
            std::string es = tok.substr(caret + 1);
            if (es.empty() || es.find_first_not_of("-0123456789") != std::string::npos || es == "-")
                throw MalformedWord("bad exponent in token '" + tok + "'");
            exp = Int(es);
        }
        w.append(gen, exp);
    }
    return w;
}

PcPresentation::PcPresentation(std::vector<Int> orders)
    : ngens_(static_cast<int>(orders.size())), orders_(std::move(orders)) {
    for (const Int& r : orders_)
        if (r != 0 && r < 2)
            throw PresentationError("finite relative order must be >= 2");
    conj_pos_.resize(static_cast<std::size_t>(ngens_) * ngens_);
    conj_neg_.resize(static_cast<std::size_t>(ngens_) * ngens_);
    powers_.resize(ngens_);
    pow_abelian_.assign(ngens_, true);
}

static void check_tail_word(const Word& w, int min_excl, int ngens, const char* what) {
    for (const auto& s : w.syllables()) {
        if (s.gen <= min_excl || s.gen > ngens)
            throw PresentationError(std::string(what) +
                                    ": relator may only use generators of index > " +
                                    std::to_string(min_excl));
    }
}

// A stored relator word equal to g_j (or unset) marks a commuting pair.
static bool trivial_shape(const Word& w, int j) {
    return w.empty() || (w.size() == 1 && w[0].gen == j && w[0].exp == 1);
}

void PcPresentation::set_conjugate(int i, int j, bool positive, const Word& w) {
    if (i < 1 || j <= i || j > ngens_)
        throw PresentationError("conjugation relation needs 1 <= i < j <= ngens");
    if (w.empty())
        throw PresentationError("conjugation relator must be a nonempty word");
    check_tail_word(w, i, ngens_, "conjugation relation");
    auto& slot = (positive ? conj_pos_ : conj_neg_)[pair_index(i, j)];
    slot.word = w;
    classify_all();
}

void PcPresentation::set_power(int i, const Word& w) {
    if (i < 1 || i > ngens_ || orders_[i - 1] == 0)
        throw PresentationError("power relation only for finite-order generators");
    check_tail_word(w, i, ngens_, "power relation");
    powers_[i - 1] = w;
    classify_all();
}

bool PcPresentation::commutes(int i, int j) const {
    if (i == j) return true;
    int a = std::min(i, j), b = std::max(i, j);
    return trivial_shape(rel(a, b, true).word, b) && trivial_shape(rel(a, b, false).word, b);
}

void PcPresentation::classify_all() {
    for (int i = 1; i <= ngens_; ++i) {
        for (int j = i + 1; j <= ngens_; ++j) {
            for (bool positive : {true, false}) {
                auto& slot = (positive ? conj_pos_ : conj_neg_)[pair_index(i, j)];
                const Word& w = slot.word;
                if (trivial_shape(w, j)) {
                    slot.kind = RelKind::Trivial;
                } else if (w.size() == 2 && w[0].gen == j && w[0].exp == 1 && w[1].gen > j &&
                           commutes(i, w[1].gen) && commutes(j, w[1].gen)) {
                    slot.kind = RelKind::CentralTail;
                    slot.tail_gen = w[1].gen;
                    slot.tail_exp = w[1].exp;
                } else {
                    bool abelian = true;
                    for (std::size_t a = 0; a < w.size() && abelian; ++a)
                        for (std::size_t b = a + 1; b < w.size() && abelian; ++b)
                            abelian = commutes(w[a].gen, w[b].gen);
                    slot.kind = abelian ? RelKind::AbelianWord : RelKind::General;
                }
            }
        }
    }
    for (int i = 1; i <= ngens_; ++i) {
        bool abelian = true;
        if (powers_[i - 1]) {
            const Word& w = *powers_[i - 1];
            for (std::size_t a = 0; a < w.size() && abelian; ++a)
                for (std::size_t b = a + 1; b < w.size() && abelian; ++b)
                    abelian = commutes(w[a].gen, w[b].gen);
        }
        pow_abelian_[i - 1] = abelian;
    }
}

bool PcPresentation::has_conjugate(int i, int j, bool positive) const {
    const auto& r = rel(i, j, positive);
    return !(r.kind == RelKind::Trivial && r.word.empty());
}

Word PcPresentation::conjugate_word(int i, int j, bool positive) const {
    const auto& r = rel(i, j, positive);
    if (r.word.empty()) return Word::generator(j);
    return r.word;
}

const Word* PcPresentation::power_word(int i) const {
    if (!powers_[i - 1]) return nullptr;
    return &*powers_[i - 1];
}

bool PcPresentation::operator==(const PcPresentation& o) const {
    if (ngens_ != o.ngens_ || orders_ != o.orders_) return false;
    for (int i = 1; i <= ngens_; ++i) {
        for (int j = i + 1; j <= ngens_; ++j)
            for (bool pos : {true, false})
                if (!(conjugate_word(i, j, pos) == o.conjugate_word(i, j, pos))) return false;
        const Word* a = power_word(i);
        const Word* b = o.power_word(i);
        if ((a == nullptr) != (b == nullptr)) return false;
        if (a != nullptr && !(*a == *b)) return false;
    }
    return true;
}

int PcPresentation::hirsch_length() const {
    int h = 0;
    for (const Int& r : orders_)
        if (r == 0) ++h;
    return h;
}

Word PcPresentation::word_of(const std::vector<Int>& exps) const {
    Word w;
    for (int g = 1; g <= ngens_; ++g)
        if (exps[g - 1] != 0) w.append(g, exps[g - 1]);
    return w;
}

namespace {

// Work items are consumed front-first; stored back-to-front in a vector.
struct WorkStack {
    std::vector<Syllable> items;  // back() is the next syllable

    bool empty() const { return items.empty(); }
    Syllable pop() {
        Syllable s = std::move(items.back());
        items.pop_back();
        return s;
    }
    void push_front(Syllable s) { items.push_back(std::move(s)); }
    void push_word_front(const Word& w, bool invert) {
        // Whole word will be consumed left-to-right, so push it reversed
        // (or forward with negated exponents when inverting).
        if (!invert) {
            for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it)
                items.push_back(*it);
        } else {
            for (const auto& s : w.syllables()) items.emplace_back(s.gen, -s.exp);
        }
    }
};

}  // namespace

std::vector<Int> PcPresentation::collect(const Word& w, long budget) const {
    return collect_onto(std::vector<Int>(ngens_, 0), w, budget);
}

std::vector<Int> PcPresentation::collect_onto(std::vector<Int> start, const Word& w,
                                              long budget) const {
    for (const auto& s : w.syllables())
        if (s.gen < 1 || s.gen > ngens_)
            throw MalformedWord("generator index " + std::to_string(s.gen) +
                                " out of range 1.." + std::to_string(ngens_));

    // acc holds a collected normal form as syllables with ascending gens.
    std::vector<Syllable> acc;
    acc.reserve(ngens_);
    for (int g = 1; g <= ngens_; ++g)
        if (start[g - 1] != 0) acc.emplace_back(g, start[g - 1]);

    WorkStack stack;
    stack.push_word_front(w, false);

    long steps = 0;
    auto charge = [&](long n) {
        steps += n;
        if (steps > budget)
            throw BudgetExceeded("collection exceeded step budget of " + std::to_string(budget));
    };

    // Reduces the trailing accumulator syllable into [0, r) and queues the
    // overflow power word.
    auto reduce_power_at_back = [&](WorkStack& st) {
        while (!acc.empty()) {
            Syllable& b = acc.back();
            if (b.exp == 0) {
                acc.pop_back();
                continue;
            }
            if (!finite_order(b.gen)) return;
            const Int& r = order(b.gen);
            if (b.exp >= 0 && b.exp < r) return;
            Int q, rem;
            floor_divmod(b.exp, r, q, rem);
            b.exp = rem;
            const Word* pw = power_word(b.gen);
            int pgen = b.gen;
            if (b.exp == 0) acc.pop_back();
            if (pw == nullptr || pw->empty() || q == 0) return;
            // g^(qr) = (w_ii)^q.
            if (pow_abelian_[pgen - 1]) {
                charge(static_cast<long>(pw->size()));
                for (auto wt = pw->syllables().rbegin(); wt != pw->syllables().rend(); ++wt)
                    st.push_front(Syllable(wt->gen, wt->exp * q));
                return;
            }
            if (!fits_long(q))
                throw BudgetExceeded("power overflow too large to expand");
            long qn = std::labs(q.get_si());
            charge(qn * static_cast<long>(pw->size()));
            bool inv = q < 0;
            for (long k = 0; k < qn; ++k) st.push_word_front(*pw, inv);
            return;
        }
    };

    while (!stack.empty()) {
        charge(1);
        Syllable cur = stack.pop();
        if (cur.exp == 0) continue;
        const int i = cur.gen;

        // Find split point: acc = P . Q with P using gens <= i.
        std::size_t split = acc.size();
        while (split > 0 && acc[split - 1].gen > i) --split;

        if (split == acc.size()) {
            // Append/merge at the back.
            if (!acc.empty() && acc.back().gen == i)
                acc.back().exp += cur.exp;
            else
                acc.emplace_back(i, cur.exp);
            reduce_power_at_back(stack);
            continue;
        }

        // Q = acc[split..] uses gens > i and must be passed over.
        // Whole-exponent transit needs a closed form for (g_j^a)^{g_i^E},
        // which Trivial and CentralTail relations have.
        bool fast = true;
        for (std::size_t k = split; k < acc.size() && fast; ++k) {
            RelKind kind = rel(i, acc[k].gen, true).kind;
            RelKind kindn = rel(i, acc[k].gen, false).kind;
            fast = (kind == RelKind::Trivial || kind == RelKind::CentralTail) &&
                   (kindn == RelKind::Trivial || kindn == RelKind::CentralTail);
        }

        if (fast) {
            // Q^{g_i^e} computed syllable-wise in closed form:
            //   Trivial:      g_j^a          -> g_j^a
            //   CentralTail:  g_j^a          -> g_j^a g_c^{t*a*e}
            // Push transformed Q, then place g_i^e at the split point.
            std::vector<Syllable> q(acc.begin() + split, acc.end());
            acc.resize(split);
            charge(static_cast<long>(q.size()) + 1);
            // Push in reverse so the first syllable of Q' pops first.
            for (auto it = q.rbegin(); it != q.rend(); ++it) {
                bool positive = cur.exp > 0;
                const ConjRel& cr = rel(i, it->gen, positive);
                if (cr.kind == RelKind::CentralTail) {
                    stack.push_front(Syllable(cr.tail_gen, cr.tail_exp * it->exp * abs(cur.exp)));
                    stack.push_front(Syllable(it->gen, it->exp));
                } else {  // Trivial both ways
                    stack.push_front(Syllable(it->gen, it->exp));
                }
            }
            if (!acc.empty() && acc.back().gen == i)
                acc.back().exp += cur.exp;
            else
                acc.emplace_back(i, cur.exp);
            reduce_power_at_back(stack);
            continue;
        }

        // General relation present: move one unit of g_i at a time.
        int s = sgn(cur.exp);
        Int rest = cur.exp - s;
        std::vector<Syllable> q(acc.begin() + split, acc.end());
        acc.resize(split);
        if (rest != 0) stack.push_front(Syllable(i, rest));
        // Push Q^{g_i^s} (reversed so leftmost pops first).
        for (auto it = q.rbegin(); it != q.rend(); ++it) {
            const ConjRel& cr = rel(i, it->gen, s > 0);
            switch (cr.kind) {
                case RelKind::Trivial:
                    charge(1);
                    stack.push_front(*it);
                    break;
                case RelKind::CentralTail:
                    charge(2);
                    stack.push_front(Syllable(cr.tail_gen, cr.tail_exp * it->exp));
                    stack.push_front(Syllable(it->gen, it->exp));
                    break;
                case RelKind::AbelianWord: {
                    // Letters of the relator commute, so (u)^a scales each
                    // exponent by a.
                    charge(static_cast<long>(cr.word.size()));
                    for (auto wt = cr.word.syllables().rbegin();
                         wt != cr.word.syllables().rend(); ++wt)
                        stack.push_front(Syllable(wt->gen, wt->exp * it->exp));
                    break;
                }
                case RelKind::General: {
                    // (g_j^a)^{g_i^s} = (relator word)^a: |a| copies.
                    if (!fits_long(it->exp))
                        throw BudgetExceeded("conjugation exponent too large to expand");
                    long an = std::labs(it->exp.get_si());
                    charge(an * static_cast<long>(cr.word.size()));
                    bool inv = it->exp < 0;
                    for (long k = 0; k < an; ++k) stack.push_word_front(cr.word, inv);
                    break;
                }
            }
        }
        stack.push_front(Syllable(i, Int(s)));
    }

    std::vector<Int> out(ngens_, 0);
    for (const auto& syl : acc) out[syl.gen - 1] = syl.exp;
    return out;
}

std::string PcPresentation::describe() const {
    std::ostringstream os;
    os << "pcgroup ngens=" << ngens_ << " hirsch=" << hirsch_length();
    return os.str();
}

// ---------------------------------------------------------------------------
// pcgroup v1 text format

PcPresentation parse_presentation(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw PresentationError("line " + std::to_string(lineno) + ": " + msg);
    };

    if (!std::getline(in, line)) throw PresentationError("empty presentation file");
    ++lineno;
    {
        std::istringstream ls(line);
        std::string magic, ver;
        ls >> magic >> ver;
        if (magic != "pcgroup" || ver != "v1") fail("expected header 'pcgroup v1'");
    }

    int ngens = -1;
    std::vector<Int> orders;
    std::map<std::pair<int, int>, int> seen_orders;
    std::map<std::tuple<char, int, int>, int> seen_conj;
    std::map<int, int> seen_pow;
    struct PendingConj {
        int i, j;
        bool pos;
        Word w;
    };
    std::vector<PendingConj> conj;
    std::vector<std::pair<int, Word>> pows;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw[0] == '#') continue;
        if (kw == "ngens") {
            if (ngens >= 0) fail("duplicate ngens");
            if (!(ls >> ngens) || ngens < 0) fail("bad ngens");
            orders.assign(ngens, 0);
        } else if (kw == "order") {
            if (ngens < 0) fail("ngens must precede order lines");
            int i;
            std::string rs;
            if (!(ls >> i >> rs)) fail("order line needs index and value");
            if (i < 1 || i > ngens) fail("order index out of range");
            if (seen_orders.count({i, 0})) fail("duplicate order for generator " + std::to_string(i));
            seen_orders[{i, 0}] = lineno;
            try {
                orders[i - 1] = Int(rs);
            } catch (...) {
                fail("bad order value '" + rs + "'");
            }
            if (orders[i - 1] < 2) fail("relative order must be >= 2");
        } else if (kw == "conj") {
            if (ngens < 0) fail("ngens must precede conj lines");
            std::string sgn;
            int i, j;
            if (!(ls >> sgn >> i >> j)) fail("conj line needs sign, i, j");
            if (sgn != "+" && sgn != "-") fail("conj sign must be + or -");
            if (i < 1 || j <= i || j > ngens) fail("conj indices need 1 <= i < j <= ngens");
            auto key = std::make_tuple(sgn[0], i, j);
            if (seen_conj.count(key)) fail("duplicate conj relation");
            seen_conj[key] = lineno;
            std::string rest;
            std::getline(ls, rest);
            Word w;
            try {
                w = Word::parse(rest);
            } catch (const MalformedWord& e) {
                fail(e.what());
            }
            if (w.max_generator() > ngens) fail("relator uses generator beyond ngens");
            conj.push_back({i, j, sgn == "+", w});
        } else if (kw == "pow") {
            if (ngens < 0) fail("ngens must precede pow lines");
            int i;
            if (!(ls >> i)) fail("pow line needs index");
            if (i < 1 || i > ngens) fail("pow index out of range");
            if (seen_pow.count(i)) fail("duplicate pow relation");
            seen_pow[i] = lineno;
            std::string rest;
            std::getline(ls, rest);
            Word w;
            try {
                w = Word::parse(rest);
            } catch (const MalformedWord& e) {
                fail(e.what());
            }
            if (w.max_generator() > ngens) fail("relator uses generator beyond ngens");
            pows.emplace_back(i, w);
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (ngens < 0) throw PresentationError("missing ngens line");

    PcPresentation p(orders);
    try {
        for (const auto& c : conj) p.set_conjugate(c.i, c.j, c.pos, c.w);
        for (const auto& pr : pows) {
            if (orders[pr.first - 1] == 0)
                throw PresentationError("pow relation for infinite-order generator " +
                                        std::to_string(pr.first));
            p.set_power(pr.first, pr.second);
        }
    } catch (const PresentationError& e) {
        throw PresentationError(std::string("presentation invalid: ") + e.what());
    }
    return p;
}

PcPresentation parse_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PresentationError("cannot open presentation file " + path);
    return parse_presentation(in);
}

std::string format_presentation(const PcPresentation& p) {
    std::ostringstream os;
    os << "pcgroup v1\n";
    os << "ngens " << p.ngens() << "\n";
    for (int i = 1; i <= p.ngens(); ++i)
        if (p.finite_order(i)) os << "order " << i << " " << p.order(i) << "\n";
    for (int i = 1; i <= p.ngens(); ++i) {
        for (int j = i + 1; j <= p.ngens(); ++j) {
            for (bool pos : {true, false}) {
                Word w = p.conjugate_word(i, j, pos);
                bool trivial = (w.size() == 1 && w[0].gen == j && w[0].exp == 1);
                if (!trivial)
                    os << "conj " << (pos ? "+" : "-") << " " << i << " " << j << " " << w.str()
                       << "\n";
            }
        }
    }
    for (int i = 1; i <= p.ngens(); ++i)
        if (const Word* w = p.power_word(i)) os << "pow " << i << " " << w->str() << "\n";
    return os.str();
}

}  // namespace pcw
