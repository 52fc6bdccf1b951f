#include <json.hpp>

#include <algorithm>
#include <chrono>

#include "pcw/attacks.hpp"

namespace pcw::attacks {

using ordered_json = nlohmann::ordered_json;

namespace {

struct BeamState {
    Int length;
    std::vector<GroupElement> tuple;
    std::vector<SetLetter> word;  // accumulated conjugator letters
    std::string tuple_key;        // lexicographic tie-break serialization

    static std::string serialize(const std::vector<GroupElement>& tuple) {
        std::string s;
        for (const auto& e : tuple) {
            s += e.str();
            s.push_back(';');
        }
        return s;
    }
};

Int tuple_length(const std::vector<GroupElement>& tuple) {
    Int n = 0;
    for (const auto& e : tuple) n += e.length();
    return n;
}

bool beam_less(const BeamState& a, const BeamState& b) {
    int c = cmp(a.length, b.length);
    if (c != 0) return c < 0;
    if (a.tuple_key != b.tuple_key) return a.tuple_key < b.tuple_key;
    // Final tie-break: shorter accumulated word, then letter-wise.
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    for (std::size_t i = 0; i < a.word.size(); ++i) {
        if (a.word[i].index != b.word[i].index) return a.word[i].index < b.word[i].index;
        if (a.word[i].sign != b.word[i].sign) return a.word[i].sign > b.word[i].sign;
    }
    return false;
}

GroupElement eval_set_word(const std::vector<GroupElement>& set,
                           const std::vector<SetLetter>& word, const PresentationPtr& g) {
    GroupElement acc = GroupElement::identity(g);
    for (const auto& [idx, sign] : word) {
        const GroupElement& base = set[idx - 1];
        acc = mul(acc, sign > 0 ? base : inv(base));
    }
    return acc;
}

std::vector<SetLetter> inverted(const std::vector<SetLetter>& word) {
    std::vector<SetLetter> out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back({it->index, -it->sign});
    return out;
}

}  // namespace

LbaResult lba(const protocols::AagPublic& pub, Side side, const LbaConfig& cfg) {
    if (cfg.memory < 1) throw std::invalid_argument("LBA memory must be >= 1");
    const PresentationPtr& g = pub.group;

    // Attacking Alice: expand by her published set \bar A, walk the observed
    // b' tuple back to \bar b. Attacking Bob mirrors the roles.
    const std::vector<GroupElement>& expand_set = side == Side::Alice ? pub.a_gens : pub.b_gens;
    const std::vector<GroupElement>& target = side == Side::Alice ? pub.b_gens : pub.a_gens;
    const std::vector<GroupElement>& observed = side == Side::Alice ? pub.b_conj : pub.a_conj;

    LbaResult res;
    auto verified_success = [&](const std::vector<SetLetter>& accumulated) -> bool {
        // Candidate conjugator is the inverse of the accumulated word.
        std::vector<SetLetter> conj = inverted(accumulated);
        GroupElement c = eval_set_word(expand_set, conj, g);
        for (std::size_t j = 0; j < target.size(); ++j)
            if (conjugate(target[j], c) != observed[j]) return false;
        res.success = true;
        res.conjugator = std::move(conj);
        res.conjugator_elem = std::move(c);
        return true;
    };

    // Initialization check: an identity private key shows up immediately.
    if (observed == target && verified_success({})) return res;

    std::vector<BeamState> beam;
    {
        BeamState init;
        init.tuple = observed;
        init.length = tuple_length(init.tuple);
        init.tuple_key = BeamState::serialize(init.tuple);
        beam.push_back(std::move(init));
    }

    const auto t0 = std::chrono::steady_clock::now();
    for (long iter = 0; iter < cfg.max_iterations; ++iter) {
        res.iterations = iter + 1;
        if (cfg.time_budget_ms > 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            if (ms > cfg.time_budget_ms) break;
        }

        std::vector<BeamState> expanded;
        expanded.reserve(beam.size() * expand_set.size() * 2);
        for (const auto& state : beam) {
            for (std::size_t i = 0; i < expand_set.size(); ++i) {
                for (int sign : {1, -1}) {
                    const GroupElement conj_by =
                        sign > 0 ? expand_set[i] : inv(expand_set[i]);
                    BeamState child;
                    child.tuple.reserve(state.tuple.size());
                    for (const auto& e : state.tuple) child.tuple.push_back(conjugate(e, conj_by));
                    res.conjugations += static_cast<long>(state.tuple.size());
                    child.word = state.word;
                    child.word.push_back({static_cast<int>(i) + 1, sign});
                    if (child.tuple == target) {
                        if (verified_success(child.word)) return res;
                    }
                    child.length = tuple_length(child.tuple);
                    child.tuple_key = BeamState::serialize(child.tuple);
                    expanded.push_back(std::move(child));
                }
            }
        }
        res.peak_set_size = std::max(res.peak_set_size, expanded.size());
        std::sort(expanded.begin(), expanded.end(), beam_less);
        if (expanded.size() > static_cast<std::size_t>(cfg.memory))
            expanded.resize(cfg.memory);
        beam = std::move(expanded);
        if (beam.empty()) break;
    }
    return res;  // FAIL
}

std::string lba_result_json(const LbaResult& r) {
    ordered_json j;
    j["schema"] = "pcw-attack-lba/1";
    j["outcome"] = r.success ? "success" : "fail";
    ordered_json letters = ordered_json::array();
    for (const auto& l : r.conjugator) letters.push_back({{"index", l.index}, {"sign", l.sign}});
    j["conjugator"] = letters;
    if (r.conjugator_elem) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : r.conjugator_elem->exps()) arr.push_back(v.get_str());
        j["conjugator_element"] = arr;
    }
    j["iterations"] = r.iterations;
    j["peak_set_size"] = r.peak_set_size;
    j["conjugations"] = r.conjugations;
    return j.dump(2) + "\n";
}

}  // namespace pcw::attacks
