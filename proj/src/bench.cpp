#include "pcw/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace pcw::bench {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_ms(double ms) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << ms;
    return os.str();
}

std::string fraction(long num, long den) {
    return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

std::vector<ReportRow> bench_collection(const PlatformGroup& g, long trials, long len_min,
                                        long len_max, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> times_ms;
    times_ms.reserve(trials);
    long total_letters = 0;
    for (long t = 0; t < trials; ++t) {
        Word w = random_element(g.presentation, len_min, len_max, rng).first;
        total_letters += w.letter_length().get_si();
        auto t0 = std::chrono::steady_clock::now();
        volatile bool sink = g.presentation->collect(w).empty();
        (void)sink;
        auto t1 = std::chrono::steady_clock::now();
        times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::vector<double> sorted = times_ms;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0;
    for (double v : times_ms) mean += v;
    mean /= static_cast<double>(std::max<long>(trials, 1));
    double median = sorted.empty() ? 0 : sorted[sorted.size() / 2];
    double worst = sorted.empty() ? 0 : sorted.back();

    std::vector<ReportRow> rows;
    auto push = [&](const std::string& metric, const std::string& value, const std::string& unit) {
        rows.push_back({g.name, g.hirsch_length(), metric, value, unit, seed, trials});
    };
    push("collect_mean", fmt_ms(mean), "ms");
    push("collect_median", fmt_ms(median), "ms");
    push("collect_max", fmt_ms(worst), "ms");
    push("mean_word_letters", std::to_string(total_letters / std::max<long>(trials, 1)), "count");
    return rows;
}

namespace {

// Zeroes the exponents of generators that commute with every generator; the
// remaining normal-form length is the element's distance from the center
// coset, which is what a planted conjugator length should measure.
GroupElement strip_central(const PresentationPtr& g, const GroupElement& e) {
    std::vector<Int> exps = e.exps();
    for (int i = 1; i <= g->ngens(); ++i) {
        bool central = true;
        for (int j = 1; j <= g->ngens() && central; ++j) {
            if (j == i) continue;
            int a = std::min(i, j), b = std::max(i, j);
            for (bool pos : {true, false}) {
                Word w = g->conjugate_word(a, b, pos);
                central = central && w.size() == 1 && w[0].gen == b && w[0].exp == 1;
            }
        }
        if (central) exps[i - 1] = 0;
    }
    return GroupElement(g, std::move(exps));
}

}  // namespace

std::vector<ReportRow> bench_csp(const PlatformGroup& g, const CspBenchConfig& cfg,
                                 std::uint64_t seed) {
    Rng rng(seed);
    long solved = 0, exhausted = 0;
    long total_nodes = 0;
    double total_ms = 0;
    // Abelian groups have only central generators; stripping would loop.
    bool all_central = strip_central(g.presentation,
                                     GroupElement(g.presentation,
                                                  std::vector<Int>(g.presentation->ngens(), 1)))
                           .is_identity();
    for (long t = 0; t < cfg.instances; ++t) {
        Rng inst = rng.fork(static_cast<std::uint64_t>(t));
        GroupElement conjor = GroupElement::identity(g.presentation);
        for (int tries = 0;; ++tries) {
            if (tries > 10000)
                throw std::runtime_error("cannot plant a conjugator of the requested length");
            conjor = random_element(g.presentation, cfg.planted_len, cfg.planted_len + 6, inst)
                         .second;
            if (!all_central) conjor = strip_central(g.presentation, conjor);
            if (conjor.length() == cfg.planted_len) break;
        }
        std::vector<std::pair<GroupElement, GroupElement>> instance;
        for (int k = 0; k < cfg.pairs; ++k) {
            auto a = random_element(g.presentation, cfg.base_len_min, cfg.base_len_max, inst)
                         .second;
            instance.emplace_back(a, conjugate(a, conjor));
        }
        auto t0 = std::chrono::steady_clock::now();
        auto res = oracles::csp_enumerate(g.presentation, instance, cfg.budget);
        auto t1 = std::chrono::steady_clock::now();
        total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        total_nodes += res.nodes_explored;
        if (res.found)
            ++solved;
        else
            ++exhausted;
    }
    std::vector<ReportRow> rows;
    auto push = [&](const std::string& metric, const std::string& value, const std::string& unit) {
        rows.push_back({g.name, g.hirsch_length(), metric, value, unit, seed, cfg.instances});
    };
    push("csp_solved", std::to_string(solved), "count");
    push("csp_exhausted", std::to_string(exhausted), "count");
    push("csp_solved_rate", fraction(solved, std::max<long>(cfg.instances, 1)), "ratio");
    push("csp_mean_nodes", std::to_string(total_nodes / std::max<long>(cfg.instances, 1)),
         "count");
    push("csp_mean_time",
         fmt_ms(total_ms / static_cast<double>(std::max<long>(cfg.instances, 1))), "ms");
    return rows;
}

LbaCampaignOutcome lba_campaign_group(const PlatformGroup& g, const protocols::AagParams& params,
                                      const attacks::LbaConfig& cfg, int instances,
                                      std::uint64_t seed, int threads) {
    LbaCampaignOutcome out;
    out.group = g.name;
    out.hirsch = g.hirsch_length();
    out.trials = instances;

    std::vector<int> success(instances, 0);
    std::vector<int> unsound(instances, 0);

    auto run_instance = [&](int idx) {
        Rng rng(seed + static_cast<std::uint64_t>(idx));
        try {
            auto t = protocols::aag_run(g, params, rng);
            t.pub.seed = seed + static_cast<std::uint64_t>(idx);
            auto res = attacks::lba(t.pub, attacks::Side::Alice, cfg);
            if (res.success) {
                // Verify against the transcript: the recovered conjugator
                // must reproduce every observed b'_j.
                bool ok = true;
                for (std::size_t j = 0; j < t.pub.b_gens.size(); ++j)
                    if (conjugate(t.pub.b_gens[j], *res.conjugator_elem) != t.pub.b_conj[j])
                        ok = false;
                if (ok)
                    success[idx] = 1;
                else
                    unsound[idx] = 1;
            }
        } catch (const protocols::DegenerateKey&) {
            // Session never produced a key; skip (counts as non-success).
        }
    };

    if (threads <= 1) {
        for (int i = 0; i < instances; ++i) run_instance(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    int i = next.fetch_add(1);
                    if (i >= instances) return;
                    run_instance(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < instances; ++i) {
        out.successes += success[i];
        out.unsound_successes += unsound[i];
    }
    auto push = [&](const std::string& metric, const std::string& value, const std::string& unit) {
        out.rows.push_back({g.name, out.hirsch, metric, value, unit, seed, instances});
    };
    push("lba_successes", std::to_string(out.successes), "count");
    push("lba_success_rate", fraction(out.successes, std::max(instances, 1)), "ratio");
    push("lba_unsound_successes", std::to_string(out.unsound_successes), "count");
    return out;
}

std::string report_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "group,hirsch,metric,value,unit,seed,trials\n";
    for (const auto& r : report.rows)
        os << r.group << "," << r.hirsch << "," << r.metric << "," << r.value << "," << r.unit
           << "," << r.seed << "," << r.trials << "\n";
    return os.str();
}

std::string report_json(const ExperimentReport& report) {
    ordered_json j;
    j["schema"] = "pcw-report/1";
    j["environment"] = report.environment;
    j["seed"] = report.seed;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"group", r.group},
                        {"hirsch", r.hirsch},
                        {"metric", r.metric},
                        {"value", r.value},
                        {"unit", r.unit},
                        {"seed", r.seed},
                        {"trials", r.trials}});
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != "pcw-report/1")
        throw IoFailure("unexpected report schema");
    ExperimentReport r;
    r.environment = j.at("environment").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) {
        r.rows.push_back({row.at("group").get<std::string>(), row.at("hirsch").get<int>(),
                          row.at("metric").get<std::string>(), row.at("value").get<std::string>(),
                          row.at("unit").get<std::string>(), row.at("seed").get<std::uint64_t>(),
                          row.at("trials").get<long>()});
    }
    return r;
}

ExperimentReport zeroed_timings(ExperimentReport report) {
    for (auto& r : report.rows)
        if (r.unit == "ms") r.value = "0.0000";
    return report;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << data;
    if (!out) throw IoFailure("write to " + path + " failed");
}

}  // namespace pcw::bench
