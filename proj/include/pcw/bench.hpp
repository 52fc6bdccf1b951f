#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcw/attacks.hpp"
#include "pcw/oracles.hpp"
#include "pcw/platform.hpp"
#include "pcw/protocols.hpp"

namespace pcw::bench {

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

// One measurement. Non-timing values are exact strings (counts, fractions)
// so reports reproduce bit-for-bit under a fixed seed.
struct ReportRow {
    std::string group;
    int hirsch = 0;
    std::string metric;
    std::string value;
    std::string unit;
    std::uint64_t seed = 0;
    long trials = 0;
};

struct ExperimentReport {
    std::string environment;
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;
};

// Times collect() on `trials` random words with letter counts in
// [len_min, len_max]. Timing rows carry unit "ms".
std::vector<ReportRow> bench_collection(const PlatformGroup& g, long trials, long len_min,
                                        long len_max, std::uint64_t seed);

// Planted simultaneous-conjugacy instances: `pairs` random base words share
// one conjugator of normal-form length planted_len, sampled with trivial
// central part so the planted length is the instance's conjugator distance
// (central factors would silently shorten the coset).
struct CspBenchConfig {
    long instances = 20;
    int planted_len = 6;
    int pairs = 3;
    long base_len_min = 16;
    long base_len_max = 64;
    oracles::SearchBudget budget{100000, 8};
};

std::vector<ReportRow> bench_csp(const PlatformGroup& g, const CspBenchConfig& cfg,
                                 std::uint64_t seed);

struct LbaCampaignOutcome {
    std::string group;
    int hirsch = 0;
    long trials = 0;
    long successes = 0;        // verified successes only
    long unsound_successes = 0;  // must stay 0
    std::vector<ReportRow> rows;
};

// Fixed AAG parameters across groups; one fresh transcript per seed; every
// Success re-verified against the transcript. `threads` <= 1 runs
// sequentially (timing-friendly); instance seeds make the aggregate
// identical either way.
LbaCampaignOutcome lba_campaign_group(const PlatformGroup& g, const protocols::AagParams& params,
                                      const attacks::LbaConfig& cfg, int instances,
                                      std::uint64_t seed, int threads = 1);

std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

// Zeroes "ms"-unit values; golden tests compare the rest byte-for-byte.
ExperimentReport zeroed_timings(ExperimentReport report);

void write_file(const std::string& path, const std::string& data);

}  // namespace pcw::bench
