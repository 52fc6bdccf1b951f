// pcw: polycyclic-group cryptography workbench CLI.
//
// Subcommands: group, oracle, aag, sign, verify, share, attack, bench.
// PCW_LOG=debug raises stderr verbosity.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pcw/attacks.hpp"
#include "pcw/bench.hpp"
#include "pcw/platform.hpp"
#include "pcw/protocols.hpp"
#include "pcw/secret_sharing.hpp"
#include "pcw/smallcanc.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace pcw;

namespace {

bool log_debug() {
    const char* v = std::getenv("PCW_LOG");
    return v != nullptr && std::string(v) == "debug";
}

void debug(const std::string& msg) {
    if (log_debug()) std::cerr << "[pcw] " << msg << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& data, const std::string& out_path) {
    if (out_path.empty())
        std::cout << data;
    else
        bench::write_file(out_path, data);
}

MatQ parse_int_matrix(const std::vector<long>& entries, int dim) {
    MatQ m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.at(r, c) = Rat(entries[r * dim + c]);
    return m;
}

// Semidirect input file: "degree D" then one "matrix e11 e12 ..." row-major
// line per unit generator.
PlatformGroup load_semidirect_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string kw;
    int degree = 0;
    if (!(in >> kw >> degree) || kw != "degree" || degree < 1)
        throw std::runtime_error(path + ": expected 'degree D'");
    std::vector<MatQ> mats;
    while (in >> kw) {
        if (kw[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (kw != "matrix") throw std::runtime_error(path + ": expected 'matrix' lines");
        std::vector<long> entries;
        for (int k = 0; k < degree * degree; ++k) {
            long v;
            if (!(in >> v)) throw std::runtime_error(path + ": truncated matrix entries");
            entries.push_back(v);
        }
        mats.push_back(parse_int_matrix(entries, degree));
    }
    if (mats.empty()) throw std::runtime_error(path + ": no matrices");
    return platform::semidirect_from_action(degree, mats, "semidirect");
}

// Group spec: heisenberg | ut:<n> | semidirect:<file> | product:<a>,<b>
// (components may be specs or presentation file paths) | <presentation file>.
PlatformGroup load_group_spec(const std::string& spec) {
    if (spec == "heisenberg") return platform::heisenberg();
    if (spec.rfind("ut:", 0) == 0) return platform::unitriangular(std::stoi(spec.substr(3)));
    if (spec.rfind("semidirect:", 0) == 0) return load_semidirect_file(spec.substr(11));
    if (spec.rfind("product:", 0) == 0) {
        std::string rest = spec.substr(8);
        // Split at the top-level comma (specs themselves contain no commas
        // except inside a nested product, which we don't support on the CLI).
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("product spec needs two comma-separated components");
        return platform::direct_product(load_group_spec(rest.substr(0, comma)),
                                        load_group_spec(rest.substr(comma + 1)));
    }
    PlatformGroup g;
    g.name = spec;
    g.presentation = std::make_shared<PcPresentation>(parse_presentation_file(spec));
    return g;
}

ordered_json element_json(const GroupElement& e) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : e.exps()) arr.push_back(v.get_str());
    return arr;
}

GroupElement element_from_json(const PresentationPtr& g, const ordered_json& arr) {
    std::vector<Int> exps;
    for (const auto& v : arr) exps.emplace_back(v.get<std::string>());
    return GroupElement(g, std::move(exps));
}

// --- signature key/signature JSON -----------------------------------------

std::string keypair_json(const protocols::SignatureKeypair& kp, const std::string& group_name) {
    ordered_json j;
    j["schema"] = "pcw-sigkey/1";
    j["group_name"] = group_name;
    j["presentation"] = format_presentation(*kp.pub.group);
    j["n"] = kp.pub.n.get_str();
    j["base"] = element_json(kp.base);
    j["s"] = element_json(kp.s);
    j["x"] = element_json(kp.pub.x);
    ordered_json used = ordered_json::array();
    for (const auto& f : kp.pub.used_factors) used.push_back(f.get_str());
    j["used_factors"] = used;
    j["signatures_issued"] = kp.signatures_issued;
    return j.dump(2) + "\n";
}

protocols::SignatureKeypair keypair_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != "pcw-sigkey/1")
        throw std::runtime_error("unexpected keypair schema");
    protocols::SignatureKeypair kp;
    std::istringstream in(j.at("presentation").get<std::string>());
    kp.pub.group = std::make_shared<PcPresentation>(parse_presentation(in));
    kp.pub.n = Int(j.at("n").get<std::string>());
    kp.base = element_from_json(kp.pub.group, j.at("base"));
    kp.s = element_from_json(kp.pub.group, j.at("s"));
    kp.pub.x = element_from_json(kp.pub.group, j.at("x"));
    for (const auto& f : j.at("used_factors")) kp.pub.used_factors.emplace_back(f.get<std::string>());
    kp.signatures_issued = j.at("signatures_issued").get<int>();
    return kp;
}

std::string signature_json(const protocols::Signature& sig) {
    ordered_json j;
    j["schema"] = "pcw-signature/1";
    j["y"] = element_json(sig.y);
    j["alpha"] = element_json(sig.alpha);
    j["n_j"] = sig.n_j.get_str();
    return j.dump(2) + "\n";
}

protocols::Signature signature_from_json(const PresentationPtr& g, const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != "pcw-signature/1")
        throw std::runtime_error("unexpected signature schema");
    protocols::Signature sig;
    sig.y = element_from_json(g, j.at("y"));
    sig.alpha = element_from_json(g, j.at("alpha"));
    sig.n_j = Int(j.at("n_j").get<std::string>());
    return sig;
}

// --- secret-share JSON ------------------------------------------------------

std::string shares_json(const std::vector<protocols::ShareBundle>& shares,
                        const std::string& scheme, int n, int t, long p) {
    ordered_json j;
    j["schema"] = "pcw-shares/1";
    j["scheme"] = scheme;
    j["n"] = n;
    if (scheme == "tn") {
        j["t"] = t;
        j["p"] = p;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& s : shares) {
        ordered_json js;
        js["participant"] = s.participant;
        js["alphabet_size"] = s.relators.alphabet_size;
        ordered_json rel = ordered_json::array();
        for (const auto& r : s.relators.relators) rel.push_back(smallcanc::fw_str(r));
        js["relators"] = rel;
        ordered_json cw = ordered_json::array();
        for (const auto& w : s.codewords) cw.push_back(smallcanc::fw_str(w));
        js["codewords"] = cw;
        arr.push_back(std::move(js));
    }
    j["shares"] = arr;
    return j.dump(2) + "\n";
}

std::vector<protocols::ShareBundle> shares_from_json(const std::string& text, std::string& scheme,
                                                     int& n, int& t, long& p) {
    ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != "pcw-shares/1")
        throw std::runtime_error("unexpected shares schema");
    scheme = j.at("scheme").get<std::string>();
    n = j.at("n").get<int>();
    t = j.contains("t") ? j.at("t").get<int>() : n;
    p = j.contains("p") ? j.at("p").get<long>() : 0;
    std::vector<protocols::ShareBundle> shares;
    for (const auto& js : j.at("shares")) {
        protocols::ShareBundle s;
        s.participant = js.at("participant").get<int>();
        int alphabet = js.at("alphabet_size").get<int>();
        std::vector<smallcanc::FreeWord> rel;
        for (const auto& r : js.at("relators")) rel.push_back(smallcanc::fw_parse(r.get<std::string>()));
        s.relators = smallcanc::make_presentation(alphabet, rel);
        for (const auto& w : js.at("codewords"))
            s.codewords.push_back(smallcanc::fw_parse(w.get<std::string>()));
        shares.push_back(std::move(s));
    }
    return shares;
}

// Pairs file: two words per pair, "a: <word>" / "b: <word>" lines or plain
// alternating word lines; '#' comments allowed.
std::vector<std::pair<GroupElement, GroupElement>> load_pairs(const PresentationPtr& g,
                                                              const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pairs file " + path);
    std::vector<GroupElement> flat;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.rfind("a:", first) == first || line.rfind("b:", first) == first)
            line = line.substr(first + 2);
        flat.push_back(GroupElement::from_word(g, Word::parse(line)));
    }
    if (flat.size() % 2 != 0) throw std::runtime_error("pairs file needs an even word count");
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2) pairs.emplace_back(flat[i], flat[i + 1]);
    return pairs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcw: polycyclic-group cryptography workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string out_path;
    std::uint64_t seed = 1;
    std::string format = "json";
    app.add_option("--out", out_path, "output file (default stdout)")->capture_default_str();
    app.add_option("--seed", seed, "deterministic seed")->capture_default_str();
    app.add_option("--format", format, "report format: csv or json")->capture_default_str();

    // --- group ---------------------------------------------------------------
    auto* group = app.add_subcommand("group", "construct platform groups");
    auto* group_make = group->add_subcommand("make", "write a presentation file");
    std::string group_spec;
    std::string rep_out;
    group_make->add_option("spec", group_spec,
                           "heisenberg | ut:<n> | semidirect:<file> | product:<a>,<b>")
        ->required();
    group_make->add_option("--rep-out", rep_out, "also write the matrix image");

    // --- oracle ----------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "exhaustive search oracles");
    auto* oracle_csp = oracle->add_subcommand("csp", "simultaneous conjugacy search");
    std::string oracle_group, pairs_path;
    long max_nodes = 100000;
    int max_radius = 8;
    oracle_csp->add_option("--group", oracle_group, "group spec or presentation file")->required();
    oracle_csp->add_option("--pairs", pairs_path, "pairs file")->required();
    oracle_csp->add_option("--max-nodes", max_nodes)->capture_default_str();
    oracle_csp->add_option("--max-radius", max_radius)->capture_default_str();

    // --- aag -------------------------------------------------------------------
    auto* aag = app.add_subcommand("aag", "Anshel-Anshel-Goldfeld key exchange");
    auto* aag_run_cmd = aag->add_subcommand("run", "run one seeded session");
    std::string aag_group, private_out;
    protocols::AagParams aag_params;
    aag_run_cmd->add_option("--group", aag_group)->required();
    aag_run_cmd->add_option("--N1", aag_params.N1)->capture_default_str();
    aag_run_cmd->add_option("--N2", aag_params.N2)->capture_default_str();
    aag_run_cmd->add_option("--L1", aag_params.L1)->capture_default_str();
    aag_run_cmd->add_option("--L2", aag_params.L2)->capture_default_str();
    aag_run_cmd->add_option("--L", aag_params.L)->capture_default_str();
    aag_run_cmd->add_option("--private-out", private_out, "file for the private transcript half");

    // --- sign / verify ----------------------------------------------------------
    auto* sign = app.add_subcommand("sign", "digital signature scheme");
    auto* sign_keygen = sign->add_subcommand("keygen", "generate a keypair");
    std::string sign_group;
    sign_keygen->add_option("--group", sign_group, "platform with a certified base element")
        ->required();
    auto* sign_msg = sign->add_subcommand("message", "sign a message file");
    std::string key_path, message_file, key_out;
    sign_msg->add_option("--key", key_path)->required();
    sign_msg->add_option("--message-file", message_file)->required();
    sign_msg->add_option("--key-out", key_out, "rewrite keypair state (used factors) here");

    auto* verify = app.add_subcommand("verify", "verify a signature");
    std::string verify_key, verify_msg, sig_path;
    verify->add_option("--key", verify_key)->required();
    verify->add_option("--message-file", verify_msg)->required();
    verify->add_option("--sig", sig_path)->required();

    // --- share -------------------------------------------------------------------
    auto* share = app.add_subcommand("share", "word-problem secret sharing");
    auto* share_deal = share->add_subcommand("deal", "deal shares");
    std::string scheme = "nn", secret_bits;
    long secret_int = 0, prime_p = 257;
    int share_n = 3, share_t = 2;
    share_deal->add_option("--scheme", scheme, "nn or tn")->capture_default_str();
    share_deal->add_option("--secret", secret_bits, "bitstring secret (nn scheme)");
    share_deal->add_option("--secret-int", secret_int, "secret in Z_p (tn scheme)");
    share_deal->add_option("--p", prime_p)->capture_default_str();
    share_deal->add_option("--n", share_n)->capture_default_str();
    share_deal->add_option("--t", share_t)->capture_default_str();
    auto* share_rec = share->add_subcommand("reconstruct", "reconstruct from shares");
    std::string shares_path, subset;
    share_rec->add_option("--shares", shares_path)->required();
    share_rec->add_option("--subset", subset, "comma-separated participant ids (default all)");

    // --- attack --------------------------------------------------------------------
    auto* attack = app.add_subcommand("attack", "cryptanalysis");
    auto* attack_lba = attack->add_subcommand("lba", "length-based attack on an AAG transcript");
    std::string transcript_path, side_str = "alice";
    attacks::LbaConfig lba_cfg;
    attack_lba->add_option("--transcript", transcript_path)->required();
    attack_lba->add_option("--memory", lba_cfg.memory)->capture_default_str();
    attack_lba->add_option("--max-iter", lba_cfg.max_iterations)->capture_default_str();
    attack_lba->add_option("--time-budget-ms", lba_cfg.time_budget_ms)->capture_default_str();
    attack_lba->add_option("--side", side_str, "alice or bob")->capture_default_str();
    auto* attack_field = attack->add_subcommand("field", "field-based attack via a matrix image");
    std::string field_transcript, rep_path, field_side = "alice";
    attack_field->add_option("--transcript", field_transcript)->required();
    attack_field->add_option("--rep", rep_path)->required();
    attack_field->add_option("--side", field_side)->capture_default_str();

    // --- bench ------------------------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("bench", "experiment harness");
    auto* bench_coll = bench_cmd->add_subcommand("collection", "time collection on random words");
    std::string bench_group;
    long trials = 100, len_min = 1, len_max = 64;
    bool sequential = false;
    bench_coll->add_option("--group", bench_group)->required();
    bench_coll->add_option("--trials", trials)->capture_default_str();
    bench_coll->add_option("--len-min", len_min)->capture_default_str();
    bench_coll->add_option("--len-max", len_max)->capture_default_str();
    bench_coll->add_flag("--sequential", sequential, "pin trials to one thread");

    auto* bench_csp_cmd = bench_cmd->add_subcommand("csp", "planted CSP oracle outcomes");
    std::string bench_csp_group;
    bench::CspBenchConfig csp_cfg;
    bench_csp_cmd->add_option("--group", bench_csp_group)->required();
    bench_csp_cmd->add_option("--instances", csp_cfg.instances)->capture_default_str();
    bench_csp_cmd->add_option("--planted-len", csp_cfg.planted_len)->capture_default_str();
    bench_csp_cmd->add_option("--pairs", csp_cfg.pairs)->capture_default_str();
    bench_csp_cmd->add_option("--base-len-min", csp_cfg.base_len_min)->capture_default_str();
    bench_csp_cmd->add_option("--base-len-max", csp_cfg.base_len_max)->capture_default_str();
    bench_csp_cmd->add_option("--max-nodes", csp_cfg.budget.max_nodes)->capture_default_str();
    bench_csp_cmd->add_option("--max-radius", csp_cfg.budget.max_radius)->capture_default_str();

    auto* bench_lba = bench_cmd->add_subcommand("lba", "LBA success-rate campaign");
    std::string lba_groups = "heisenberg,ut:4,ut:6";
    int lba_seeds = 50;
    int threads = 1;
    protocols::AagParams lba_params{5, 5, 2, 4, 4};
    attacks::LbaConfig camp_cfg{2, 10000, 0};
    bench_lba->add_option("--groups", lba_groups, "comma-separated group specs")
        ->capture_default_str();
    bench_lba->add_option("--seeds", lba_seeds)->capture_default_str();
    bench_lba->add_option("--threads", threads)->capture_default_str();
    bench_lba->add_option("--N1", lba_params.N1)->capture_default_str();
    bench_lba->add_option("--N2", lba_params.N2)->capture_default_str();
    bench_lba->add_option("--L1", lba_params.L1)->capture_default_str();
    bench_lba->add_option("--L2", lba_params.L2)->capture_default_str();
    bench_lba->add_option("--L", lba_params.L)->capture_default_str();
    bench_lba->add_option("--memory", camp_cfg.memory)->capture_default_str();
    bench_lba->add_option("--max-iter", camp_cfg.max_iterations)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (group_make->parsed()) {
            PlatformGroup g = load_group_spec(group_spec);
            debug("constructed " + g.name);
            emit(format_presentation(*g.presentation), out_path);
            if (!rep_out.empty()) {
                if (!g.matrix_image) throw std::runtime_error("group has no matrix image");
                bench::write_file(rep_out, format_matrix_rep(*g.matrix_image));
            }
            return 0;
        }

        if (oracle_csp->parsed()) {
            PlatformGroup g = load_group_spec(oracle_group);
            auto pairs = load_pairs(g.presentation, pairs_path);
            oracles::SearchBudget budget{max_nodes, max_radius};
            auto res = oracles::csp_enumerate(g.presentation, pairs, budget);
            ordered_json j;
            j["schema"] = "pcw-oracle/1";
            j["outcome"] = res.found ? "found" : "exhausted";
            j["witness"] = res.witness.str();
            j["nodes_explored"] = res.nodes_explored;
            j["radius_reached"] = res.radius_reached;
            emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (aag_run_cmd->parsed()) {
            PlatformGroup g = load_group_spec(aag_group);
            Rng rng(seed);
            auto t = protocols::aag_run(g, aag_params, rng);
            t.pub.seed = seed;
            emit(protocols::aag_public_json(t.pub), out_path);
            if (!private_out.empty())
                bench::write_file(private_out, protocols::aag_private_json(t));
            return 0;
        }

        if (sign_keygen->parsed()) {
            PlatformGroup g = load_group_spec(sign_group);
            Rng rng(seed);
            auto kp = protocols::sig_keygen(g, rng);
            emit(keypair_json(kp, g.name), out_path);
            return 0;
        }

        if (sign_msg->parsed()) {
            auto kp = keypair_from_json(slurp(key_path));
            Rng rng(seed);
            auto sig = protocols::sig_sign(kp, slurp(message_file), rng);
            emit(signature_json(sig), out_path);
            if (!key_out.empty()) bench::write_file(key_out, keypair_json(kp, "keypair"));
            return 0;
        }

        if (verify->parsed()) {
            auto kp = keypair_from_json(slurp(verify_key));
            auto sig = signature_from_json(kp.pub.group, slurp(sig_path));
            bool ok = protocols::sig_verify(kp.pub, slurp(verify_msg), sig);
            std::cout << (ok ? "accept" : "reject") << "\n";
            return ok ? 0 : 1;
        }

        if (share_deal->parsed()) {
            Rng rng(seed);
            if (scheme == "nn") {
                if (secret_bits.empty()) throw std::runtime_error("--secret required for nn");
                auto shares = protocols::ss_deal_nn(secret_bits, share_n, rng);
                emit(shares_json(shares, "nn", share_n, share_n, 0), out_path);
            } else if (scheme == "tn") {
                auto shares = protocols::ss_deal_tn(secret_int, prime_p, share_t, share_n, rng);
                emit(shares_json(shares, "tn", share_n, share_t, prime_p), out_path);
            } else {
                throw std::runtime_error("scheme must be nn or tn");
            }
            return 0;
        }

        if (share_rec->parsed()) {
            std::string sch;
            int n = 0, t = 0;
            long p = 0;
            auto shares = shares_from_json(slurp(shares_path), sch, n, t, p);
            if (!subset.empty()) {
                std::vector<protocols::ShareBundle> picked;
                std::istringstream ss(subset);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    int want = std::stoi(tok);
                    for (const auto& s : shares)
                        if (s.participant == want) picked.push_back(s);
                }
                shares = std::move(picked);
            }
            if (sch == "nn") {
                std::cout << protocols::ss_reconstruct_nn(shares) << "\n";
            } else {
                std::cout << protocols::ss_reconstruct_tn(shares, p, t) << "\n";
            }
            return 0;
        }

        if (attack_lba->parsed()) {
            auto pub = protocols::aag_public_from_json(slurp(transcript_path));
            auto side = side_str == "bob" ? attacks::Side::Bob : attacks::Side::Alice;
            auto res = attacks::lba(pub, side, lba_cfg);
            emit(attacks::lba_result_json(res), out_path);
            return 0;
        }

        if (attack_field->parsed()) {
            auto pub = protocols::aag_public_from_json(slurp(field_transcript));
            auto rep = parse_matrix_rep_file(rep_path);
            auto side = field_side == "bob" ? attacks::Side::Bob : attacks::Side::Alice;
            auto res = attacks::field_based_attack(pub, rep, side);
            emit(attacks::field_result_json(res), out_path);
            return 0;
        }

        auto emit_report = [&](bench::ExperimentReport report) {
            report.seed = seed;
            if (format == "csv")
                emit(bench::report_csv(report), out_path);
            else
                emit(bench::report_json(report), out_path);
        };

        if (bench_coll->parsed()) {
            PlatformGroup g = load_group_spec(bench_group);
            bench::ExperimentReport report;
            report.environment = sequential ? "sequential" : "default";
            report.rows = bench::bench_collection(g, trials, len_min, len_max, seed);
            emit_report(std::move(report));
            return 0;
        }

        if (bench_csp_cmd->parsed()) {
            PlatformGroup g = load_group_spec(bench_csp_group);
            bench::ExperimentReport report;
            report.environment = "default";
            report.rows = bench::bench_csp(g, csp_cfg, seed);
            emit_report(std::move(report));
            return 0;
        }

        if (bench_lba->parsed()) {
            bench::ExperimentReport report;
            report.environment = "default";
            // ';' separates specs when present (keeps product:a,b intact);
            // otherwise plain commas work.
            const char sep = lba_groups.find(';') != std::string::npos ? ';' : ',';
            std::vector<std::string> specs;
            std::istringstream ss(lba_groups);
            std::string spec;
            while (std::getline(ss, spec, sep))
                if (!spec.empty()) specs.push_back(spec);
            for (const auto& sp : specs) {
                PlatformGroup g = load_group_spec(sp);
                debug("LBA campaign on " + g.name);
                auto outcome =
                    bench::lba_campaign_group(g, lba_params, camp_cfg, lba_seeds, seed, threads);
                report.rows.insert(report.rows.end(), outcome.rows.begin(), outcome.rows.end());
            }
            emit_report(std::move(report));
            return 0;
        }

        std::cerr << "no subcommand action matched\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pcw: " << e.what() << "\n";
        return 1;
    }
}
