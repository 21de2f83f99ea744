// Command-line surface for the generating-tree library: enumeration,
// sampling, tilting solve, jump patterns, CLT constants and verification,
// with reproducible seeds and machine-readable output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gentree/json_io.hpp"
#include "gentree/oracle.hpp"
#include "gentree/parallel.hpp"
#include "gentree/patstats.hpp"
#include "gentree/walk.hpp"

using namespace gentree;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string family = "av123";
    int n = 6;
    int reps = 1;
    long long trials = 100000;
    std::string pattern = "21";
    std::string jumps;
    int truncation = 40;
    std::uint64_t seed = 0;
    int threads = default_threads();
    std::string out;
    std::string format = "json";
    std::string sampler = "cycle";
    int h = 1;
    bool members = false;

    std::string canonical() const {
        std::ostringstream os;
        os << "command=" << command << ";family=" << family << ";n=" << n << ";reps=" << reps
           << ";trials=" << trials << ";pattern=" << pattern << ";jumps=" << jumps
           << ";truncation=" << truncation << ";seed=" << seed << ";format=" << format
           << ";sampler=" << sampler << ";h=" << h << ";members=" << members;
        return os.str();
    }
    json to_json() const {
        return {{"command", command}, {"family", family},   {"n", n},
                {"reps", reps},       {"trials", trials},   {"pattern", pattern},
                {"jumps", jumps},     {"truncation", truncation}, {"seed", seed},
                {"format", format},   {"sampler", sampler}, {"h", h},
                {"members", members}};
    }
};

std::uint64_t env_seed() {
    const char* s = std::getenv("GENTREE_SEED");
    if (!s) return 0;
    return std::strtoull(s, nullptr, 10);
}

void write_output(const RunConfig& cfg, const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + path);
    f << text;
}

std::string csv_meta(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# tool=gentree version=" << kToolVersion << " config_hash=" << hash_hex(cfg.canonical())
       << "\n# config " << cfg.canonical() << "\n";
    return os.str();
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

SamplerKind sampler_kind(const RunConfig& cfg) {
    if (cfg.sampler == "cycle") return SamplerKind::cycle;
    if (cfg.sampler == "rejection") return SamplerKind::rejection;
    throw DomainError("unknown sampler '" + cfg.sampler + "'");
}

int run_enumerate(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    ExactLevel level = brute_enumerate(F, cfg.n);
    if (cfg.members) {
        std::ostringstream os;
        os << csv_meta(cfg) << level_to_text(level);
        write_output(cfg, os.str(), cfg.out);
        return 0;
    }
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << csv_meta(cfg) << "n,family,count\n";
        for (int m = 1; m <= cfg.n; ++m)
            os << m << ',' << F.name << ',' << level_count(F, m) << "\n";
        write_output(cfg, os.str(), cfg.out);
    } else {
        json counts = json::array();
        for (int m = 1; m <= cfg.n; ++m)
            counts.push_back({{"n", m}, {"count", level_count(F, m)}});
        json out = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                    {"family", F.name},
                    {"counts", counts}};
        write_output(cfg, json_dump(out), cfg.out);
    }
    return 0;
}

int run_sample(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Rng rng(cfg.seed);
    SamplerKind kind = sampler_kind(cfg);
    std::vector<std::string> lines(cfg.reps);
    parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t i) {
        Rng stream = rng.split(i);
        lines[i] = uniform_permutation(F, cfg.n, stream, kind).str();
    });
    std::ostringstream os;
    os << csv_meta(cfg);
    for (const auto& l : lines) os << l << "\n";
    write_output(cfg, os.str(), cfg.out);
    return 0;
}

int run_solve_pq(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    json out = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                {"walk", to_json(walk_params(F.id))}};
    write_output(cfg, json_dump(out), cfg.out);
    return 0;
}

int run_pat(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    if (cfg.jumps.empty()) throw DomainError("pat: --jumps is required");
    ColoredJumpSeq js = ColoredJumpSeq::parse(cfg.jumps);
    Permutation result = pat_of_jumps(F, js);
    write_output(cfg, result.str() + "\n", cfg.out);
    return 0;
}

int run_mu(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Permutation pi = Permutation::parse(cfg.pattern);
    Interval m = mu(F, pi, cfg.truncation);
    json out = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                {"family", F.name},
                {"pi", pi.str()},
                {"truncation_depth", cfg.truncation},
                {"mu", to_json(m)}};
    write_output(cfg, json_dump(out), cfg.out);
    return 0;
}

int run_gamma(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Permutation pi = Permutation::parse(cfg.pattern);
    PatternStats st = gamma_sq(F, pi, cfg.truncation);
    json out = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                {"stats", to_json(st, F.name)}};
    write_output(cfg, json_dump(out), cfg.out);
    return 0;
}

int run_clt_check(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Permutation pi = Permutation::parse(cfg.pattern);
    PatternStats st = gamma_sq(F, pi, cfg.truncation);
    Rng rng(cfg.seed);
    CltReport rep =
        clt_sample(F, pi, cfg.n, cfg.reps, rng, st.mu.mid(), st.gamma2.mid(), cfg.threads);
    json report = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                   {"stats", to_json(st, F.name)},
                   {"report", to_json(rep)}};
    if (!cfg.out.empty()) {
        std::ostringstream os;
        os << csv_meta(cfg) << "value\n";
        for (double v : rep.values) os << fmt17(v) << "\n";
        write_output(cfg, os.str(), cfg.out);
        std::ofstream f(cfg.out + ".report.json", std::ios::binary);
        f << json_dump(report);
    } else {
        std::cout << json_dump(report);
    }
    return 0;
}

int run_limit_order(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Rng rng(cfg.seed);
    auto pmf = limit_order_restriction(F, cfg.h, cfg.trials, rng);
    std::ostringstream os;
    os << csv_meta(cfg) << "pattern,probability\n";
    for (const auto& [p, w] : pmf) os << p.str() << ',' << fmt17(w) << "\n";
    write_output(cfg, os.str(), cfg.out);
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const auto& F = family_by_name(cfg.family);
    Rng rng(cfg.seed);
    json bij = json::array();
    bool ok = true;
    for (int n = 1; n <= cfg.n; ++n) {
        BijectionReport rep = verify_bijection(F, n);
        ok = ok && rep.ok;
        bij.push_back({{"n", n},
                       {"ok", rep.ok},
                       {"sequences", rep.level_sequences},
                       {"brute_count", rep.brute_count},
                       {"detail", rep.detail}});
    }
    json samplers = json::array();
    for (auto kind : {SamplerKind::cycle, SamplerKind::rejection}) {
        std::uint64_t need = 20 * brute_enumerate(F, cfg.n).count;
        std::uint64_t trials = std::max<std::uint64_t>(cfg.trials, need);
        Rng stream = rng.split(kind == SamplerKind::cycle ? 1 : 2);
        ChiSquareReport rep = verify_sampler(F, cfg.n, trials, stream, kind);
        ok = ok && rep.pvalue > 0.01;
        samplers.push_back({{"sampler", kind == SamplerKind::cycle ? "cycle" : "rejection"},
                            {"n", cfg.n},
                            {"trials", trials},
                            {"classes", rep.classes},
                            {"statistic", rep.statistic},
                            {"pvalue", rep.pvalue}});
    }
    json out = {{"meta", meta_block(cfg.canonical(), cfg.to_json())},
                {"family", F.name},
                {"bijection", bij},
                {"sampler", samplers},
                {"ok", ok}};
    write_output(cfg, json_dump(out), cfg.out);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generating-tree permutation toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.seed = env_seed();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "family identifier");
        sub->add_option("--seed", cfg.seed, "rng seed (env GENTREE_SEED as fallback)");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json|csv");
    };

    auto* c_enum = app.add_subcommand("enumerate", "exact level counts or members");
    add_common(c_enum);
    c_enum->add_option("--n", cfg.n, "size");
    c_enum->add_flag("--members", cfg.members, "emit the members, one per line");

    auto* c_sample = app.add_subcommand("sample", "uniform permutations, one per line");
    add_common(c_sample);
    c_sample->add_option("--n", cfg.n, "size");
    c_sample->add_option("--reps", cfg.reps, "number of samples");
    c_sample->add_option("--sampler", cfg.sampler, "cycle|rejection");

    auto* c_solve = app.add_subcommand("solve-pq", "tilting parameters and step law");
    add_common(c_solve);

    auto* c_pat = app.add_subcommand("pat", "pattern of a colored jump tuple");
    add_common(c_pat);
    c_pat->add_option("--jumps", cfg.jumps, "e.g. \"-2,+1B,+1B,+1T,+1T,-7\"");

    auto* c_mu = app.add_subcommand("mu", "window pattern probability");
    add_common(c_mu);
    c_mu->add_option("--pattern", cfg.pattern, "pattern in one-line notation");
    c_mu->add_option("--truncation", cfg.truncation, "jump truncation depth M");

    auto* c_gamma = app.add_subcommand("gamma", "CLT constants of a pattern");
    add_common(c_gamma);
    c_gamma->add_option("--pattern", cfg.pattern, "pattern in one-line notation");
    c_gamma->add_option("--truncation", cfg.truncation, "jump truncation depth M");

    auto* c_clt = app.add_subcommand("clt-check", "normalized samples and normality report");
    add_common(c_clt);
    c_clt->add_option("--pattern", cfg.pattern, "pattern in one-line notation");
    c_clt->add_option("--n", cfg.n, "permutation size");
    c_clt->add_option("--reps", cfg.reps, "replicates");
    c_clt->add_option("--truncation", cfg.truncation, "jump truncation depth M");

    auto* c_limit = app.add_subcommand("limit-order", "restriction law of the limiting order");
    add_common(c_limit);
    c_limit->add_option("--h", cfg.h, "radius");
    c_limit->add_option("--trials", cfg.trials, "trials");

    auto* c_verify = app.add_subcommand("verify", "bijection and sampler verification");
    add_common(c_verify);
    c_verify->add_option("--n", cfg.n, "max size for bijection, size for sampler");
    c_verify->add_option("--trials", cfg.trials, "sampler trials (raised to 20x classes)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_enum->parsed()) { cfg.command = "enumerate"; return run_enumerate(cfg); }
        if (c_sample->parsed()) { cfg.command = "sample"; return run_sample(cfg); }
        if (c_solve->parsed()) { cfg.command = "solve-pq"; return run_solve_pq(cfg); }
        if (c_pat->parsed()) { cfg.command = "pat"; return run_pat(cfg); }
        if (c_mu->parsed()) { cfg.command = "mu"; return run_mu(cfg); }
        if (c_gamma->parsed()) { cfg.command = "gamma"; return run_gamma(cfg); }
        if (c_clt->parsed()) { cfg.command = "clt-check"; return run_clt_check(cfg); }
        if (c_limit->parsed()) { cfg.command = "limit-order"; return run_limit_order(cfg); }
        if (c_verify->parsed()) { cfg.command = "verify"; return run_verify(cfg); }
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
