#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plbc/analysis/bounds.hpp"
#include "plbc/channel/channel.hpp"
#include "plbc/code/pbch.hpp"
#include "plbc/sim/harness.hpp"

namespace {

using namespace plbc;

struct CommonOpts {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100000;
    std::string out;
    std::string format = "csv";
    std::string channel;
    double alpha = 0.0, beta = 0.0, p = 0.0;
    bool noise_on_defects = true;
    bool alpha_set = false, beta_set = false, p_set = false;
};

void add_channel_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--channel", o.channel, "preset name, e.g. bdec:ch4 or bdsc:ch6");
    cmd->add_option("--alpha", o.alpha, "erasure probability")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--beta", o.beta, "defect probability")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p", o.p, "crossover probability")->check(CLI::Range(0.0, 0.5));
    cmd->add_flag("--noise-on-defects,!--no-noise-on-defects", o.noise_on_defects,
                  "transient noise also hits defect cells (default on)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

channel::ChannelParams resolve_channel(const CommonOpts& o, CLI::App* cmd) {
    channel::ChannelParams params;
    if (!o.channel.empty()) {
        auto preset = channel::channel_preset(o.channel);
        if (!preset) throw CLI::ValidationError("--channel", "unknown preset " + o.channel);
        params = *preset;
    }
    if (cmd->count("--alpha")) params.alpha = o.alpha;
    if (cmd->count("--beta")) params.beta = o.beta;
    if (cmd->count("--p")) params.p = o.p;
    params.validate();
    return params;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + o.out);
    file << text;
}

std::string capacities_text(const channel::ChannelParams& params, const std::string& format) {
    const auto c = channel::capacities(params);
    if (format == "json") {
        nlohmann::json j;
        j["alpha"] = params.alpha;
        j["beta"] = params.beta;
        j["p"] = params.p;
        j["bdc"] = c.bdc;
        j["bdec_masked"] = c.bdec_masked;
        j["bdec_enc"] = c.bdec_enc;
        j["bdsc_masked"] = c.bdsc_masked;
        j["bdsc_min"] = c.bdsc_min;
        j["p_tilde"] = c.p_tilde;
        j["bdsc_lower"] = c.bdsc_lower;
        j["bdsc_upper"] = c.bdsc_upper;
        return j.dump(2);
    }
    std::ostringstream out;
    out << "name,value\n"
        << "bdc," << c.bdc << '\n'
        << "bdec_masked," << c.bdec_masked << '\n'
        << "bdec_enc," << c.bdec_enc << '\n'
        << "bdsc_masked," << c.bdsc_masked << '\n'
        << "bdsc_min," << c.bdsc_min << '\n'
        << "p_tilde," << c.p_tilde << '\n'
        << "bdsc_lower," << c.bdsc_lower << '\n'
        << "bdsc_upper," << c.bdsc_upper << '\n';
    return out.str();
}

std::string candidate_table_csv(unsigned m, std::size_t k) {
    const std::size_t n = (std::size_t(1) << m) - 1;
    std::ostringstream out;
    out << "l,r,d0,d1\n";
    for (std::size_t l = 0; l + k <= n; l += m) {
        const auto s = analysis::CodeShape::designed(n, k, l, m);
        out << s.l << ',' << s.r << ',' << s.d0 << ',' << s.d1 << '\n';
    }
    return out.str();
}

std::string allocation_text(const analysis::AllocationReport& report,
                            const std::string& format) {
    return format == "json" ? report.to_json() : report.to_csv();
}

int reproduce_table1(const CommonOpts& o) {
    std::ostringstream out;
    out << "l,r,d0,d1\n";
    for (std::size_t l = 0; l <= 100; l += 10) {
        const auto code = code::build_pbch(10, 923, l);
        code::verify_code_invariants(code);
        out << code.l << ',' << code.r << ',' << code.d0 << ',' << code.d1 << '\n';
    }
    emit(o, out.str());
    return 0;
}

int reproduce_table3(const CommonOpts& o) {
    std::ostringstream out;
    out << "channel,alpha,beta,l_hat,r_hat,l_tilde,r_tilde\n";
    for (const auto& [name, params] : channel::bdec_presets()) {
        const auto report = analysis::allocate_discrete(
            1023, 923, 10, analysis::ChannelKind::bdec, params.alpha, params.beta,
            analysis::BoundSelector::bdec_binomial);
        out << name << ',' << params.alpha << ',' << params.beta << ',' << report.best_l << ','
            << report.best_r << ',' << report.kkt->l << ',' << report.kkt->r << '\n';
    }
    emit(o, out.str());
    return 0;
}

int reproduce_table5(const CommonOpts& o) {
    std::ostringstream out;
    out << "channel,p,beta,l_hat,r_hat\n";
    for (const auto& [name, params] : channel::bdsc_presets()) {
        const auto report = analysis::allocate_discrete(
            1023, 923, 10, analysis::ChannelKind::bdsc, params.p, params.beta,
            analysis::BoundSelector::bdsc_estimate);
        out << name << ',' << params.p << ',' << params.beta << ',' << report.best_l << ','
            << report.best_r << '\n';
    }
    emit(o, out.str());
    return 0;
}

// Encoding failure given a fixed defect count: [31, k, l = 31 - k] codes
// across rates, u in {10, 12}, simulation vs exact value / upper bound.
int reproduce_fig3(const CommonOpts& o) {
    std::ostringstream out;
    out << "u,k,l,d0,regime,analytic,empirical,ci_lo,ci_hi,trials\n";
    for (std::size_t u : {std::size_t(10), std::size_t(12)}) {
        for (std::size_t k : {26, 21, 16, 11}) {
            const std::size_t l = 31 - k;
            const auto code = code::build_pbch(5, k, l);
            const auto b0 =
                code::weight_distribution_exact(code, code::WeightTarget::dual_of_c0);
            const auto analytic =
                analysis::enc_fail_given_u(analysis::CodeShape::of(code), u, b0);
            const auto tally = sim::run_enc_fail_given_u(code, u, o.trials, o.seed);
            const auto ci = tally.enc_fail_ci();
            const char* regime = analytic.regime == analysis::FailRegime::exact ? "exact"
                                 : analytic.regime == analysis::FailRegime::zero ? "zero"
                                                                                 : "upper";
            out << u << ',' << k << ',' << l << ',' << code.d0 << ',' << regime << ','
                << analytic.bound.value << ',' << ci.rate << ',' << ci.lo << ',' << ci.hi << ','
                << tally.trials << '\n';
        }
    }
    emit(o, out.str());
    return 0;
}

// Overall encoding failure at beta = 0.1 across the same [31, k, l] family,
// against the closed-form binomial bound.
int reproduce_fig4(const CommonOpts& o) {
    std::ostringstream out;
    out << "k,l,d0,bound,empirical,ci_lo,ci_hi,trials\n";
    for (std::size_t k : {26, 21, 16, 11}) {
        const std::size_t l = 31 - k;
        const auto code = code::build_pbch(5, k, l);
        const auto bound = analysis::enc_fail_bound_binomial(31, l, 0.1);
        sim::ExperimentConfig cfg;
        cfg.mode = sim::SimMode::enc_fail;
        cfg.params.beta = 0.1;
        cfg.trials = o.trials;
        cfg.seed = o.seed;
        const auto tally = sim::run_experiment(code, cfg);
        const auto ci = tally.enc_fail_ci();
        out << k << ',' << l << ',' << code.d0 << ',' << bound.value << ',' << ci.rate << ','
            << ci.lo << ',' << ci.hi << ',' << tally.trials << '\n';
    }
    emit(o, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned-code toolkit for memories with stuck-at defects"};
    app.require_subcommand(1);

    CommonOpts o;

    unsigned m = 10;
    std::size_t k = 923, l = 0;
    std::size_t fixed_u = 0;
    std::string mode = "bdec";
    std::string bound_name;
    std::string selector_name;
    std::string table;
    std::uint64_t target_failures = 0;

    auto* construct = app.add_subcommand("construct", "build a code, emit JSON + table");
    construct->add_option("--m", m, "field degree")->required();
    construct->add_option("--k", k, "message size")->required();
    construct->add_option("--l", l, "masking redundancy")->required();
    add_output_flags(construct, o);

    auto* capacity = app.add_subcommand("capacity", "evaluate every capacity formula");
    add_channel_flags(capacity, o);
    add_output_flags(capacity, o);

    auto* bound = app.add_subcommand("bound", "evaluate a named bound");
    bound->add_option("--name", bound_name,
                      "enc_fail | enc_fail_binomial | enc_fail_given_u | bdec_ub | "
                      "bdsc_bound | bdsc_estimate | kkt")
        ->required();
    bound->add_option("--m", m, "field degree");
    bound->add_option("--k", k, "message size");
    bound->add_option("--l", l, "masking redundancy");
    bound->add_option("--u", fixed_u, "defect count (enc_fail_given_u)");
    add_channel_flags(bound, o);
    add_output_flags(bound, o);

    auto* allocate = app.add_subcommand("allocate", "evaluate every (l, r) split");
    allocate->add_option("--m", m, "field degree");
    allocate->add_option("--k", k, "message size");
    allocate->add_option("--bound", selector_name,
                         "bdec_binomial | bdec_exact | bdsc_estimate | bdsc_bound");
    add_channel_flags(allocate, o);
    add_output_flags(allocate, o);

    auto* simulate = app.add_subcommand("simulate", "run one Monte-Carlo experiment");
    simulate->add_option("--m", m, "field degree");
    simulate->add_option("--k", k, "message size");
    simulate->add_option("--l", l, "masking redundancy");
    simulate->add_option("--mode", mode, "enc_fail_u | enc_fail | bdec | bdsc");
    simulate->add_option("--u", fixed_u, "defect count (enc_fail_u mode)");
    simulate->add_option("--seed", o.seed, "master seed");
    simulate->add_option("--trials", o.trials, "trial count");
    simulate->add_option("--target-failures", target_failures,
                         "stop early after this many failures (0 = never)");
    add_channel_flags(simulate, o);
    add_output_flags(simulate, o);

    auto* sweep_cmd = app.add_subcommand("sweep", "simulate every (l, r) candidate");
    sweep_cmd->add_option("--m", m, "field degree");
    sweep_cmd->add_option("--k", k, "message size");
    sweep_cmd->add_option("--mode", mode, "enc_fail_u | enc_fail | bdec | bdsc");
    sweep_cmd->add_option("--u", fixed_u, "defect count (enc_fail_u mode)");
    sweep_cmd->add_option("--seed", o.seed, "master seed");
    sweep_cmd->add_option("--trials", o.trials, "trials per candidate");
    sweep_cmd->add_option("--target-failures", target_failures,
                          "stop a candidate early after this many failures");
    add_channel_flags(sweep_cmd, o);
    add_output_flags(sweep_cmd, o);

    auto* reproduce = app.add_subcommand("reproduce", "canned experiment configurations");
    reproduce->add_option("target", table, "table1 | table3 | table5 | fig3 | fig4")
        ->required();
    reproduce->add_option("--seed", o.seed, "master seed");
    reproduce->add_option("--trials", o.trials, "trials per point");
    add_output_flags(reproduce, o);

    try {
        app.parse(argc, argv);

        if (construct->parsed()) {
            const auto code = code::build_pbch(m, k, l);
            code::verify_code_invariants(code);
            if (o.format == "json") {
                emit(o, code.to_json());
            } else {
                std::ostringstream out;
                out << candidate_table_csv(m, k);
                emit(o, out.str());
                if (o.out.empty())
                    std::cout << "constructed [" << code.n << "," << code.k << "," << code.l
                              << "] with (d0,d1) = (" << code.d0 << "," << code.d1 << ")\n";
            }
            return 0;
        }

        if (capacity->parsed()) {
            emit(o, capacities_text(resolve_channel(o, capacity), o.format));
            return 0;
        }

        if (bound->parsed()) {
            const auto params = resolve_channel(o, bound);
            const std::size_t n = (std::size_t(1) << m) - 1;
            const auto shape = analysis::CodeShape::designed(n, k, l, m);
            nlohmann::json j;
            j["name"] = bound_name;
            auto record = [&](const analysis::BoundValue& v) {
                j["value"] = v.value;
                j["log2_value"] = v.log2_value;
                j["masking_log2"] = v.masking_log2;
                j["error_log2"] = v.error_log2;
            };
            if (bound_name == "enc_fail") {
                record(analysis::enc_fail_bound(shape, params.beta,
                                                code::WeightDistribution::binomial(n, l)));
            } else if (bound_name == "enc_fail_binomial") {
                record(analysis::enc_fail_bound_binomial(n, l, params.beta));
            } else if (bound_name == "enc_fail_given_u") {
                record(analysis::enc_fail_given_u(shape, fixed_u,
                                                  code::WeightDistribution::binomial(n, l))
                           .bound);
            } else if (bound_name == "bdec_ub") {
                record(analysis::bdec_recovery_ub_binomial(shape, params.alpha, params.beta));
            } else if (bound_name == "bdsc_bound") {
                record(analysis::bdsc_recovery_ub(shape, params.p, params.beta,
                                                  code::WeightDistribution::binomial(n, l)));
            } else if (bound_name == "bdsc_estimate") {
                record(analysis::bdsc_recovery_estimate(
                    shape, params.p, params.beta, code::WeightDistribution::binomial(n, l)));
            } else if (bound_name == "kkt") {
                const auto pt = analysis::kkt_allocation(n, k, params.alpha, params.beta);
                j["l"] = pt.l;
                j["r"] = pt.r;
            } else {
                std::cerr << "unknown bound name: " << bound_name << "\n";
                return 2;
            }
            emit(o, j.dump(2));
            return 0;
        }

        if (allocate->parsed()) {
            const auto params = resolve_channel(o, allocate);
            analysis::BoundSelector selector = analysis::BoundSelector::bdec_binomial;
            analysis::ChannelKind kind = analysis::ChannelKind::bdec;
            if (selector_name.empty()) {
                const bool is_bdsc = o.channel.rfind("bdsc", 0) == 0 ||
                                     (params.p > 0.0 && params.alpha == 0.0);
                selector_name = is_bdsc ? "bdsc_estimate" : "bdec_binomial";
            }
            if (selector_name == "bdec_binomial") {
                selector = analysis::BoundSelector::bdec_binomial;
            } else if (selector_name == "bdec_exact") {
                selector = analysis::BoundSelector::bdec_exact;
            } else if (selector_name == "bdsc_estimate") {
                selector = analysis::BoundSelector::bdsc_estimate;
                kind = analysis::ChannelKind::bdsc;
            } else if (selector_name == "bdsc_bound") {
                selector = analysis::BoundSelector::bdsc_bound;
                kind = analysis::ChannelKind::bdsc;
            } else {
                std::cerr << "unknown bound selector: " << selector_name << "\n";
                return 2;
            }
            const double noise = kind == analysis::ChannelKind::bdec ? params.alpha : params.p;
            const std::size_t n = (std::size_t(1) << m) - 1;
            const auto report =
                analysis::allocate_discrete(n, k, m, kind, noise, params.beta, selector);
            emit(o, allocation_text(report, o.format));
            return 0;
        }

        auto parse_mode = [&](const std::string& name) {
            if (name == "enc_fail_u") return sim::SimMode::enc_fail_u;
            if (name == "enc_fail") return sim::SimMode::enc_fail;
            if (name == "bdec") return sim::SimMode::bdec;
            if (name == "bdsc") return sim::SimMode::bdsc;
            throw CLI::ValidationError("--mode", "unknown mode " + name);
        };

        if (simulate->parsed()) {
            sim::ExperimentConfig cfg;
            cfg.mode = parse_mode(mode);
            cfg.params = resolve_channel(o, simulate);
            cfg.fixed_u = fixed_u;
            cfg.trials = o.trials;
            cfg.seed = o.seed;
            cfg.noise_on_defects = o.noise_on_defects;
            cfg.target_failures = target_failures;
            const auto code = code::build_pbch(m, k, l);
            const auto tally = sim::run_experiment(code, cfg);
            emit(o, o.format == "json" ? tally.to_json() : tally.to_csv());
            return 0;
        }

        if (sweep_cmd->parsed()) {
            sim::ExperimentConfig cfg;
            cfg.mode = parse_mode(mode);
            cfg.params = resolve_channel(o, sweep_cmd);
            cfg.fixed_u = fixed_u;
            cfg.trials = o.trials;
            cfg.seed = o.seed;
            cfg.noise_on_defects = o.noise_on_defects;
            cfg.target_failures = target_failures;
            const auto result = sim::sweep(m, k, cfg);
            emit(o, o.format == "json" ? result.to_json() : result.to_csv());
            return 0;
        }

        if (reproduce->parsed()) {
            if (table == "table1") return reproduce_table1(o);
            if (table == "table3") return reproduce_table3(o);
            if (table == "table5") return reproduce_table5(o);
            if (table == "fig3") return reproduce_fig3(o);
            if (table == "fig4") return reproduce_fig4(o);
            std::cerr << "unknown reproduce target: " << table << "\n";
            return 2;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
