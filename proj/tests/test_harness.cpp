#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "plbc/sim/harness.hpp"

namespace {

using namespace plbc;
using sim::ExperimentConfig;
using sim::SimMode;
using sim::TrialTally;

const code::PartitionedCode& code15() {
    static const code::PartitionedCode c = code::build_pbch(4, 7, 4);
    return c;
}

struct ThreadEnvGuard {
    explicit ThreadEnvGuard(const char* v) { setenv("DEFECTCODES_THREADS", v, 1); }
    ~ThreadEnvGuard() { unsetenv("DEFECTCODES_THREADS"); }
};

}  // namespace

TEST_CASE("wilson interval sanity") {
    const auto ci = sim::wilson_interval(0, 0);
    CHECK(ci.rate == 0.0);
    const auto mid = sim::wilson_interval(50, 100);
    CHECK(mid.rate == doctest::Approx(0.5));
    CHECK(mid.lo > 0.39);
    CHECK(mid.hi < 0.61);
    CHECK(mid.lo < 0.5);
    CHECK(mid.hi > 0.5);
    const auto zero = sim::wilson_interval(0, 1000);
    CHECK(zero.rate == 0.0);
    CHECK(zero.lo <= 1e-12);
    CHECK(zero.hi < 0.005);
    const auto all = sim::wilson_interval(1000, 1000);
    CHECK(all.hi == 1.0);
    CHECK(all.lo > 0.99);
}

TEST_CASE("tally decomposition") {
    ExperimentConfig cfg;
    cfg.mode = SimMode::bdsc;
    cfg.params = {.beta = 0.1, .p = 0.02};
    cfg.trials = 20000;
    cfg.seed = 11;
    const TrialTally t = sim::run_experiment(code15(), cfg);
    CHECK(t.trials == cfg.trials);
    CHECK(t.rec_fail == t.rec_fail_e0 + t.rec_fail_e1);
    CHECK(t.rec_fail_e0 <= t.enc_fail);
    CHECK(t.rec_fail > 0);  // the channel is harsh enough to fail sometimes
}

TEST_CASE("zero noise means zero failures") {
    ExperimentConfig cfg;
    cfg.trials = 5000;
    cfg.seed = 3;
    cfg.mode = SimMode::bdec;
    cfg.params = {.beta = 0.0, .alpha = 0.0};
    CHECK(sim::run_experiment(code15(), cfg).rec_fail == 0);
    cfg.mode = SimMode::bdsc;
    cfg.params = {.beta = 0.0, .p = 0.0};
    CHECK(sim::run_experiment(code15(), cfg).rec_fail == 0);
    cfg.mode = SimMode::enc_fail_u;
    cfg.fixed_u = 2;  // below d0 = 3
    CHECK(sim::run_experiment(code15(), cfg).enc_fail == 0);
}

TEST_CASE("results do not depend on the worker count") {
    ExperimentConfig cfg;
    cfg.mode = SimMode::bdsc;
    cfg.params = {.beta = 0.1, .p = 0.02};
    cfg.trials = 3 * 4096 + 100;  // several shards plus a ragged tail
    cfg.seed = 99;

    TrialTally serial, parallel;
    {
        ThreadEnvGuard guard("1");
        serial = sim::run_experiment(code15(), cfg);
    }
    {
        ThreadEnvGuard guard("3");
        parallel = sim::run_experiment(code15(), cfg);
    }
    CHECK(serial.trials == parallel.trials);
    CHECK(serial.enc_fail == parallel.enc_fail);
    CHECK(serial.rec_fail == parallel.rec_fail);
    CHECK(serial.rec_fail_e0 == parallel.rec_fail_e0);
    CHECK(serial.rec_fail_e1 == parallel.rec_fail_e1);

    // and repeated runs are bit-identical
    ThreadEnvGuard guard("3");
    const TrialTally again = sim::run_experiment(code15(), cfg);
    CHECK(again.rec_fail == parallel.rec_fail);
}

TEST_CASE("early stop is deterministic and shard-aligned") {
    ExperimentConfig cfg;
    cfg.mode = SimMode::enc_fail;
    cfg.params = {.beta = 0.3};
    cfg.trials = 100 * 4096;
    cfg.seed = 5;
    cfg.target_failures = 50;

    TrialTally a, b;
    {
        ThreadEnvGuard guard("1");
        a = sim::run_experiment(code15(), cfg);
    }
    {
        ThreadEnvGuard guard("4");
        b = sim::run_experiment(code15(), cfg);
    }
    CHECK(a.trials == b.trials);
    CHECK(a.enc_fail == b.enc_fail);
    CHECK(a.enc_fail >= cfg.target_failures);
    CHECK(a.trials < cfg.trials);        // it actually stopped early
    CHECK(a.trials % 4096 == 0);         // at a shard boundary
}

TEST_CASE("seeds decouple experiments") {
    ExperimentConfig cfg;
    cfg.mode = SimMode::bdsc;
    cfg.params = {.beta = 0.1, .p = 0.02};
    cfg.trials = 20000;
    cfg.seed = 1;
    const auto t1 = sim::run_experiment(code15(), cfg);
    cfg.seed = 2;
    const auto t2 = sim::run_experiment(code15(), cfg);
    CHECK(t1.rec_fail != t2.rec_fail);  // overwhelmingly likely
    // but the rates agree statistically (5 sigma)
    const double p1 = double(t1.rec_fail) / double(t1.trials);
    const double p2 = double(t2.rec_fail) / double(t2.trials);
    const double sigma = std::sqrt(p1 * (1 - p1) / t1.trials + p2 * (1 - p2) / t2.trials);
    CHECK(std::abs(p1 - p2) < 5 * sigma);
}

TEST_CASE("fixed-u simulation matches the exact conditional probability") {
    // [15,7,4], u = 3 = d0: the conditional failure probability is exact.
    const auto& code = code15();
    const auto b0 = code::weight_distribution_exact(code, code::WeightTarget::dual_of_c0);
    const double exact =
        analysis::enc_fail_given_u(analysis::CodeShape::of(code), 3, b0).bound.value;
    const auto tally = sim::run_enc_fail_given_u(code, 3, 200000, 77);
    const auto ci = tally.enc_fail_ci();
    CHECK(exact >= ci.lo);
    CHECK(exact <= ci.hi);
}

TEST_CASE("sweep covers every candidate and matches direct runs") {
    ExperimentConfig base;
    base.mode = SimMode::enc_fail;
    base.params = {.beta = 0.2};
    base.trials = 10000;
    base.seed = 42;
    const auto result = sim::sweep(4, 7, base);
    REQUIRE(result.rows.size() == 3);  // l in {0, 4, 8}
    CHECK(result.rows[0].l == 0);
    CHECK(result.rows[1].l == 4);
    CHECK(result.rows[2].l == 8);
    for (const auto& row : result.rows) {
        CHECK(row.l + row.r == 8);
        CHECK(row.tally.trials == base.trials);
        CHECK(row.failures == row.tally.enc_fail);
    }
    // more masking redundancy cannot hurt at this sample size
    CHECK(result.rows[2].failures <= result.rows[0].failures);
    CHECK(result.best_index < result.rows.size());

    // deterministic across calls
    const auto again = sim::sweep(4, 7, base);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(again.rows[i].failures == result.rows[i].failures);

    const std::string csv = result.to_csv();
    CHECK(csv.rfind("l,r,d0,d1,analytic,empirical,ci_lo,ci_hi,trials,failures\n", 0) == 0);
}

TEST_CASE("tally serialization") {
    TrialTally t;
    t.trials = 10;
    t.enc_fail = 1;
    t.rec_fail = 2;
    t.rec_fail_e0 = 1;
    t.rec_fail_e1 = 1;
    CHECK(t.to_csv() == "trials,enc_fail,rec_fail,rec_fail_e0,rec_fail_e1\n10,1,2,1,1\n");
    const std::string json = t.to_json();
    CHECK(json.find("\"rec_fail\": 2") != std::string::npos);
    CHECK(json.find("\"rec_fail_rate\"") != std::string::npos);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(sim::run_experiment(code15(), cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.mode = SimMode::enc_fail_u;
    cfg.fixed_u = 16;
    CHECK_THROWS_AS(sim::run_experiment(code15(), cfg), std::invalid_argument);
}
