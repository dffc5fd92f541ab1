#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "plbc/channel/channel.hpp"
#include "plbc/util/logdomain.hpp"

namespace {

using namespace plbc::channel;
using plbc::gf2::BitVec;

double binomial_sigma(std::size_t n, double p) { return std::sqrt(n * p * (1.0 - p)); }

}  // namespace

TEST_CASE("rng determinism and uniformity") {
    Rng a(12345), b(12345), c(54321);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        if (x != c.next_u64()) differs = true;
    }
    CHECK(differs);
    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        const double d = r.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        CHECK(r.uniform(10) < 10);
    }
    CHECK_THROWS_AS(r.uniform(0), std::invalid_argument);
}

TEST_CASE("stream rngs are decoupled") {
    const auto x = make_stream_rng(1, Stream::state, 0).next_u64();
    CHECK(x == make_stream_rng(1, Stream::state, 0).next_u64());
    CHECK(x != make_stream_rng(1, Stream::message, 0).next_u64());
    CHECK(x != make_stream_rng(1, Stream::state, 1).next_u64());
    CHECK(x != make_stream_rng(2, Stream::state, 0).next_u64());
}

TEST_CASE("sample_state statistics") {
    Rng rng(42);
    CHECK(sample_state(100, 0.0, rng).defect_count() == 0);
    CHECK(sample_state(100, 1.0, rng).defect_count() == 100);

    const std::size_t n = 100000;
    const double beta = 0.1;
    const auto s = sample_state(n, beta, rng);
    const double defects = double(s.defect_count());
    CHECK(std::abs(defects - n * beta) <= 3.0 * binomial_sigma(n, beta));
    std::size_t stuck1 = 0;
    for (auto c : s.cells)
        if (c == CellState::stuck1) ++stuck1;
    CHECK(std::abs(double(stuck1) - defects / 2) <= 3.0 * binomial_sigma(std::size_t(defects), 0.5));
}

TEST_CASE("apply_defects") {
    const BitVec c = BitVec::from_bits({1, 0, 1, 0});
    ChannelState s;
    s.cells = {CellState::normal, CellState::stuck0, CellState::normal, CellState::stuck1};
    const BitVec out = apply_defects(c, s);
    CHECK(out == BitVec::from_bits({1, 0, 1, 1}));
    CHECK(apply_defects(out, s) == out);  // idempotent
    ChannelState all_normal;
    all_normal.cells.assign(4, CellState::normal);
    CHECK(apply_defects(c, all_normal) == c);
    ChannelState all_zero;
    all_zero.cells.assign(4, CellState::stuck0);
    CHECK(apply_defects(c, all_zero).is_zero());
}

TEST_CASE("erasures and flips") {
    Rng rng(8);
    const std::size_t n = 100000;
    BitVec word(n);
    const auto none = apply_erasures(word, 0.0, rng);
    CHECK(none.unerased_locations().size() == n);
    const auto all = apply_erasures(word, 1.0, rng);
    CHECK(all.unerased_locations().empty());
    CHECK(apply_bsc(word, 0.0, rng).symbols == word);

    const auto half = apply_bsc(word, 0.5, rng);
    CHECK(std::abs(double(half.symbols.popcount()) - n * 0.5) <=
          3.0 * binomial_sigma(n, 0.5));
    const auto some = apply_erasures(word, 0.2, rng);
    const double erased = double(n - some.unerased_locations().size());
    CHECK(std::abs(erased - n * 0.2) <= 3.0 * binomial_sigma(n, 0.2));
}

TEST_CASE("capacity formulas") {
    // BDEC channel 1: alpha = 0.040, beta = 0
    CHECK(capacities({.beta = 0.0, .alpha = 0.040}).bdec_enc == doctest::Approx(0.96));
    // all seven BDEC presets share the encoder-side capacity 0.96
    for (const auto& [name, params] : bdec_presets())
        CHECK(capacities(params).bdec_enc == doctest::Approx(0.96));

    // BDSC channel 2 bounds round to 0.9685 / 0.9686
    const auto ch2 = capacities({.beta = 2.0e-3, .p = 3.0e-3});
    CHECK(std::round(ch2.bdsc_lower * 1e4) / 1e4 == doctest::Approx(0.9685));
    CHECK(std::round(ch2.bdsc_upper * 1e4) / 1e4 == doctest::Approx(0.9686));
    // BDSC channel 1: both bounds 0.9624
    const auto ch1 = capacities({.beta = 0.0, .p = 4.0e-3});
    CHECK(std::round(ch1.bdsc_lower * 1e4) / 1e4 == doctest::Approx(0.9624));
    CHECK(std::round(ch1.bdsc_upper * 1e4) / 1e4 == doctest::Approx(0.9624));
}

TEST_CASE("capacity identities") {
    for (double alpha : {0.0, 0.01, 0.2}) {
        for (double beta : {0.0, 0.005, 0.1}) {
            const auto c = capacities({.beta = beta, .alpha = alpha});
            CHECK(c.bdec_masked - c.bdec_enc == doctest::Approx(alpha * beta));
        }
    }
    for (double p : {0.0, 1e-3, 0.1}) {
        for (double beta : {0.0, 0.005, 0.1}) {
            const auto c = capacities({.beta = beta, .p = p});
            CHECK(c.bdsc_upper - c.bdsc_lower ==
                  doctest::Approx(beta * plbc::util::binary_entropy(p)));
        }
    }
}

TEST_CASE("BDSC presets share p_tilde near 4e-3") {
    for (const auto& [name, params] : bdsc_presets()) {
        const double pt = capacities(params).p_tilde;
        CHECK(pt >= 3.9e-3);
        CHECK(pt <= 4.1e-3);
    }
}

TEST_CASE("preset lookup") {
    REQUIRE(channel_preset("bdec:ch4").has_value());
    CHECK(channel_preset("bdec:ch4")->alpha == doctest::Approx(0.020));
    REQUIRE(channel_preset("bdsc:ch6").has_value());
    CHECK(channel_preset("bdsc:ch6")->p == doctest::Approx(5.0e-4));
    CHECK_FALSE(channel_preset("bdec:ch8").has_value());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ChannelParams{.beta = -0.1}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams{.p = 0.6}.validate(), std::invalid_argument);
    ChannelParams ok{.beta = 0.5, .alpha = 1.0, .p = 0.5};
    CHECK_NOTHROW(ok.validate());
}
