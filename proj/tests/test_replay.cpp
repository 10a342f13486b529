#include <doctest.h>

#include <stdexcept>

#include "tsc/replay/replay.hpp"

using namespace tsc;

namespace {

replay::Experience tagged(double reward) {
    replay::Experience e;
    e.reward = reward;
    return e;
}

} // namespace

TEST_CASE("push evicts strictly oldest-first at capacity") {
    replay::ReplayBuffer buf(20000);
    for (int i = 0; i <= 20000; ++i)
        buf.push(tagged(i));
    CHECK(buf.size() == 20000);
    CHECK(buf.at(0).reward == 1.0);      // item 0 evicted
    CHECK(buf.at(19999).reward == 20000.0);
}

TEST_CASE("push retains insertion order below capacity") {
    replay::ReplayBuffer buf(100);
    buf.push(tagged(0));
    CHECK(buf.size() == 1);
    for (int i = 1; i < 100; ++i)
        buf.push(tagged(i));
    CHECK(buf.size() == 100);
    for (int i = 0; i < 100; ++i)
        CHECK(buf.at(static_cast<std::size_t>(i)).reward == i);
}

TEST_CASE("sampling from a single-entry buffer repeats it") {
    replay::ReplayBuffer buf(10);
    buf.push(tagged(7));
    Rng rng(1);
    const auto batch = buf.sample(3, rng);
    REQUIRE(batch.size() == 3);
    for (const auto &e : batch)
        CHECK(e.reward == 7.0);
}

TEST_CASE("sampling is seeded-deterministic and does not mutate the buffer") {
    replay::ReplayBuffer buf(64);
    for (int i = 0; i < 64; ++i)
        buf.push(tagged(i));

    Rng a(99), b(99);
    const auto s1 = buf.sample(16, a);
    const auto s2 = buf.sample(16, b);
    for (std::size_t i = 0; i < s1.size(); ++i)
        CHECK(s1[i].reward == s2[i].reward);

    CHECK(buf.size() == 64);
    for (int i = 0; i < 64; ++i)
        CHECK(buf.at(static_cast<std::size_t>(i)).reward == i);
}

TEST_CASE("two-entry buffer samples are near-uniform") {
    replay::ReplayBuffer buf(2);
    buf.push(tagged(0));
    buf.push(tagged(1));
    Rng rng(4242);
    int ones = 0;
    const int draws = 10000;
    for (const auto &e : buf.sample(draws, rng))
        ones += e.reward == 1.0 ? 1 : 0;
    // 3 sigma around 5000 for a fair coin: sqrt(10000*0.25) = 50
    CHECK(ones > 5000 - 150);
    CHECK(ones < 5000 + 150);
}

TEST_CASE("sampling more than stored is an error") {
    replay::ReplayBuffer buf(10);
    buf.push(tagged(0));
    Rng rng(1);
    CHECK_THROWS_AS(buf.sample(2, rng), std::logic_error);
}
