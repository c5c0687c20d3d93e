#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace coexsim {

/// Seeded generator with a portable uniform-integer mapping.
///
/// std::mt19937_64 output is bit-exact across implementations, but
/// std::uniform_int_distribution is not, so the bounded draw is done here
/// with plain rejection sampling. Same seed, same draw sequence, everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform integer in [0, hi], inclusive, unbiased.
    std::int64_t uniform(std::int64_t hi) {
        assert(hi >= 0);
        const std::uint64_t range = static_cast<std::uint64_t>(hi) + 1;
        if (range == 0) return static_cast<std::int64_t>(gen_());  // hi == 2^64-1
        const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
        const std::uint64_t accept_max = std::numeric_limits<std::uint64_t>::max() - rem;
        std::uint64_t x = gen_();
        while (x > accept_max) x = gen_();
        return static_cast<std::int64_t>(x % range);
    }

private:
    std::mt19937_64 gen_;
};

/// Source of backoff draws. The engine asks for every draw through this
/// interface, in ascending node-id order, which keeps runs reproducible and
/// lets the enumeration oracle replay the exact same code path with scripted
/// values instead of random ones.
class BackoffDrawer {
public:
    virtual ~BackoffDrawer() = default;
    /// Returns an integer in [0, cw].
    virtual int draw(int node_id, int cw) = 0;
};

class RngDrawer final : public BackoffDrawer {
public:
    explicit RngDrawer(Rng& rng) : rng_(&rng) {}
    int draw(int /*node_id*/, int cw) override { return static_cast<int>(rng_->uniform(cw)); }

private:
    Rng* rng_;
};

/// Replays a fixed list of draws; used by the oracle and forced-draw tests.
class ScriptedDrawer final : public BackoffDrawer {
public:
    ScriptedDrawer() = default;
    explicit ScriptedDrawer(std::vector<int> values) : values_(std::move(values)) {}

    int draw(int /*node_id*/, int cw) override {
        assert(next_ < values_.size());
        int v = values_[next_++];
        assert(v >= 0 && v <= cw);
        (void)cw;
        return v;
    }

    std::size_t consumed() const { return next_; }

private:
    std::vector<int> values_;
    std::size_t next_ = 0;
};

}  // namespace coexsim
