#pragma once

#include <atomic>
#include <cstdint>
#include <string>

namespace eipflow {

// Message id source. The engine treats ids as opaque; implementations must
// never repeat an id within one run.
class IdGenerator {
public:
    virtual ~IdGenerator() = default;
    virtual std::string next() = 0;
};

// Reproducible ids of the form "run-<seed>-<n>". Each generator instance is
// one id namespace; thread-safe.
class SeededIdGenerator : public IdGenerator {
public:
    explicit SeededIdGenerator(std::uint64_t seed, std::string prefix = "run")
        : seed_(seed), prefix_(std::move(prefix)) {}

    std::string next() override {
        auto n = counter_.fetch_add(1, std::memory_order_relaxed) + 1;
        return prefix_ + "-" + std::to_string(seed_) + "-" + std::to_string(n);
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::string prefix_;
    std::atomic<std::uint64_t> counter_{0};
};

} // namespace eipflow
