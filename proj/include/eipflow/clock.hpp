#pragma once

#include <chrono>
#include <cstdint>

namespace eipflow {

// Logical time in abstract ticks. Everything time-dependent (TTL, timers,
// deadlines) is expressed in ticks; only the CLI maps ticks to wall time.
using Ticks = std::int64_t;

class Clock {
public:
    virtual ~Clock() = default;
    virtual Ticks now() const = 0;
};

class LogicalClock : public Clock {
public:
    explicit LogicalClock(Ticks start = 0) : now_(start) {}
    Ticks now() const override { return now_; }
    void set(Ticks t) { now_ = t; }
    void advance(Ticks delta) { now_ += delta; }

private:
    Ticks now_;
};

// Wall-clock adapter; one tick = one millisecond.
class WallClock : public Clock {
public:
    Ticks now() const override {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now().time_since_epoch());
        return static_cast<Ticks>(ms.count());
    }
};

} // namespace eipflow
