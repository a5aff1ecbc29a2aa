#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace nxns {

/// Simulated time in microseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerMilli = 1000;

/// Single-threaded discrete-event queue. Events at the same timestamp run
/// in scheduling order (FIFO tie-break), which is what makes runs
/// reproducible without touching wall-clock anything.
class SimEngine {
public:
    void schedule_at(SimTime when, std::function<void()> fn);
    void schedule_in(SimTime delay, std::function<void()> fn);

    SimTime now() const { return now_; }
    bool idle() const { return queue_.empty(); }

    /// Runs until the queue drains.
    void run();

private:
    struct Event {
        SimTime when;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.when != b.when) return a.when > b.when;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace nxns
