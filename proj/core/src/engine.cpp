#include "nxns/engine.hpp"

#include <utility>

namespace nxns {

void SimEngine::schedule_at(SimTime when, std::function<void()> fn) {
    queue_.push(Event{when < now_ ? now_ : when, next_seq_++, std::move(fn)});
}

void SimEngine::schedule_in(SimTime delay, std::function<void()> fn) {
    schedule_at(now_ + delay, std::move(fn));
}

void SimEngine::run() {
    while (!queue_.empty()) {
        // priority_queue::top is const; the event is copied out so the
        // callback can schedule more events while running.
        Event ev = queue_.top();
        queue_.pop();
        now_ = ev.when;
        ev.fn();
    }
}

}  // namespace nxns
