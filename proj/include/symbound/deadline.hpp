#pragma once

#include <chrono>
#include <stdexcept>

namespace symbound {

struct TimeoutError : std::runtime_error {
    TimeoutError() : std::runtime_error("timeout") {}
};

/// Cooperative deadline checked at loop boundaries of the long-running
/// algorithms. Default-constructed deadlines never fire.
class Deadline {
public:
    Deadline() = default;
    static Deadline after(double seconds) {
        Deadline d;
        if (seconds > 0) {
            d.enabled_ = true;
            d.end_ = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(seconds));
        }
        return d;
    }
    void check() const {
        if (enabled_ && std::chrono::steady_clock::now() > end_) throw TimeoutError();
    }

private:
    bool enabled_ = false;
    std::chrono::steady_clock::time_point end_;
};

}  // namespace symbound
