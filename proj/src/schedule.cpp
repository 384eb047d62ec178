#include "vdp/schedule.hpp"

namespace vdp {

const ScheduleSegment& Schedule::active_at(double t) const {
    if (segments.empty()) throw Error(Status::config_error, "empty schedule");
    const ScheduleSegment* active = &segments.front();
    for (const auto& seg : segments) {
        if (seg.t_start <= t) active = &seg;
        else break;
    }
    return *active;
}

std::vector<double> Schedule::switch_times() const {
    std::vector<double> ts;
    for (size_t i = 1; i < segments.size(); ++i) ts.push_back(segments[i].t_start);
    return ts;
}

} // namespace vdp
