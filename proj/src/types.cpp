#include "hawkeslob/types.hpp"

#include "hawkeslob/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hawkeslob {

std::string stream_label(std::size_t index, const std::vector<std::string>& asset_names) {
    const StreamId id = StreamId::from_index(index);
    std::string label = id.asset < asset_names.size() ? asset_names[id.asset] : std::to_string(id.asset);
    label += id.side == Side::ask ? ".ask" : ".bid";
    label += id.direction == Direction::up ? ".up" : ".down";
    return label;
}

void sort_events(EventStream& stream) {
    std::stable_sort(stream.events.begin(), stream.events.end(), event_before);
}

void validate(const EventStream& stream, std::size_t n_streams) {
    const auto& h = stream.horizon;
    if (!std::isfinite(h.start) || !std::isfinite(h.end) || h.end < h.start) {
        throw InputError("event stream: invalid horizon");
    }
    for (std::size_t k = 0; k < stream.events.size(); ++k) {
        const MarkedEvent& e = stream.events[k];
        if (!std::isfinite(e.time)) {
            throw InputError("event " + std::to_string(k) + ": non-finite time");
        }
        if (!(e.volume > 0.0) || !std::isfinite(e.volume)) {
            throw InputError("event " + std::to_string(k) + ": volume must be finite and > 0");
        }
        if (e.stream >= n_streams) {
            throw InputError("event " + std::to_string(k) + ": stream index out of range");
        }
        if (e.time < h.start || e.time > h.end) {
            throw InputError("event " + std::to_string(k) + ": time outside horizon");
        }
        if (k > 0 && event_before(e, stream.events[k - 1])) {
            throw InputError("event stream is not sorted at event " + std::to_string(k));
        }
    }
}

std::vector<MarkedEvent> events_of(const EventStream& stream, std::size_t index) {
    std::vector<MarkedEvent> out;
    for (const auto& e : stream.events) {
        if (e.stream == index) out.push_back(e);
    }
    return out;
}

std::vector<std::size_t> count_per_stream(const EventStream& stream, std::size_t n_streams) {
    std::vector<std::size_t> counts(n_streams, 0);
    for (const auto& e : stream.events) {
        if (e.stream < n_streams) ++counts[e.stream];
    }
    return counts;
}

} // namespace hawkeslob
