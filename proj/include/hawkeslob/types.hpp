#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hawkeslob {

enum class Side : std::uint8_t { ask = 0, bid = 1 };
enum class Direction : std::uint8_t { up = 0, down = 1 };

/// One of the four first-line streams of an asset. Flattened as asset*4 + side*2 + direction,
/// i.e. ask-up, ask-down, bid-up, bid-down per asset.
struct StreamId {
    std::uint32_t asset = 0;
    Side side = Side::ask;
    Direction direction = Direction::up;

    [[nodiscard]] constexpr std::size_t index() const noexcept {
        return static_cast<std::size_t>(asset) * 4 + static_cast<std::size_t>(side) * 2 +
               static_cast<std::size_t>(direction);
    }

    [[nodiscard]] static constexpr StreamId from_index(std::size_t index) noexcept {
        return StreamId{static_cast<std::uint32_t>(index / 4), static_cast<Side>((index / 2) % 2),
                        static_cast<Direction>(index % 2)};
    }

    friend constexpr bool operator==(const StreamId&, const StreamId&) = default;
};

/// "ask.up" style label, prefixed by the asset index or name.
std::string stream_label(std::size_t index, const std::vector<std::string>& asset_names = {});

struct MarkedEvent {
    double time = 0.0;        // seconds
    std::uint32_t stream = 0; // flattened stream index
    double volume = 1.0;      // mark, > 0

    friend bool operator==(const MarkedEvent&, const MarkedEvent&) = default;
};

struct Horizon {
    double start = 0.0;
    double end = 0.0;

    [[nodiscard]] double length() const noexcept { return end - start; }
    friend bool operator==(const Horizon&, const Horizon&) = default;
};

/// Time-ordered marked events on [horizon.start, horizon.end].
struct EventStream {
    std::vector<MarkedEvent> events;
    Horizon horizon;
    // false when the history is known to miss events before its first one
    bool complete = true;

    [[nodiscard]] bool empty() const noexcept { return events.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return events.size(); }
    friend bool operator==(const EventStream&, const EventStream&) = default;
};

/// Strict ordering used everywhere: time, then stream index.
[[nodiscard]] inline bool event_before(const MarkedEvent& a, const MarkedEvent& b) noexcept {
    return a.time < b.time || (a.time == b.time && a.stream < b.stream);
}

/// Sorts with the canonical tie-break. Stable for identical (time, stream) pairs.
void sort_events(EventStream& stream);

/// Throws InputError if events are unsorted, outside the horizon, have non-positive or
/// non-finite volumes, or reference a stream >= n_streams.
void validate(const EventStream& stream, std::size_t n_streams);

/// Events of one stream, in order.
[[nodiscard]] std::vector<MarkedEvent> events_of(const EventStream& stream, std::size_t index);

[[nodiscard]] std::vector<std::size_t> count_per_stream(const EventStream& stream, std::size_t n_streams);

} // namespace hawkeslob
