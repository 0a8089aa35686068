// SPDX-License-Identifier: Apache-2.0

#include "tia/arc.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tia {

Arc::Arc(double start, double length) : start_(start), length_(length) {
    if (!(start >= 0.0 && start < 1.0))
        throw std::invalid_argument("Arc: start must lie in [0,1)");
    if (!(length > 0.0 && length <= 1.0))
        throw std::invalid_argument("Arc: length must lie in (0,1]");
}

bool contains(const Arc& arc, double x) noexcept {
    double r = x - arc.start();
    if (r < 0.0) r += 1.0;
    return r < arc.length();
}

namespace {

struct Segment {
    double begin;
    double end;
};

// Clip one blocker onto the unrolled desired interval [0, len_desired].
// Positions are relative to desired_start. Appends at most two segments.
inline void clip_blocker(double blocker_start, double blocker_length, double desired_start,
                         double len_desired, Segment* segs, std::size_t& n) {
    double u = blocker_start - desired_start;
    if (u < 0.0) u += 1.0;
    const double e = u + blocker_length;
    if (u < len_desired) segs[n++] = {u, std::min(e, len_desired)};
    if (e > 1.0) {
        // wrapped tail [0, e-1); e-1 < len_desired is not guaranteed, clip again
        segs[n++] = {0.0, std::min(e - 1.0, len_desired)};
    }
}

// Sort by begin and accumulate the merged cover. Segment counts are tiny
// (2 per blocker), so insertion sort beats anything else.
double merged_cover(Segment* segs, std::size_t n) {
    for (std::size_t i = 1; i < n; ++i) {
        Segment key = segs[i];
        std::size_t j = i;
        while (j > 0 && segs[j - 1].begin > key.begin) {
            segs[j] = segs[j - 1];
            --j;
        }
        segs[j] = key;
    }
    double covered = 0.0;
    double cur_begin = 0.0, cur_end = 0.0;
    bool open = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!open) {
            cur_begin = segs[i].begin;
            cur_end = segs[i].end;
            open = true;
        } else if (segs[i].begin <= cur_end + kEndpointTol) {
            cur_end = std::max(cur_end, segs[i].end);
        } else {
            covered += cur_end - cur_begin;
            cur_begin = segs[i].begin;
            cur_end = segs[i].end;
        }
    }
    if (open) covered += cur_end - cur_begin;
    return covered;
}

}  // namespace

double uncovered_measure(const Arc& desired, std::span<const Arc> blockers) {
    const double len = desired.length();
    const std::size_t cap = 2 * blockers.size();
    constexpr std::size_t kStackCap = 16;
    Segment stack_buf[kStackCap];
    std::vector<Segment> heap_buf;
    Segment* segs = stack_buf;
    if (cap > kStackCap) {
        heap_buf.resize(cap);
        segs = heap_buf.data();
    }
    std::size_t n = 0;
    for (const Arc& b : blockers) clip_blocker(b.start(), b.length(), desired.start(), len, segs, n);
    const double uncovered = len - merged_cover(segs, n);
    return uncovered > 0.0 ? uncovered : 0.0;
}

double uncovered_measure(const Arc& desired, std::span<const double> blocker_starts,
                         double blocker_length) {
    if (!(blocker_length > 0.0 && blocker_length <= 1.0))
        throw std::invalid_argument("uncovered_measure: blocker length must lie in (0,1]");
    const double len = desired.length();
    const std::size_t cap = 2 * blocker_starts.size();
    constexpr std::size_t kStackCap = 16;
    Segment stack_buf[kStackCap];
    std::vector<Segment> heap_buf;
    Segment* segs = stack_buf;
    if (cap > kStackCap) {
        heap_buf.resize(cap);
        segs = heap_buf.data();
    }
    std::size_t n = 0;
    for (double s : blocker_starts) clip_blocker(s, blocker_length, desired.start(), len, segs, n);
    const double uncovered = len - merged_cover(segs, n);
    return uncovered > 0.0 ? uncovered : 0.0;
}

}  // namespace tia
