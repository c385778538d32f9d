#pragma once

#include <cstdint>
#include <span>

#include "jpm/core.hpp"

namespace jpm {

// Work done inside an index back-end on behalf of one or more searches.
struct probe_counters {
    std::uint64_t firstfit_calls = 0;
    std::uint64_t prv_calls = 0;
    // Inverted table: entries read while binary-searching rows in prv.
    std::uint64_t search_probes = 0;
    // Inverted table: entries read by firstfit (one per symbol).
    std::uint64_t row_reads = 0;
    // Wavelet tree: inner nodes touched (each costs O(1) rank/select).
    std::uint64_t node_visits = 0;

    probe_counters& operator+=(const probe_counters& o) {
        firstfit_calls += o.firstfit_calls;
        prv_calls += o.prv_calls;
        search_probes += o.search_probes;
        row_reads += o.row_reads;
        node_visits += o.node_visits;
        return *this;
    }
};

// Per-symbol bracket [lo[k], hi[k]] known to contain prv(j)_k. Empty spans
// mean "no prior knowledge". Back-ends clamp hi to the symbol's total count.
struct prv_hint {
    std::span<const count_t> lo;
    std::span<const count_t> hi;

    bool empty() const { return lo.empty(); }
};

}  // namespace jpm
