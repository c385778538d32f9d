#pragma once

// Jumping search for all occurrences of a Parikh vector q.
//
// Two pointers L < R move through the text in jumps:
//   R <- firstfit(prv(L) + q)   (the earliest end of an occurrence starting after L)
//   L <- firstfit(prv(R) - q)   (the start of the longest suffix of s[L+1..R]
//                                whose Parikh vector is <= q)
// and an occurrence starts at L+1 exactly when R - L == |q| after either
// update. Works over any back-end providing firstfit and prv. Back-ends
// whose firstfit also names the symbol at the returned position get that
// component of the next prv pinned exactly.
//
// Each prv call is given a bracket derived from values already known:
//   prv(R) in [prv(L) + q, prv(L) + q + (R - L - m)]
//   prv(L) in [prv(R) - q, min(prv(R), prv(R) - q + (L - R + m))] after an L-update
//   prv(L+1) in [prv(L), prv(L) + 1] after reporting an occurrence.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/probe_counters.hpp"

namespace jpm {

template <class Index>
concept reports_firstfit_symbol = requires(const Index& ix, std::span<const count_t> p, probe_counters& c,
                                           std::size_t& at) {
    { ix.firstfit(p, c, at) } -> std::same_as<pos_t>;
};

template <class Index>
concept jump_index = requires(const Index& ix, std::span<const count_t> p, std::span<count_t> out,
                              pos_t j, const prv_hint& hint, probe_counters& c) {
    { ix.size() } -> std::convertible_to<pos_t>;
    { ix.sigma() } -> std::convertible_to<std::size_t>;
    { ix.firstfit(p, c) } -> std::same_as<pos_t>;
    ix.prv(j, hint, out, c);
};

struct jump_step {
    pos_t left = 0;
    pos_t right = 0;
    bool found = false;
    bool operator==(const jump_step&) const = default;
};

struct jump_trace {
    // Main-loop iterations (J).
    std::uint64_t iterations = 0;
    probe_counters probes;
    // R - L after R-updates that did not produce a match.
    std::uint64_t gap_sum = 0;
    std::uint64_t gap_count = 0;
    std::uint64_t gap_min = 0;
    // Recorded only with jump_options::record_trace.
    // (L, R) after every R-update: the pairs that carry computational cost.
    std::vector<std::pair<pos_t, pos_t>> cost_pairs;
    // Every R-update, plus every L-update that found an occurrence.
    std::vector<jump_step> steps;

    double mean_gap() const {
        return gap_count ? static_cast<double>(gap_sum) / static_cast<double>(gap_count) : 0.0;
    }
};

struct jump_options {
    bool record_trace = false;
    // Verify prv(R) - prv(L) >= q after R-updates, <= q after L-updates and
    // L <= R on every iteration, using unhinted prv; throws std::logic_error.
    bool checked = false;
    bool stop_at_first = false;
};

struct jump_result {
    std::vector<pos_t> starts;
    jump_trace trace;
};

template <jump_index Index>
class jump_engine {
  public:
    explicit jump_engine(const Index& index)
        : index_(&index), sigma_(index.sigma()), prv_l_(sigma_), prv_r_(sigma_),
          target_(sigma_), lo_(sigma_), hi_(sigma_), check_l_(sigma_), check_r_(sigma_) {}

    jump_result search(const parikh_vector& q, const jump_options& opts = {}) {
        jump_result result;
        search_into(q, opts, result);
        return result;
    }

    // Reuses result's storage.
    void search_into(const parikh_vector& q, const jump_options& opts, jump_result& result) {
        validate_query(q, sigma_);
        result.starts.clear();
        result.trace = jump_trace{};
        jump_trace& tr = result.trace;
        const Index& ix = *index_;
        const pos_t n = ix.size();
        const count_t m = q.length();
        if (m > n) {
            return;
        }
        auto qc = q.counts();

        std::fill(prv_l_.begin(), prv_l_.end(), 0);
        bool prv_l_pending = false;
        pos_t left = 0;

        auto report = [&](pos_t l, pos_t r) {
            result.starts.push_back(l + 1);
            if (opts.record_trace) {
                tr.steps.push_back({l, r, true});
            }
        };
        // After reporting at L+1 with prv(L) in base: bracket prv(L+1).
        auto advance_after_match = [&](std::span<const count_t> base) {
            for (std::size_t k = 0; k < sigma_; ++k) {
                lo_[k] = base[k];
                hi_[k] = base[k] + 1;
            }
            prv_l_pending = true;
            ++left;
        };

        while (left <= n - m) {
            ++tr.iterations;
            if (prv_l_pending) {
                ix.prv(left, {lo_, hi_}, prv_l_, tr.probes);
                prv_l_pending = false;
                if (opts.checked) {
                    check_hinted(left, prv_l_);
                }
            }
            for (std::size_t k = 0; k < sigma_; ++k) {
                target_[k] = prv_l_[k] + qc[k];
            }
            std::size_t at = sigma_;
            pos_t right = firstfit(ix, target_, tr.probes, at);
            if (right == infeasible) {
                break;
            }
            if (opts.record_trace) {
                tr.cost_pairs.emplace_back(left, right);
            }
            if (opts.checked) {
                check_after_right_update(left, right, qc);
            }

            if (right - left == m) {
                report(left, right);
                advance_after_match(prv_l_);
                if (opts.checked) {
                    check_after_left_update(left, right, qc);
                }
                if (opts.stop_at_first) {
                    break;
                }
                continue;
            }

            if (opts.record_trace) {
                tr.steps.push_back({left, right, false});
            }
            pos_t gap = right - left;
            tr.gap_min = tr.gap_count ? std::min<pos_t>(tr.gap_min, gap) : gap;
            tr.gap_sum += gap;
            ++tr.gap_count;

            const count_t excess = right - left - m;
            for (std::size_t k = 0; k < sigma_; ++k) {
                lo_[k] = target_[k];
                hi_[k] = target_[k] + excess;
            }
            if (at < sigma_) {
                hi_[at] = lo_[at];
            }
            ix.prv(right, {lo_, hi_}, prv_r_, tr.probes);
            if (opts.checked) {
                check_hinted(right, prv_r_);
            }

            // target_ becomes prv(R) - q.
            for (std::size_t k = 0; k < sigma_; ++k) {
                target_[k] = prv_r_[k] - qc[k];
            }
            at = sigma_;
            left = firstfit(ix, target_, tr.probes, at);
            if (opts.checked) {
                check_after_left_update(left, right, qc);
            }

            if (right - left == m) {
                report(left, right);
                // prv(L) == prv(R) - q exactly here.
                advance_after_match(target_);
                if (opts.checked) {
                    check_after_left_update(left, right, qc);
                }
                if (opts.stop_at_first) {
                    break;
                }
            } else {
                const count_t slack = left - (right - m);
                for (std::size_t k = 0; k < sigma_; ++k) {
                    lo_[k] = target_[k];
                    hi_[k] = std::min(prv_r_[k], target_[k] + slack);
                }
                if (at < sigma_) {
                    hi_[at] = lo_[at];
                }
                prv_l_pending = true;
            }
        }
    }

  private:
    static pos_t firstfit(const Index& ix, std::span<const count_t> p, probe_counters& c, std::size_t& at) {
        if constexpr (reports_firstfit_symbol<Index>) {
            return ix.firstfit(p, c, at);
        } else {
            return ix.firstfit(p, c);
        }
    }

    void exact_prv(pos_t j, std::vector<count_t>& out) {
        probe_counters scratch;
        index_->prv(j, prv_hint{}, out, scratch);
    }

    void check_hinted(pos_t j, const std::vector<count_t>& hinted) {
        exact_prv(j, check_l_);
        if (check_l_ != hinted) {
            throw std::logic_error("bracketed prv disagrees with unbracketed prv");
        }
    }

    void check_after_right_update(pos_t left, pos_t right, std::span<const count_t> q) {
        if (left > right) {
            throw std::logic_error("jump invariant violated: L > R after R-update");
        }
        exact_prv(left, check_l_);
        exact_prv(right, check_r_);
        for (std::size_t k = 0; k < sigma_; ++k) {
            if (check_r_[k] - check_l_[k] < q[k]) {
                throw std::logic_error("jump invariant violated: prv(R) - prv(L) >= q after R-update");
            }
        }
    }

    void check_after_left_update(pos_t left, pos_t right, std::span<const count_t> q) {
        if (left > right) {
            throw std::logic_error("jump invariant violated: L > R after L-update");
        }
        exact_prv(left, check_l_);
        exact_prv(right, check_r_);
        for (std::size_t k = 0; k < sigma_; ++k) {
            if (check_r_[k] - check_l_[k] > q[k]) {
                throw std::logic_error("jump invariant violated: prv(R) - prv(L) <= q after L-update");
            }
        }
    }

    const Index* index_;
    std::size_t sigma_;
    std::vector<count_t> prv_l_;
    std::vector<count_t> prv_r_;
    std::vector<count_t> target_;
    std::vector<count_t> lo_;
    std::vector<count_t> hi_;
    std::vector<count_t> check_l_;
    std::vector<count_t> check_r_;
};

template <jump_index Index>
jump_result jump_search(const Index& index, const parikh_vector& q, const jump_options& opts = {}) {
    return jump_engine<Index>(index).search(q, opts);
}

// Stops at the first occurrence.
template <jump_index Index>
bool decide_jump(const Index& index, const parikh_vector& q, jump_trace* trace = nullptr) {
    jump_options opts;
    opts.stop_at_first = true;
    jump_result r = jump_engine<Index>(index).search(q, opts);
    if (trace) {
        *trace = std::move(r.trace);
    }
    return !r.starts.empty();
}

}  // namespace jpm
