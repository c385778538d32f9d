#pragma once

// Decision index for binary texts. For every window length m it keeps the
// minimum and maximum number of first-alphabet symbols over all length-m
// windows; since sliding a window changes that count by at most one, every
// count in [pmin(m), pmax(m)] is attained, so a query (x, y) occurs iff
// pmin(x+y) <= x <= pmax(x+y).
//
// Eager mode fills all n entries up front (n sweeps of n steps each). Lazy
// mode keeps the text and fills entry m on the first query of length m; the
// sweep that fills it also reports the live query's occurrences.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jpm/binary_io.hpp"
#include "jpm/core.hpp"

namespace jpm {

class interval_index {
  public:
    struct entry {
        count_t pmin = 0;
        count_t pmax = 0;
        bool operator==(const entry&) const = default;
    };

    struct fill_result {
        entry bounds;
        // True if this call performed the sweep; only then are starts reported.
        bool swept = false;
        std::vector<pos_t> starts;
    };

    static interval_index build_eager(const encoded_text& text) {
        interval_index idx(text);
        for (pos_t m = 1; m <= idx.n_; ++m) {
            idx.fill(m);
        }
        idx.bits_.clear();
        idx.bits_.shrink_to_fit();
        idx.has_text_ = false;
        return idx;
    }

    static interval_index build_lazy(const encoded_text& text) { return interval_index(text); }

    interval_index(interval_index&&) noexcept = default;
    interval_index& operator=(interval_index&&) noexcept = default;

    pos_t size() const { return n_; }
    bool has_text() const { return has_text_; }

    bool filled(pos_t m) const {
        check_length(m);
        return state_[m].load(std::memory_order_acquire);
    }

    std::size_t filled_count() const {
        std::size_t c = 0;
        for (pos_t m = 1; m <= n_; ++m) {
            c += state_[m].load(std::memory_order_acquire);
        }
        return c;
    }

    // Bounds for length m if already filled.
    std::optional<entry> lookup(pos_t m) const {
        if (!filled(m)) {
            return std::nullopt;
        }
        return table_[m];
    }

    // Entries for m = 1..n; unfilled ones are empty.
    std::vector<std::optional<entry>> snapshot() const {
        std::vector<std::optional<entry>> out;
        out.reserve(n_);
        for (pos_t m = 1; m <= n_; ++m) {
            out.push_back(lookup(m));
        }
        return out;
    }

    // Bounds for length m, sweeping the text if the entry is missing.
    entry fill(pos_t m) const { return fill_impl(m, nullptr, 0).bounds; }

    // Fills the entry for |q| if needed; when this call sweeps, it also
    // reports the start positions of q met during the sweep.
    fill_result fill_and_report(const parikh_vector& q) const {
        check_query(q);
        return fill_impl(q.length(), &q, q[0]);
    }

    bool decide(const parikh_vector& q) const {
        check_query(q);
        count_t m = q.length();
        if (m > n_) {
            return false;
        }
        entry e = fill(m);
        return e.pmin <= q[0] && q[0] <= e.pmax;
    }

    // Number of sweeps performed and character steps taken by them.
    std::uint64_t sweeps() const { return sweeps_->load(); }
    std::uint64_t steps() const { return steps_->load(); }

    // Layout: n, has_text, [packed text bits], then per m: filled, pmin, pmax.
    void save(std::ostream& out) const {
        bin::write<std::uint64_t>(out, n_);
        bin::write<std::uint8_t>(out, has_text_ ? 1 : 0);
        if (has_text_) {
            std::vector<std::uint64_t> words((n_ + 63) / 64, 0);
            for (pos_t i = 0; i < n_; ++i) {
                if (bits_[i]) {
                    words[i / 64] |= std::uint64_t{1} << (i % 64);
                }
            }
            for (auto w : words) {
                bin::write<std::uint64_t>(out, w);
            }
        }
        for (pos_t m = 1; m <= n_; ++m) {
            bool f = state_[m].load(std::memory_order_acquire);
            bin::write<std::uint8_t>(out, f ? 1 : 0);
            bin::write<std::uint64_t>(out, f ? table_[m].pmin : 0);
            bin::write<std::uint64_t>(out, f ? table_[m].pmax : 0);
        }
    }

    static interval_index load(std::istream& in) {
        interval_index idx;
        idx.n_ = bin::read<std::uint64_t>(in);
        if (idx.n_ > (std::uint64_t{1} << 40)) {
            throw format_error("interval index: length out of range");
        }
        idx.has_text_ = bin::read<std::uint8_t>(in) != 0;
        idx.allocate();
        if (idx.has_text_) {
            idx.bits_.resize(idx.n_);
            for (pos_t w = 0; w < (idx.n_ + 63) / 64; ++w) {
                auto word = bin::read<std::uint64_t>(in);
                for (pos_t b = 0; b < 64 && w * 64 + b < idx.n_; ++b) {
                    idx.bits_[w * 64 + b] = (word >> b) & 1u;
                }
            }
        }
        for (pos_t m = 1; m <= idx.n_; ++m) {
            bool f = bin::read<std::uint8_t>(in) != 0;
            entry e{bin::read<std::uint64_t>(in), bin::read<std::uint64_t>(in)};
            if (f) {
                if (e.pmin > e.pmax || e.pmax > m) {
                    throw format_error("interval index: entry violates pmin <= pmax <= m");
                }
                idx.table_[m] = e;
                idx.state_[m].store(true, std::memory_order_release);
            } else if (!idx.has_text_) {
                throw format_error("interval index: unfilled entry without text");
            }
        }
        return idx;
    }

    // One "m,pmin,pmax" row per filled entry.
    void write_csv(std::ostream& out) const {
        out << "m,pmin,pmax\n";
        for (pos_t m = 1; m <= n_; ++m) {
            if (auto e = lookup(m)) {
                out << m << ',' << e->pmin << ',' << e->pmax << '\n';
            }
        }
    }

  private:
    interval_index() = default;

    explicit interval_index(const encoded_text& text) : n_(text.size()), has_text_(true) {
        if (text.alphabet_size() != 2) {
            throw std::invalid_argument("interval index requires binary alphabet");
        }
        allocate();
        bits_.resize(n_);
        auto codes = text.codes();
        for (pos_t i = 0; i < n_; ++i) {
            bits_[i] = codes[i] == 0 ? 1 : 0;
        }
    }

    void allocate() {
        table_.assign(n_ + 1, entry{});
        state_ = std::make_unique<std::atomic<bool>[]>(n_ + 1);
        for (pos_t m = 0; m <= n_; ++m) {
            state_[m].store(false, std::memory_order_relaxed);
        }
        mutex_ = std::make_unique<std::mutex>();
        sweeps_ = std::make_unique<std::atomic<std::uint64_t>>(0);
        steps_ = std::make_unique<std::atomic<std::uint64_t>>(0);
    }

    void check_length(pos_t m) const {
        if (m == 0 || m > n_) {
            throw std::out_of_range("window length out of range");
        }
    }

    void check_query(const parikh_vector& q) const {
        if (q.size() != 2) {
            throw std::invalid_argument("interval index queries must have dimension 2");
        }
        if (q.is_zero()) {
            throw std::invalid_argument("empty query");
        }
    }

    fill_result fill_impl(pos_t m, const parikh_vector* live, count_t target) const {
        if (live && m > n_) {
            return {};
        }
        check_length(m);
        fill_result result;
        if (state_[m].load(std::memory_order_acquire)) {
            result.bounds = table_[m];
            return result;
        }
        std::lock_guard lock(*mutex_);
        if (state_[m].load(std::memory_order_acquire)) {
            result.bounds = table_[m];
            return result;
        }
        // Initial window reads m characters, each later shift one more: n steps.
        count_t count = 0;
        for (pos_t i = 0; i < m; ++i) {
            count += bits_[i];
        }
        entry e{count, count};
        if (live && count == target) {
            result.starts.push_back(1);
        }
        for (pos_t start = 2; start + m - 1 <= n_; ++start) {
            count = count + bits_[start + m - 2] - bits_[start - 2];
            e.pmin = std::min(e.pmin, count);
            e.pmax = std::max(e.pmax, count);
            if (live && count == target) {
                result.starts.push_back(start);
            }
        }
        table_[m] = e;
        state_[m].store(true, std::memory_order_release);
        sweeps_->fetch_add(1);
        steps_->fetch_add(n_);
        result.bounds = e;
        result.swept = true;
        return result;
    }

    pos_t n_ = 0;
    bool has_text_ = false;
    // 1 where the text holds the first alphabet symbol.
    std::vector<std::uint8_t> bits_;
    mutable std::vector<entry> table_;
    std::unique_ptr<std::atomic<bool>[]> state_;
    std::unique_ptr<std::mutex> mutex_;
    std::unique_ptr<std::atomic<std::uint64_t>> sweeps_;
    std::unique_ptr<std::atomic<std::uint64_t>> steps_;
};

}  // namespace jpm
