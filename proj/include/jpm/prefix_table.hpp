#pragma once

// Inverted prefix table: for each symbol k, the sorted positions of its
// occurrences. Row k entry j (1-based) is the position of the j-th
// occurrence of symbol k; entry 0 is the virtual position 0. The table
// replaces the text entirely.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jpm/binary_io.hpp"
#include "jpm/core.hpp"
#include "jpm/probe_counters.hpp"

namespace jpm {

class prefix_table {
  public:
    prefix_table() = default;

    // One left-to-right pass; stores exactly n positions in one block.
    explicit prefix_table(const encoded_text& text)
        : n_(text.size()), totals_(text.alphabet_size(), 0),
          offsets_(text.alphabet_size() + 1, 0), positions_(text.size()) {
        auto codes = text.codes();
        for (symbol_t c : codes) {
            ++totals_[c];
        }
        for (std::size_t k = 0; k < sigma(); ++k) {
            offsets_[k + 1] = offsets_[k] + totals_[k];
        }
        std::vector<count_t> seen(sigma(), 0);
        for (pos_t i = 1; i <= n_; ++i) {
            symbol_t c = codes[i - 1];
            positions_[offsets_[c] + seen[c]++] = i;
        }
    }

    pos_t size() const { return n_; }
    std::size_t sigma() const { return totals_.size(); }
    count_t total(std::size_t k) const { return totals_.at(k); }
    std::span<const count_t> totals() const { return totals_; }

    // Row k without the leading virtual 0.
    std::span<const pos_t> row(std::size_t k) const {
        return std::span<const pos_t>(positions_).subspan(offsets_.at(k), totals_[k]);
    }

    // I[k][j]; j == 0 gives 0, j > total(k) gives infeasible.
    pos_t entry(std::size_t k, count_t j) const {
        if (j == 0) {
            return 0;
        }
        if (j > totals_[k]) {
            return infeasible;
        }
        return positions_[offsets_[k] + j - 1];
    }

    // Smallest j with prv(j) >= p, i.e. max_k I[k][p_k]. `at` receives the
    // symbol found at that position (unchanged when the result is 0 or
    // infeasible).
    pos_t firstfit(std::span<const count_t> p, probe_counters& c, std::size_t& at) const {
        assert(p.size() == sigma());
        ++c.firstfit_calls;
        pos_t best = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] > totals_[k]) {
                return infeasible;
            }
            if (p[k] > 0) {
                ++c.row_reads;
                pos_t e = positions_[offsets_[k] + p[k] - 1];
                if (e > best) {
                    best = e;
                    at = k;
                }
            }
        }
        return best;
    }

    pos_t firstfit(std::span<const count_t> p, probe_counters& c) const {
        std::size_t at = 0;
        return firstfit(p, c, at);
    }

    pos_t firstfit(const parikh_vector& p) const {
        check_dimension(p);
        probe_counters c;
        return firstfit(p.counts(), c);
    }

    // prv(j)_k = max{ i : I[k][i] <= j }, found by binary search inside the
    // hinted bracket. The hint must contain the true value. The component
    // with the widest bracket is not searched: it is j minus the others.
    void prv(pos_t j, const prv_hint& hint, std::span<count_t> out, probe_counters& c) const {
        if (j > n_) {
            throw std::out_of_range("prefix length out of range");
        }
        assert(out.size() == sigma());
        ++c.prv_calls;
        auto bracket = [&](std::size_t k) -> std::pair<count_t, count_t> {
            if (hint.empty()) {
                return {0, totals_[k]};
            }
            return {std::min(hint.lo[k], totals_[k]), std::min(hint.hi[k], totals_[k])};
        };
        std::size_t widest = 0;
        for (std::size_t k = 1; k < sigma(); ++k) {
            auto [lo, hi] = bracket(k);
            auto [wlo, whi] = bracket(widest);
            if (hi - lo > whi - wlo) {
                widest = k;
            }
        }
        count_t rest = 0;
        for (std::size_t k = 0; k < sigma(); ++k) {
            if (k == widest) {
                continue;
            }
            auto [lo, hi] = bracket(k);
            assert(lo <= hi);
            assert(entry(k, lo) <= j);
            assert(hi == totals_[k] || entry(k, hi + 1) > j);
            const pos_t* base = positions_.data() + offsets_[k];
            // Uniform binary search: exactly ceil(log2(w + 1)) probes for a
            // bracket of width w. The first probe leaves a window of h values.
            if (count_t w = hi - lo; w > 0) {
                count_t h = std::bit_floor(w);
                count_t first = hi - h + 1;
                ++c.search_probes;
                if (base[first - 1] <= j) {
                    lo = first;
                }
                for (count_t step = h / 2; step > 0; step /= 2) {
                    ++c.search_probes;
                    if (base[lo + step - 1] <= j) {
                        lo += step;
                    }
                }
            }
            out[k] = lo;
            rest += lo;
        }
        out[widest] = j - rest;
    }

    parikh_vector prv(pos_t j) const {
        parikh_vector out(sigma());
        probe_counters c;
        prv(j, {}, out.counts(), c);
        return out;
    }

    // Symbol at 1-based position i, by binary search in every row.
    symbol_t char_at(pos_t i) const {
        if (i == 0 || i > n_) {
            throw std::out_of_range("text position out of range");
        }
        for (std::size_t k = 0; k < sigma(); ++k) {
            auto r = row(k);
            if (std::binary_search(r.begin(), r.end(), i)) {
                return static_cast<symbol_t>(k);
            }
        }
        throw std::logic_error("position missing from inverted table");
    }

    std::vector<symbol_t> reconstruct() const {
        std::vector<symbol_t> codes(n_);
        for (std::size_t k = 0; k < sigma(); ++k) {
            for (pos_t p : row(k)) {
                codes[p - 1] = static_cast<symbol_t>(k);
            }
        }
        return codes;
    }

    // Layout: n, sigma, per-symbol totals, then the n positions.
    void save(std::ostream& out) const {
        bin::write<std::uint64_t>(out, n_);
        bin::write<std::uint64_t>(out, sigma());
        for (count_t t : totals_) {
            bin::write<std::uint64_t>(out, t);
        }
        for (pos_t p : positions_) {
            bin::write<std::uint64_t>(out, p);
        }
    }

    static prefix_table load(std::istream& in) {
        prefix_table t;
        t.n_ = bin::read<std::uint64_t>(in);
        auto sigma = bin::read<std::uint64_t>(in);
        if (sigma == 0 || sigma > 256) {
            throw format_error("inverted table: alphabet size out of range");
        }
        t.totals_.resize(sigma);
        t.offsets_.assign(sigma + 1, 0);
        for (std::size_t k = 0; k < sigma; ++k) {
            t.totals_[k] = bin::read<std::uint64_t>(in);
            t.offsets_[k + 1] = t.offsets_[k] + t.totals_[k];
        }
        if (t.offsets_[sigma] != t.n_) {
            throw format_error("inverted table: symbol totals do not sum to n");
        }
        t.positions_.resize(t.n_);
        for (auto& p : t.positions_) {
            p = bin::read<std::uint64_t>(in);
        }
        std::vector<bool> hit(t.n_ + 1, false);
        for (std::size_t k = 0; k < sigma; ++k) {
            pos_t prev = 0;
            for (pos_t p : t.row(k)) {
                if (p <= prev || p > t.n_ || hit[p]) {
                    throw format_error("inverted table: rows are not a partition of 1..n");
                }
                hit[p] = true;
                prev = p;
            }
        }
        return t;
    }

    bool operator==(const prefix_table&) const = default;

  private:
    void check_dimension(const parikh_vector& p) const {
        if (p.size() != sigma()) {
            throw std::invalid_argument("Parikh vector dimension mismatch");
        }
    }

    pos_t n_ = 0;
    std::vector<count_t> totals_;
    std::vector<std::size_t> offsets_;
    std::vector<pos_t> positions_;
};

}  // namespace jpm
