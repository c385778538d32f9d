#pragma once

// Balanced wavelet tree over a symbol-coded text. Each inner node splits
// its contiguous symbol range [lo, hi) into a left half of ceil(size/2)
// symbols and a right half, and stores one bit per routed text symbol
// (0 = left, 1 = right). Leaves are implicit. Nodes are kept in level order
// with the root at index 0.
//
// prv(j) descends the whole tree once, carrying rank values down; firstfit
// combines selects bottom-up. Both touch each inner node once.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "jpm/binary_io.hpp"
#include "jpm/bit_vector.hpp"
#include "jpm/core.hpp"
#include "jpm/probe_counters.hpp"

namespace jpm {

class wavelet_tree {
  public:
    static constexpr std::int32_t leaf = -1;

    struct node {
        std::uint32_t lo = 0;   // first symbol routed here
        std::uint32_t mid = 0;  // first symbol of the right half
        std::uint32_t hi = 0;   // one past the last symbol
        std::int32_t left = leaf;
        std::int32_t right = leaf;
        rank_select_bv bits;
    };

    wavelet_tree() = default;

    explicit wavelet_tree(const encoded_text& text) : wavelet_tree(text.codes(), text.alphabet_size()) {}

    wavelet_tree(std::span<const symbol_t> codes, std::size_t sigma)
        : n_(codes.size()), sigma_(sigma) {
        if (sigma == 0) {
            throw std::invalid_argument("wavelet tree needs a nonempty alphabet");
        }
        if (sigma < 2) {
            return;
        }
        struct pending {
            std::uint32_t lo, hi;
            std::vector<symbol_t> seq;
            std::int32_t parent;
            bool is_right;
        };
        std::deque<pending> queue;
        queue.push_back({0, static_cast<std::uint32_t>(sigma),
                         std::vector<symbol_t>(codes.begin(), codes.end()), leaf, false});
        while (!queue.empty()) {
            pending cur = std::move(queue.front());
            queue.pop_front();
            node u;
            u.lo = cur.lo;
            u.hi = cur.hi;
            u.mid = cur.lo + (cur.hi - cur.lo + 1) / 2;
            std::vector<bool> route(cur.seq.size());
            std::vector<symbol_t> left_seq;
            std::vector<symbol_t> right_seq;
            for (std::size_t i = 0; i < cur.seq.size(); ++i) {
                bool r = cur.seq[i] >= u.mid;
                route[i] = r;
                (r ? right_seq : left_seq).push_back(cur.seq[i]);
            }
            u.bits = rank_select_bv::from_bits(route);
            auto index = static_cast<std::int32_t>(nodes_.size());
            if (cur.parent != leaf) {
                (cur.is_right ? nodes_[cur.parent].right : nodes_[cur.parent].left) = index;
            }
            nodes_.push_back(std::move(u));
            cur.seq = {};
            const node& added = nodes_.back();
            if (added.mid - added.lo >= 2) {
                queue.push_back({added.lo, added.mid, std::move(left_seq), index, false});
            }
            if (added.hi - added.mid >= 2) {
                queue.push_back({added.mid, added.hi, std::move(right_seq), index, true});
            }
        }
    }

    pos_t size() const { return n_; }
    std::size_t sigma() const { return sigma_; }
    std::span<const node> nodes() const { return nodes_; }

    // All sigma ranks at prefix length j in one top-down traversal.
    void prv(pos_t j, const prv_hint&, std::span<count_t> out, probe_counters& c) const {
        if (j > n_) {
            throw std::out_of_range("prefix length out of range");
        }
        assert(out.size() == sigma_);
        ++c.prv_calls;
        if (nodes_.empty()) {
            out[0] = j;
            return;
        }
        prv_descend(0, j, out, c);
    }

    parikh_vector prv(pos_t j) const {
        parikh_vector out(sigma_);
        probe_counters c;
        prv(j, {}, out.counts(), c);
        return out;
    }

    // max_k select_k(p_k), combined bottom-up:
    // x_u = max(select0(B_u, x_left), select1(B_u, x_right)).
    pos_t firstfit(std::span<const count_t> p, probe_counters& c) const {
        assert(p.size() == sigma_);
        ++c.firstfit_calls;
        if (nodes_.empty()) {
            return p[0] <= n_ ? p[0] : infeasible;
        }
        return firstfit_node(0, p, c, nullptr);
    }

    pos_t firstfit(const parikh_vector& p) const {
        check_dimension(p);
        probe_counters c;
        return firstfit(p.counts(), c);
    }

    // Like firstfit, also returning x_u for every inner node in level order.
    std::vector<pos_t> firstfit_node_values(const parikh_vector& p) const {
        check_dimension(p);
        std::vector<pos_t> values(nodes_.size(), 0);
        probe_counters c;
        if (!nodes_.empty()) {
            firstfit_node(0, p.counts(), c, &values);
        }
        return values;
    }

    // rank_k(i): occurrences of symbol k among positions 1..i.
    count_t rank(symbol_t k, pos_t i) const {
        if (k >= sigma_) {
            throw std::out_of_range("symbol out of range");
        }
        if (i > n_) {
            throw std::out_of_range("rank position out of range");
        }
        std::int32_t u = nodes_.empty() ? leaf : 0;
        while (u != leaf) {
            const node& nd = nodes_[u];
            bool right = k >= nd.mid;
            i = nd.bits.rank(right, i);
            u = right ? nd.right : nd.left;
        }
        return i;
    }

    // select_k(j): position of the j-th occurrence of symbol k.
    pos_t select(symbol_t k, count_t j) const {
        if (k >= sigma_) {
            throw std::out_of_range("symbol out of range");
        }
        if (nodes_.empty()) {
            return j <= n_ ? j : infeasible;
        }
        return select_from(0, k, j);
    }

    symbol_t access(pos_t i) const {
        if (i == 0 || i > n_) {
            throw std::out_of_range("text position out of range");
        }
        if (nodes_.empty()) {
            return 0;
        }
        std::int32_t u = 0;
        for (;;) {
            const node& nd = nodes_[u];
            bool right = nd.bits[i];
            i = nd.bits.rank(right, i);
            std::int32_t child = right ? nd.right : nd.left;
            if (child == leaf) {
                return static_cast<symbol_t>(right ? nd.mid : nd.lo);
            }
            u = child;
        }
    }

    // Layout: n, sigma, node count, then per node in level order
    // lo, mid, hi, left, right and the bit payload.
    void save(std::ostream& out) const {
        bin::write<std::uint64_t>(out, n_);
        bin::write<std::uint64_t>(out, sigma_);
        bin::write<std::uint64_t>(out, nodes_.size());
        for (const node& u : nodes_) {
            bin::write<std::uint32_t>(out, u.lo);
            bin::write<std::uint32_t>(out, u.mid);
            bin::write<std::uint32_t>(out, u.hi);
            bin::write<std::uint32_t>(out, static_cast<std::uint32_t>(u.left));
            bin::write<std::uint32_t>(out, static_cast<std::uint32_t>(u.right));
            u.bits.save(out);
        }
    }

    static wavelet_tree load(std::istream& in) {
        wavelet_tree wt;
        wt.n_ = bin::read<std::uint64_t>(in);
        wt.sigma_ = bin::read<std::uint64_t>(in);
        auto count = bin::read<std::uint64_t>(in);
        if (wt.sigma_ == 0 || wt.sigma_ > 256 || count != wt.sigma_ - 1) {
            throw format_error("wavelet tree: inconsistent alphabet size or node count");
        }
        wt.nodes_.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            node& u = wt.nodes_[i];
            u.lo = bin::read<std::uint32_t>(in);
            u.mid = bin::read<std::uint32_t>(in);
            u.hi = bin::read<std::uint32_t>(in);
            u.left = static_cast<std::int32_t>(bin::read<std::uint32_t>(in));
            u.right = static_cast<std::int32_t>(bin::read<std::uint32_t>(in));
            u.bits = rank_select_bv::load(in, wt.n_);
            auto valid_child = [&](std::int32_t ch) {
                return ch == leaf || (ch > static_cast<std::int32_t>(i) &&
                                      ch < static_cast<std::int32_t>(count));
            };
            if (!(u.lo < u.mid && u.mid < u.hi && u.hi <= wt.sigma_) || !valid_child(u.left) ||
                !valid_child(u.right) || (u.left == leaf) != (u.mid - u.lo == 1) ||
                (u.right == leaf) != (u.hi - u.mid == 1)) {
                throw format_error("wavelet tree: malformed node");
            }
        }
        if (count && wt.nodes_[0].bits.size() != wt.n_) {
            throw format_error("wavelet tree: root length does not match n");
        }
        for (const node& u : wt.nodes_) {
            if ((u.left != leaf && wt.nodes_[u.left].bits.size() != u.bits.count(false)) ||
                (u.right != leaf && wt.nodes_[u.right].bits.size() != u.bits.count(true))) {
                throw format_error("wavelet tree: child length does not match parent routing");
            }
        }
        return wt;
    }

    bool operator==(const wavelet_tree& o) const {
        if (n_ != o.n_ || sigma_ != o.sigma_ || nodes_.size() != o.nodes_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const node& a = nodes_[i];
            const node& b = o.nodes_[i];
            if (a.lo != b.lo || a.mid != b.mid || a.hi != b.hi || a.left != b.left ||
                a.right != b.right || !(a.bits == b.bits)) {
                return false;
            }
        }
        return true;
    }

  private:
    void check_dimension(const parikh_vector& p) const {
        if (p.size() != sigma_) {
            throw std::invalid_argument("Parikh vector dimension mismatch");
        }
    }

    void prv_descend(std::int32_t u, count_t t, std::span<count_t> out, probe_counters& c) const {
        const node& nd = nodes_[u];
        ++c.node_visits;
        count_t t0 = nd.bits.rank(false, t);
        count_t t1 = t - t0;
        if (nd.left == leaf) {
            out[nd.lo] = t0;
        } else {
            prv_descend(nd.left, t0, out, c);
        }
        if (nd.right == leaf) {
            out[nd.mid] = t1;
        } else {
            prv_descend(nd.right, t1, out, c);
        }
    }

    pos_t firstfit_node(std::int32_t u, std::span<const count_t> p, probe_counters& c,
                        std::vector<pos_t>* values) const {
        const node& nd = nodes_[u];
        pos_t x_left = nd.left == leaf ? p[nd.lo] : firstfit_node(nd.left, p, c, values);
        pos_t x_right = nd.right == leaf ? p[nd.mid] : firstfit_node(nd.right, p, c, values);
        ++c.node_visits;
        pos_t x = infeasible;
        if (x_left != infeasible && x_right != infeasible) {
            x = std::max(nd.bits.select(false, x_left), nd.bits.select(true, x_right));
        }
        if (values) {
            (*values)[u] = x;
        }
        return x;
    }

    pos_t select_from(std::int32_t u, symbol_t k, count_t j) const {
        const node& nd = nodes_[u];
        bool right = k >= nd.mid;
        std::int32_t child = right ? nd.right : nd.left;
        count_t below = child == leaf ? j : select_from(child, k, j);
        if (below == infeasible) {
            return infeasible;
        }
        return nd.bits.select(right, below);
    }

    pos_t n_ = 0;
    std::size_t sigma_ = 1;
    std::vector<node> nodes_;
};

}  // namespace jpm
