#pragma once

// Static bit vector with constant-time rank and fast select.
//
// Rank directory: one absolute count per 512-bit superblock and one 16-bit
// count per 64-bit word relative to its superblock. Select samples record,
// for every 4096th occurrence of each bit value, the superblock holding it;
// a query binary-searches superblocks between two samples, then the words
// of one superblock, then scans a single word.
//
// Positions are 1-based: rank(b, i) counts b-bits among positions 1..i and
// select(b, j) is the position of the j-th b-bit, with select(b, 0) == 0.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jpm/binary_io.hpp"
#include "jpm/core.hpp"

namespace jpm {

class rank_select_bv {
  public:
    static constexpr std::uint64_t word_bits = 64;
    static constexpr std::uint64_t words_per_super = 8;
    static constexpr std::uint64_t super_bits = word_bits * words_per_super;
    static constexpr std::uint64_t sample_rate = 4096;

    rank_select_bv() { build_directory(); }

    rank_select_bv(std::vector<std::uint64_t> words, std::uint64_t size)
        : size_(size), words_(std::move(words)) {
        if (words_.size() != (size_ + word_bits - 1) / word_bits) {
            throw std::invalid_argument("bit vector word count does not match size");
        }
        if (size_ % word_bits && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << (size_ % word_bits)) - 1;
        }
        build_directory();
    }

    template <class Range>
    static rank_select_bv from_bits(const Range& bits) {
        std::vector<std::uint64_t> words;
        std::uint64_t n = 0;
        for (bool b : bits) {
            if (n % word_bits == 0) {
                words.push_back(0);
            }
            if (b) {
                words.back() |= std::uint64_t{1} << (n % word_bits);
            }
            ++n;
        }
        return rank_select_bv(std::move(words), n);
    }

    static rank_select_bv from_string(std::string_view bits) {
        std::vector<bool> v;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') {
                throw std::invalid_argument("bit string may only contain '0' and '1'");
            }
            v.push_back(ch == '1');
        }
        return from_bits(v);
    }

    std::uint64_t size() const { return size_; }
    std::uint64_t ones() const { return ones_; }
    std::uint64_t count(bool b) const { return b ? ones_ : size_ - ones_; }

    // Bit at 1-based position i.
    bool operator[](std::uint64_t i) const {
        if (i == 0 || i > size_) {
            throw std::out_of_range("bit position out of range");
        }
        --i;
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }

    std::uint64_t rank1(std::uint64_t i) const {
        if (i > size_) {
            throw std::out_of_range("rank position out of range");
        }
        return rank1_unchecked(i);
    }

    std::uint64_t rank(bool b, std::uint64_t i) const {
        std::uint64_t r1 = rank1(i);
        return b ? r1 : i - r1;
    }

    pos_t select(bool b, std::uint64_t j) const {
        if (j == 0) {
            return 0;
        }
        if (j > count(b)) {
            return infeasible;
        }
        // Superblock range from the samples.
        const auto& samples = b ? samples1_ : samples0_;
        std::uint64_t t = (j - 1) / sample_rate;
        std::uint64_t lo = samples[t];
        std::uint64_t hi = t + 1 < samples.size() ? samples[t + 1] : last_super();
        // Last superblock whose preceding b-count is < j.
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (super_rank(b, mid) < j) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        std::uint64_t remaining = j - super_rank(b, lo);
        std::uint64_t w = lo * words_per_super;
        std::uint64_t w_end = std::min<std::uint64_t>(w + words_per_super, words_.size());
        // Last word in the superblock whose relative b-count is < remaining.
        std::uint64_t wlo = w;
        std::uint64_t whi = w_end - 1;
        while (wlo < whi) {
            std::uint64_t mid = wlo + (whi - wlo + 1) / 2;
            if (block_rank(b, mid) < remaining) {
                wlo = mid;
            } else {
                whi = mid - 1;
            }
        }
        remaining -= block_rank(b, wlo);
        std::uint64_t word = b ? words_[wlo] : ~words_[wlo];
        for (std::uint64_t r = 1; r < remaining; ++r) {
            word &= word - 1;
        }
        return wlo * word_bits + static_cast<std::uint64_t>(std::countr_zero(word)) + 1;
    }

    // Bits held by the rank/select directory, excluding the payload.
    std::uint64_t overhead_bits() const {
        return supers_.size() * 64 + blocks_.size() * 16 +
               (samples0_.size() + samples1_.size()) * 64;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::uint64_t i = 0; i < size_; ++i) {
            if ((words_[i / word_bits] >> (i % word_bits)) & 1u) {
                s[i] = '1';
            }
        }
        return s;
    }

    void save(std::ostream& out) const {
        bin::write<std::uint64_t>(out, size_);
        for (std::uint64_t w = 0; w < real_words(); ++w) {
            bin::write<std::uint64_t>(out, words_[w]);
        }
    }

    static rank_select_bv load(std::istream& in, std::uint64_t max_bits) {
        auto size = bin::read<std::uint64_t>(in);
        if (size > max_bits) {
            throw format_error("bit vector length out of range");
        }
        std::vector<std::uint64_t> words((size + word_bits - 1) / word_bits);
        for (auto& w : words) {
            w = bin::read<std::uint64_t>(in);
        }
        return rank_select_bv(std::move(words), size);
    }

    bool operator==(const rank_select_bv& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }

  private:
    std::uint64_t rank1_unchecked(std::uint64_t i) const {
        std::uint64_t w = i / word_bits;
        std::uint64_t r = supers_[w / words_per_super] + blocks_[w];
        if (i % word_bits) {
            r += static_cast<std::uint64_t>(
                std::popcount(words_[w] & ((std::uint64_t{1} << (i % word_bits)) - 1)));
        }
        return r;
    }

    std::uint64_t super_rank(bool b, std::uint64_t s) const {
        return b ? supers_[s] : s * super_bits - supers_[s];
    }

    std::uint64_t block_rank(bool b, std::uint64_t w) const {
        return b ? blocks_[w] : (w % words_per_super) * word_bits - blocks_[w];
    }

    std::uint64_t real_words() const { return (size_ + word_bits - 1) / word_bits; }

    void build_directory() {
        // Trailing zero word so rank at position size_ never reads past the end.
        words_.resize(real_words() + 1, 0);
        supers_.assign(words_.size() / words_per_super + 2, 0);
        blocks_.assign(words_.size(), 0);
        std::uint64_t total = 0;
        std::uint64_t in_super = 0;
        for (std::uint64_t w = 0; w < words_.size(); ++w) {
            if (w % words_per_super == 0) {
                supers_[w / words_per_super] = total;
                in_super = 0;
            }
            blocks_[w] = static_cast<std::uint16_t>(in_super);
            auto pc = static_cast<std::uint64_t>(std::popcount(words_[w]));
            total += pc;
            in_super += pc;
        }
        for (std::uint64_t s = (words_.size() - 1) / words_per_super + 1; s < supers_.size(); ++s) {
            supers_[s] = total;
        }
        ones_ = total;

        samples0_.clear();
        samples1_.clear();
        std::uint64_t seen0 = 0;
        std::uint64_t seen1 = 0;
        for (std::uint64_t s = 0; s < last_super() + 1 && size_ > 0; ++s) {
            std::uint64_t bits_here = std::min(super_bits, size_ - s * super_bits);
            std::uint64_t ones_here = supers_[s + 1] - supers_[s];
            std::uint64_t zeros_here = bits_here - ones_here;
            while (seen1 + ones_here > samples1_.size() * sample_rate) {
                samples1_.push_back(s);
            }
            while (seen0 + zeros_here > samples0_.size() * sample_rate) {
                samples0_.push_back(s);
            }
            seen1 += ones_here;
            seen0 += zeros_here;
        }
    }

    // Index of the superblock holding position size_ (size_ > 0).
    std::uint64_t last_super() const { return size_ == 0 ? 0 : (size_ - 1) / super_bits; }

    std::uint64_t size_ = 0;
    std::uint64_t ones_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> supers_;
    std::vector<std::uint16_t> blocks_;
    std::vector<std::uint64_t> samples0_;
    std::vector<std::uint64_t> samples1_;
};

}  // namespace jpm
