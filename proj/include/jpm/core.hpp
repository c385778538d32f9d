#pragma once

// Alphabets, encoded texts, Parikh vectors and the sliding-window matcher.
//
// Positions are 1-based throughout the public API: a text of length n has
// positions 1..n, prv(j) is the Parikh vector of the prefix of length j
// (0 <= j <= n), and an occurrence (i, j) covers positions i..j inclusive.
// Symbol codes are 0-based ranks into the alphabet.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jpm {

using count_t = std::uint64_t;
using pos_t = std::uint64_t;
using symbol_t = std::uint8_t;

// Result of a firstfit/select that has no solution. Compares greater than
// every real position so max-combining propagates it.
inline constexpr pos_t infeasible = std::numeric_limits<pos_t>::max();

class alphabet {
  public:
    alphabet() = default;

    // Symbols must be strictly increasing (unsigned byte order).
    explicit alphabet(std::string_view symbols) : symbols_(symbols) {
        if (symbols_.empty()) {
            throw std::invalid_argument("empty alphabet");
        }
        for (std::size_t i = 1; i < symbols_.size(); ++i) {
            if (static_cast<unsigned char>(symbols_[i - 1]) >=
                static_cast<unsigned char>(symbols_[i])) {
                throw std::invalid_argument(
                    "alphabet symbols must be distinct and strictly increasing");
            }
        }
        rebuild_lookup();
    }

    static alphabet infer(std::string_view raw) {
        std::array<bool, 256> seen{};
        for (unsigned char ch : raw) {
            seen[ch] = true;
        }
        std::string symbols;
        for (int c = 0; c < 256; ++c) {
            if (seen[c]) {
                symbols.push_back(static_cast<char>(c));
            }
        }
        if (symbols.empty()) {
            throw std::invalid_argument("empty alphabet");
        }
        return alphabet(symbols);
    }

    // Alphabet of sigma consecutive symbols used for generated texts:
    // 'a'.. for sigma <= 26, printable ASCII from '!' for sigma <= 94,
    // raw bytes otherwise.
    static alphabet synthetic(std::size_t sigma) {
        if (sigma == 0 || sigma > 256) {
            throw std::invalid_argument("synthetic alphabet size must be in 1..256");
        }
        char first = sigma <= 26 ? 'a' : (sigma <= 94 ? '!' : '\0');
        std::string symbols(sigma, '\0');
        for (std::size_t i = 0; i < sigma; ++i) {
            symbols[i] = static_cast<char>(static_cast<unsigned char>(first) + i);
        }
        return alphabet(symbols);
    }

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbols() const { return symbols_; }

    char symbol(symbol_t code) const { return symbols_.at(code); }

    bool contains(char ch) const { return lookup_[static_cast<unsigned char>(ch)] >= 0; }

    symbol_t encode(char ch) const {
        int code = lookup_[static_cast<unsigned char>(ch)];
        if (code < 0) {
            throw std::invalid_argument(std::string("character '") + ch +
                                        "' is not in the alphabet");
        }
        return static_cast<symbol_t>(code);
    }

    bool operator==(const alphabet& other) const { return symbols_ == other.symbols_; }

  private:
    void rebuild_lookup() {
        lookup_.fill(-1);
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            lookup_[static_cast<unsigned char>(symbols_[i])] = static_cast<int>(i);
        }
    }

    std::string symbols_;
    std::array<int, 256> lookup_{};
};

class encoded_text {
  public:
    encoded_text() = default;

    encoded_text(alphabet sigma, std::vector<symbol_t> codes)
        : alphabet_(std::move(sigma)), codes_(std::move(codes)) {
        for (symbol_t c : codes_) {
            if (c >= alphabet_.size()) {
                throw std::invalid_argument("symbol code outside alphabet");
            }
        }
    }

    static encoded_text encode(std::string_view raw, const alphabet& sigma) {
        std::vector<symbol_t> codes(raw.size());
        std::transform(raw.begin(), raw.end(), codes.begin(),
                       [&](char ch) { return sigma.encode(ch); });
        return encoded_text(sigma, std::move(codes));
    }

    static encoded_text encode(std::string_view raw) {
        return encode(raw, alphabet::infer(raw));
    }

    const alphabet& sigma() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    pos_t size() const { return codes_.size(); }
    bool empty() const { return codes_.empty(); }

    // Symbol code at 1-based position i.
    symbol_t at(pos_t i) const {
        if (i == 0 || i > codes_.size()) {
            throw std::out_of_range("text position out of range");
        }
        return codes_[i - 1];
    }

    std::span<const symbol_t> codes() const { return codes_; }

    std::string decode() const {
        std::string out(codes_.size(), '\0');
        std::transform(codes_.begin(), codes_.end(), out.begin(),
                       [&](symbol_t c) { return alphabet_.symbol(c); });
        return out;
    }

    bool operator==(const encoded_text& other) const {
        return alphabet_ == other.alphabet_ && codes_ == other.codes_;
    }

  private:
    alphabet alphabet_;
    std::vector<symbol_t> codes_;
};

class parikh_vector {
  public:
    parikh_vector() = default;
    explicit parikh_vector(std::size_t sigma) : counts_(sigma, 0) {}
    parikh_vector(std::initializer_list<count_t> counts) : counts_(counts) {}
    explicit parikh_vector(std::vector<count_t> counts) : counts_(std::move(counts)) {}
    explicit parikh_vector(std::span<const count_t> counts)
        : counts_(counts.begin(), counts.end()) {}

    std::size_t size() const { return counts_.size(); }

    // |p|: the length of any string with this Parikh vector.
    count_t length() const { return std::accumulate(counts_.begin(), counts_.end(), count_t{0}); }

    bool is_zero() const {
        return std::all_of(counts_.begin(), counts_.end(), [](count_t c) { return c == 0; });
    }

    count_t operator[](std::size_t k) const { return counts_[k]; }
    count_t& operator[](std::size_t k) { return counts_[k]; }

    std::span<const count_t> counts() const { return counts_; }
    std::span<count_t> counts() { return counts_; }

    auto begin() const { return counts_.begin(); }
    auto end() const { return counts_.end(); }

    bool operator==(const parikh_vector&) const = default;

  private:
    std::vector<count_t> counts_;
};

inline std::ostream& operator<<(std::ostream& os, const parikh_vector& p) {
    os << '(';
    for (std::size_t k = 0; k < p.size(); ++k) {
        os << (k ? "," : "") << p[k];
    }
    return os << ')';
}

namespace detail {
inline void require_same_dimension(const parikh_vector& p, const parikh_vector& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("Parikh vector dimension mismatch");
    }
}
}  // namespace detail

// Componentwise p <= q.
inline bool leq(const parikh_vector& p, const parikh_vector& q) {
    detail::require_same_dimension(p, q);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > q[k]) {
            return false;
        }
    }
    return true;
}

inline parikh_vector operator+(const parikh_vector& p, const parikh_vector& q) {
    detail::require_same_dimension(p, q);
    parikh_vector out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k] = p[k] + q[k];
    }
    return out;
}

// Defined only for q <= p.
inline parikh_vector operator-(const parikh_vector& p, const parikh_vector& q) {
    detail::require_same_dimension(p, q);
    parikh_vector out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (q[k] > p[k]) {
            throw std::invalid_argument("Parikh vector difference has a negative component");
        }
        out[k] = p[k] - q[k];
    }
    return out;
}

struct occurrence {
    pos_t start = 0;  // 1-based, inclusive
    pos_t end = 0;    // 1-based, inclusive

    pos_t length() const { return end - start + 1; }
    bool operator==(const occurrence&) const = default;
};

inline std::vector<occurrence> to_occurrences(std::span<const pos_t> starts, count_t m) {
    std::vector<occurrence> out;
    out.reserve(starts.size());
    for (pos_t s : starts) {
        out.push_back({s, s + m - 1});
    }
    return out;
}

// Parikh vector of positions first..last (1-based, inclusive). last == first-1
// denotes the empty segment.
inline parikh_vector parikh(const encoded_text& text, pos_t first, pos_t last) {
    if (first == 0 || last + 1 < first || last > text.size()) {
        throw std::out_of_range("text segment out of range");
    }
    parikh_vector p(text.alphabet_size());
    auto codes = text.codes();
    for (pos_t i = first; i <= last; ++i) {
        ++p[codes[i - 1]];
    }
    return p;
}

inline parikh_vector parikh(const encoded_text& text) {
    parikh_vector p(text.alphabet_size());
    for (symbol_t c : text.codes()) {
        ++p[c];
    }
    return p;
}

// Rejects queries that cannot be searched against a text of dimension sigma.
inline void validate_query(const parikh_vector& q, std::size_t sigma) {
    if (q.size() != sigma) {
        throw std::invalid_argument("query dimension " + std::to_string(q.size()) +
                                    " does not match alphabet size " +
                                    std::to_string(sigma));
    }
    if (q.is_zero()) {
        throw std::invalid_argument("empty query");
    }
}

struct window_stats {
    std::uint64_t shifts = 0;
    std::uint64_t counter_updates = 0;
    std::uint64_t recounts = 0;
};

struct window_options {
    // When nonzero, recount the window from scratch every this many shifts
    // and throw std::logic_error if the maintained vector disagrees.
    std::uint64_t verify_every = 0;
    bool stop_at_first = false;
};

// Fixed-size window of length |q| slid across the text, maintaining the
// window's Parikh vector c and the number r of symbols with c_k != q_k.
inline std::vector<occurrence> window_search(const encoded_text& text, const parikh_vector& q,
                                             const window_options& opts = {},
                                             window_stats* stats = nullptr) {
    validate_query(q, text.alphabet_size());
    const count_t m = q.length();
    const pos_t n = text.size();
    std::vector<occurrence> out;
    if (m > n) {
        return out;
    }
    auto codes = text.codes();
    std::vector<count_t> c(q.size(), 0);
    for (pos_t i = 0; i < m; ++i) {
        ++c[codes[i]];
    }
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        mismatches += c[k] != q[k];
    }
    window_stats local;
    window_stats& st = stats ? *stats : local;

    auto bump = [&](symbol_t k, bool up) {
        bool was_equal = c[k] == q[k];
        c[k] = up ? c[k] + 1 : c[k] - 1;
        bool now_equal = c[k] == q[k];
        if (was_equal && !now_equal) {
            ++mismatches;
        } else if (!was_equal && now_equal) {
            --mismatches;
        }
        ++st.counter_updates;
    };

    // Window currently covers positions start..start+m-1.
    for (pos_t start = 1;; ++start) {
        if (mismatches == 0) {
            out.push_back({start, start + m - 1});
            if (opts.stop_at_first) {
                break;
            }
        }
        if (start + m - 1 == n) {
            break;
        }
        symbol_t leaving = codes[start - 1];
        symbol_t entering = codes[start + m - 1];
        if (leaving != entering) {
            bump(leaving, false);
            bump(entering, true);
        }
        ++st.shifts;
        if (opts.verify_every && st.shifts % opts.verify_every == 0) {
            ++st.recounts;
            parikh_vector fresh = parikh(text, start + 1, start + m);
            if (!std::equal(c.begin(), c.end(), fresh.begin())) {
                throw std::logic_error("window Parikh vector diverged from recount");
            }
        }
    }
    return out;
}

}  // namespace jpm
