#include <gtest/gtest.h>

#include <sstream>

#include "jpm/core.hpp"
#include "jpm/random.hpp"
#include "oracles.hpp"

using namespace jpm;

namespace {

parikh_vector pv(std::vector<count_t> v) { return parikh_vector(std::move(v)); }

std::vector<pos_t> starts_of(const std::vector<occurrence>& occ) {
    std::vector<pos_t> s;
    for (const auto& o : occ) s.push_back(o.start);
    return s;
}

}  // namespace

TEST(Alphabet, InferSortsDistinctSymbols) {
    EXPECT_EQ(alphabet::infer("cabcccaaabccbaacca").symbols(), "abc");
    EXPECT_EQ(alphabet::infer("aaaa").size(), 1u);
    EXPECT_EQ(alphabet::infer("bbacaccabaddabccaaac").symbols(), "abcd");
}

TEST(Alphabet, RejectsEmptyAndUnordered) {
    EXPECT_THROW(alphabet::infer(""), std::invalid_argument);
    EXPECT_THROW(alphabet(""), std::invalid_argument);
    EXPECT_THROW(alphabet("ba"), std::invalid_argument);
    EXPECT_THROW(alphabet("aa"), std::invalid_argument);
}

TEST(Alphabet, EncodeUnknownSymbolThrows) {
    alphabet a("ab");
    EXPECT_EQ(a.encode('b'), 1);
    EXPECT_FALSE(a.contains('c'));
    EXPECT_THROW(a.encode('c'), std::invalid_argument);
}

TEST(Alphabet, SyntheticRanges) {
    EXPECT_EQ(alphabet::synthetic(4).symbols(), "abcd");
    EXPECT_EQ(alphabet::synthetic(30).symbol(0), '!');
    EXPECT_EQ(alphabet::synthetic(256).size(), 256u);
    EXPECT_THROW(alphabet::synthetic(0), std::invalid_argument);
    EXPECT_THROW(alphabet::synthetic(257), std::invalid_argument);
}

TEST(EncodedText, DecodeEncodeRoundTrip) {
    std::string s = "cabcccaaabccbaacca";
    auto t = encoded_text::encode(s);
    EXPECT_EQ(t.decode(), s);
    EXPECT_EQ(t.size(), 18u);
    EXPECT_EQ(t.at(1), 2);
    EXPECT_THROW(t.at(0), std::out_of_range);
    EXPECT_THROW(t.at(19), std::out_of_range);
}

TEST(EncodedText, ExplicitAlphabetCoversMissingSymbols) {
    auto t = encoded_text::encode("aac", alphabet("abc"));
    EXPECT_EQ(t.alphabet_size(), 3u);
    EXPECT_EQ(parikh(t), pv({2, 0, 1}));
    EXPECT_THROW(encoded_text::encode("abd", alphabet("abc")), std::invalid_argument);
}

TEST(Parikh, WholeTextAndSegments) {
    auto t = encoded_text::encode("cabcccaaabccbaacca");
    EXPECT_EQ(parikh(t), pv({7, 3, 8}));
    EXPECT_EQ(parikh(t, 5, 10), pv({3, 1, 2}));
    EXPECT_EQ(parikh(t, 5, 4), pv({0, 0, 0}));
    EXPECT_THROW(parikh(t, 0, 3), std::out_of_range);
    EXPECT_THROW(parikh(t, 5, 19), std::out_of_range);
    EXPECT_THROW(parikh(t, 6, 4), std::out_of_range);
}

TEST(Parikh, Arithmetic) {
    EXPECT_EQ(pv({3, 1, 4}) - pv({3, 1, 2}), pv({0, 0, 2}));
    EXPECT_EQ(pv({3, 1, 4}) + pv({0, 0, 0}), pv({3, 1, 4}));
    EXPECT_TRUE(leq(pv({1, 2}), pv({2, 2})));
    EXPECT_FALSE(leq(pv({3, 0}), pv({2, 2})));
    EXPECT_THROW(pv({1, 2}) - pv({2, 0}), std::invalid_argument);
    EXPECT_THROW(pv({1, 2}) + pv({1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(leq(pv({1}), pv({1, 2})), std::invalid_argument);
    EXPECT_EQ(pv({3, 1, 2}).length(), 6u);
    std::ostringstream os;
    os << pv({3, 1, 2});
    EXPECT_EQ(os.str(), "(3,1,2)");
}

TEST(Parikh, PartialOrderAndInverseOnRandomTriples) {
    rng r(11);
    for (int i = 0; i < 20000; ++i) {
        std::size_t s = 1 + r.below(4);
        parikh_vector a(s), b(s), c(s);
        for (std::size_t k = 0; k < s; ++k) {
            a[k] = r.below(4);
            b[k] = r.below(4);
            c[k] = r.below(4);
        }
        EXPECT_TRUE(leq(a, a));
        if (leq(a, b) && leq(b, a)) EXPECT_EQ(a, b);
        if (leq(a, b) && leq(b, c)) EXPECT_TRUE(leq(a, c));
        EXPECT_EQ((a + b) - b, a);
        if (leq(b, a)) EXPECT_EQ((a - b) + b, a);
    }
}

TEST(ValidateQuery, RejectsZeroAndDimensionMismatch) {
    EXPECT_THROW(validate_query(pv({0, 0}), 2), std::invalid_argument);
    EXPECT_THROW(validate_query(pv({1, 0}), 3), std::invalid_argument);
    EXPECT_NO_THROW(validate_query(pv({1, 0}), 2));
}

TEST(WindowSearch, WorkedExample) {
    auto t = encoded_text::encode("cabcccaaabccbaacca");
    auto occ = window_search(t, pv({3, 1, 2}));
    EXPECT_EQ(starts_of(occ), (std::vector<pos_t>{5, 6, 7, 13}));
    for (const auto& o : occ) EXPECT_EQ(o.length(), 6u);
}

TEST(WindowSearch, WholeTextAndTooLong) {
    auto t = encoded_text::encode("cabcccaaabccbaacca");
    auto occ = window_search(t, parikh(t));
    ASSERT_EQ(occ.size(), 1u);
    EXPECT_EQ(occ[0], (occurrence{1, 18}));
    EXPECT_TRUE(window_search(t, pv({7, 3, 9})).empty());
    EXPECT_THROW(window_search(t, pv({0, 0, 0})), std::invalid_argument);
}

TEST(WindowSearch, StopAtFirstAndStats) {
    auto t = encoded_text::encode("cabcccaaabccbaacca");
    window_stats st;
    window_options o;
    o.stop_at_first = true;
    auto occ = window_search(t, pv({3, 1, 2}), o, &st);
    EXPECT_EQ(starts_of(occ), (std::vector<pos_t>{5}));
    window_stats full;
    window_search(t, pv({3, 1, 2}), {}, &full);
    EXPECT_EQ(full.shifts, 18u - 6u);
}

TEST(WindowSearch, MatchesBruteForceOnSmallTexts) {
    rng r(3);
    for (int it = 0; it < 400; ++it) {
        std::size_t sigma = 1 + r.below(4);
        pos_t n = 1 + r.below(50);
        std::vector<symbol_t> codes(n);
        for (auto& c : codes) c = static_cast<symbol_t>(r.below(sigma));
        encoded_text t(alphabet::synthetic(sigma), codes);
        for (count_t m = 1; m <= n; ++m) {
            // a present query and a random one per length
            pos_t st = 1 + r.below(n - m + 1);
            parikh_vector random_q(sigma);
            for (count_t k = 0; k < m; ++k) random_q[r.below(sigma)] += 1;
            for (const auto& q : {parikh(t, st, st + m - 1), random_q}) {
                if (q.is_zero()) continue;
                window_options o;
                o.verify_every = 1;
                EXPECT_EQ(starts_of(window_search(t, q, o)), oracle::starts(codes, q.counts()))
                    << oracle::letters(codes) << ' ' << q;
            }
        }
    }
}

TEST(WindowSearch, ExhaustiveSmallAlphabets) {
    for (std::size_t sigma = 1; sigma <= 3; ++sigma) {
        for (pos_t n = 1; n <= 7; ++n) {
            std::vector<symbol_t> s(n, 0);
            do {
                encoded_text t(alphabet::synthetic(sigma), s);
                for (count_t m = 1; m <= n; ++m) {
                    oracle::compositions(sigma, m, [&](const std::vector<count_t>& q) {
                        ASSERT_EQ(starts_of(window_search(t, parikh_vector(q))), oracle::starts(s, q));
                    });
                }
            } while (oracle::next_text(s, sigma));
        }
    }
}

TEST(Occurrences, FromStarts) {
    std::vector<pos_t> s{5, 13};
    auto occ = to_occurrences(s, 6);
    EXPECT_EQ(occ[1], (occurrence{13, 18}));
}
