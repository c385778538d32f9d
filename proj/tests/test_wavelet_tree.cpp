#include <gtest/gtest.h>

#include <sstream>

#include "jpm/prefix_table.hpp"
#include "jpm/random.hpp"
#include "jpm/wavelet_tree.hpp"
#include "oracles.hpp"

using namespace jpm;

namespace {

const std::string fig = "bbacaccabaddabccaaac";

encoded_text random_text(rng& r, pos_t n, std::size_t sigma) {
    std::vector<symbol_t> c(n);
    for (auto& x : c) x = static_cast<symbol_t>(r.below(sigma));
    return encoded_text(alphabet::synthetic(sigma), c);
}

parikh_vector pv(std::vector<count_t> v) { return parikh_vector(std::move(v)); }

}  // namespace

TEST(WaveletTree, WorkedExampleShape) {
    wavelet_tree wt(encoded_text::encode(fig));
    auto nodes = wt.nodes();
    ASSERT_EQ(nodes.size(), 3u);
    EXPECT_EQ(nodes[0].bits.to_string(), "00010110001100110001");
    EXPECT_EQ(nodes[1].bits.to_string(), "110001001000");  // bbaaabaabaaa
    EXPECT_EQ(nodes[2].bits.to_string(), "00011000");     // cccddccc
    EXPECT_EQ(nodes[0].left, 1);
    EXPECT_EQ(nodes[0].right, 2);
    EXPECT_EQ(nodes[1].left, wavelet_tree::leaf);
}

TEST(WaveletTree, WorkedExampleFirstfit) {
    wavelet_tree wt(encoded_text::encode(fig));
    auto p = pv({2, 3, 2, 1});
    EXPECT_EQ(wt.firstfit(p), 11u);
    EXPECT_EQ(wt.firstfit_node_values(p), (std::vector<pos_t>{11, 6, 4}));
    const auto& ab = wt.nodes()[1].bits;
    const auto& cd = wt.nodes()[2].bits;
    EXPECT_EQ(ab.select(false, 2), 4u);
    EXPECT_EQ(ab.select(true, 3), 6u);
    EXPECT_EQ(cd.select(false, 2), 2u);
    EXPECT_EQ(cd.select(true, 1), 4u);
    EXPECT_EQ(wt.nodes()[0].bits.select(false, 6), 9u);
    EXPECT_EQ(wt.nodes()[0].bits.select(true, 4), 11u);
}

TEST(WaveletTree, PrvExamples) {
    wavelet_tree wt(encoded_text::encode(fig));
    EXPECT_EQ(wt.prv(20), pv({8, 4, 6, 2}));
    EXPECT_EQ(wt.prv(0), pv({0, 0, 0, 0}));
    EXPECT_THROW(wt.prv(21), std::out_of_range);
    EXPECT_EQ(wt.firstfit(pv({0, 0, 0, 0})), 0u);
    EXPECT_EQ(wt.firstfit(pv({9, 0, 0, 0})), infeasible);
}

TEST(WaveletTree, PrvMatchesPrintedPrefixRows) {
    auto text = encoded_text::encode("cabcccaaabccbaacca");
    wavelet_tree wt(text);
    prefix_table t(text);
    for (pos_t j = 0; j <= 18; ++j) EXPECT_EQ(wt.prv(j), t.prv(j));
    EXPECT_EQ(wt.prv(18), pv({7, 3, 8}));
}

TEST(WaveletTree, SingleSymbolAndBinary) {
    wavelet_tree one(encoded_text::encode("aaaa"));
    EXPECT_TRUE(one.nodes().empty());
    EXPECT_EQ(one.prv(3), pv({3}));
    EXPECT_EQ(one.firstfit(pv({4})), 4u);
    EXPECT_EQ(one.firstfit(pv({5})), infeasible);
    EXPECT_EQ(one.access(2), 0);

    wavelet_tree two(encoded_text::encode("abba"));
    ASSERT_EQ(two.nodes().size(), 1u);
    EXPECT_EQ(two.nodes()[0].bits.to_string(), "0110");
}

TEST(WaveletTree, RankSelectAccessMatchScan) {
    rng r(7);
    for (int it = 0; it < 60; ++it) {
        std::size_t sigma = 1 + r.below(20);
        auto text = random_text(r, 1 + r.below(600), sigma);
        wavelet_tree wt(text);
        EXPECT_EQ(wt.nodes().size(), sigma - 1);
        std::vector<count_t> seen(sigma, 0);
        for (pos_t i = 1; i <= text.size(); ++i) {
            symbol_t k = text.at(i);
            ASSERT_EQ(wt.access(i), k);
            ++seen[k];
            ASSERT_EQ(wt.select(k, seen[k]), i);
            ASSERT_EQ(wt.rank(k, i), seen[k]);
        }
        for (std::size_t k = 0; k < sigma; ++k) {
            EXPECT_EQ(wt.select(static_cast<symbol_t>(k), seen[k] + 1), infeasible);
        }
    }
}

TEST(WaveletTree, NodeBitsHaveRoutedLengths) {
    rng r(8);
    auto text = random_text(r, 1000, 7);
    wavelet_tree wt(text);
    auto nodes = wt.nodes();
    EXPECT_EQ(nodes[0].bits.size(), text.size());
    for (const auto& u : nodes) {
        EXPECT_EQ(u.mid - u.lo, (u.hi - u.lo + 1) / 2);
        count_t routed = 0;
        for (symbol_t c : text.codes()) routed += c >= u.lo && c < u.hi;
        EXPECT_EQ(u.bits.size(), routed);
        if (u.left != wavelet_tree::leaf) EXPECT_EQ(nodes[u.left].bits.size(), u.bits.count(false));
        if (u.right != wavelet_tree::leaf) EXPECT_EQ(nodes[u.right].bits.size(), u.bits.count(true));
    }
}

TEST(WaveletTree, AgreesWithTableExhaustivelyOnSmallTexts) {
    for (std::size_t sigma = 2; sigma <= 4; ++sigma) {
        for (pos_t n = 1; n <= (sigma == 4 ? 6u : 8u); ++n) {
            std::vector<symbol_t> s(n, 0);
            do {
                encoded_text text(alphabet::synthetic(sigma), s);
                wavelet_tree wt(text);
                prefix_table t(text);
                for (pos_t j = 0; j <= n; ++j) ASSERT_EQ(wt.prv(j), t.prv(j));
                // every p with components up to the text length + 1
                std::vector<count_t> p(sigma, 0);
                for (;;) {
                    ASSERT_EQ(wt.firstfit(parikh_vector(p)), t.firstfit(parikh_vector(p)));
                    std::size_t k = 0;
                    while (k < sigma && ++p[k] > std::min<count_t>(n, 3)) p[k++] = 0;
                    if (k == sigma) break;
                }
            } while (oracle::next_text(s, sigma));
        }
    }
}

TEST(WaveletTree, AgreesWithTableAtScaleAndCountsNodeVisits) {
    rng r(9);
    for (int it = 0; it < 50; ++it) {
        std::size_t sigma = 1 + r.below(64);
        auto text = random_text(r, 1 + r.below(5000), sigma);
        wavelet_tree wt(text);
        prefix_table t(text);
        std::vector<count_t> out(sigma);
        for (int q = 0; q < 100; ++q) {
            pos_t j = r.below(text.size() + 1);
            probe_counters c;
            wt.prv(j, {}, out, c);
            ASSERT_EQ(parikh_vector(out), t.prv(j));
            EXPECT_LE(c.node_visits, 2 * sigma - 1);
            parikh_vector p = t.prv(r.below(text.size() + 1));
            if (r.below(4) == 0) p[r.below(sigma)] += 1;
            probe_counters f;
            ASSERT_EQ(wt.firstfit(p.counts(), f), t.firstfit(p));
            EXPECT_LE(f.node_visits, 2 * sigma - 1);
        }
    }
}

TEST(WaveletTree, SaveLoadRoundTrip) {
    rng r(10);
    for (std::size_t sigma : {1u, 2u, 5u, 16u}) {
        auto text = random_text(r, 3000, sigma);
        wavelet_tree wt(text);
        std::stringstream ss;
        wt.save(ss);
        auto back = wavelet_tree::load(ss);
        EXPECT_EQ(back, wt);
        for (pos_t j : {0u, 1u, 1500u, 3000u}) EXPECT_EQ(back.prv(j), wt.prv(j));
    }
}

TEST(WaveletTree, LoadRejectsInconsistentNodes) {
    wavelet_tree wt(encoded_text::encode(fig));
    std::stringstream ss;
    wt.save(ss);
    std::string bytes = ss.str();
    // Node count field follows n and sigma.
    std::string wrong_count = bytes;
    wrong_count[16] = 5;
    std::stringstream a(wrong_count);
    EXPECT_THROW(wavelet_tree::load(a), format_error);
    std::stringstream b(bytes.substr(0, bytes.size() - 3));
    EXPECT_THROW(wavelet_tree::load(b), format_error);
    // Flip one root bit: the children no longer match the routing counts.
    std::string flipped = bytes;
    std::size_t root_payload = 24 + 5 * 4 + 8;
    flipped[root_payload] = static_cast<char>(flipped[root_payload] ^ 1);
    std::stringstream c(flipped);
    EXPECT_THROW(wavelet_tree::load(c), format_error);
}
