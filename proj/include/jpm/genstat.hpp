#pragma once

// Random instances and jump-count experiments.
//
// Texts are uniform i.i.d. over a synthetic alphabet. Queries are either
// quasi-balanced (every component drawn uniformly from the integers in
// (x - eps, x + eps), clamped at 0) or uniform over all Parikh vectors of a
// fixed length m. An experiment searches every query on every text with the
// selected back-ends and aggregates per (m, back-end) cell.
//
// CSV schema "jpm-bench/1", one row per cell:
//   schema,source,n,sigma,query_model,epsilon,backend,m,mean_query_len,
//   texts,samples,mean_jumps,mean_occurrences,mean_window_steps,
//   mean_search_probes,mean_row_reads,mean_node_visits,mean_gap,gap_samples,
//   clamped,mismatches,jump_ns_per_query,window_ns_per_query
// The two timing columns are empty when timing is disabled.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/jumping.hpp"
#include "jpm/prefix_table.hpp"
#include "jpm/random.hpp"
#include "jpm/wavelet_tree.hpp"

namespace jpm {

enum class query_model { quasi_balanced, fixed_length };
enum class backend { table, wavelet };

inline const char* to_string(query_model m) {
    return m == query_model::quasi_balanced ? "quasi-balanced" : "fixed-length";
}

inline const char* to_string(backend b) { return b == backend::table ? "table" : "wavelet"; }

inline encoded_text gen_text(pos_t n, std::size_t sigma, rng& r) {
    alphabet a = alphabet::synthetic(sigma);
    std::vector<symbol_t> codes(n);
    for (auto& c : codes) {
        c = static_cast<symbol_t>(r.below(sigma));
    }
    return encoded_text(std::move(a), std::move(codes));
}

inline encoded_text gen_text(pos_t n, std::size_t sigma, std::uint64_t seed) {
    rng r(seed);
    return gen_text(n, sigma, r);
}

// Components uniform over the integers of (x - eps, x + eps) intersected
// with [0, inf). Sets *clamped when the interval had to be cut at 0.
inline parikh_vector gen_quasi_balanced(std::size_t sigma, count_t x, count_t eps, rng& r,
                                        bool* clamped = nullptr) {
    if (eps == 0) {
        throw std::invalid_argument("quasi-balanced queries need epsilon >= 1");
    }
    count_t lo = x >= eps ? x - eps + 1 : 0;
    count_t hi = x + eps - 1;
    if (clamped) {
        *clamped = x < eps;
    }
    if (hi == 0) {
        throw std::invalid_argument("quasi-balanced interval contains only the zero vector");
    }
    parikh_vector q(sigma);
    do {
        for (std::size_t k = 0; k < sigma; ++k) {
            q[k] = r.between(lo, hi);
        }
    } while (q.is_zero());
    return q;
}

inline parikh_vector gen_quasi_balanced(std::size_t sigma, count_t x, count_t eps,
                                        std::uint64_t seed) {
    rng r(seed);
    return gen_quasi_balanced(sigma, x, eps, r);
}

// Uniform over the C(m + sigma - 1, sigma - 1) compositions of m: choose the
// positions of sigma - 1 separators among m + sigma - 1 slots (Floyd's
// sampling) and read off the gaps.
inline parikh_vector gen_fixed_length(std::size_t sigma, count_t m, rng& r) {
    if (m == 0) {
        throw std::invalid_argument("fixed-length queries need m >= 1");
    }
    parikh_vector q(sigma);
    if (sigma == 1) {
        q[0] = m;
        return q;
    }
    const count_t slots = m + sigma - 1;
    const count_t k = sigma - 1;
    std::vector<count_t> bars;
    bars.reserve(k);
    for (count_t j = slots - k; j < slots; ++j) {
        count_t t = r.below(j + 1);
        if (std::find(bars.begin(), bars.end(), t) == bars.end()) {
            bars.push_back(t);
        } else {
            bars.push_back(j);
        }
    }
    std::sort(bars.begin(), bars.end());
    count_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        q[i] = bars[i] - prev;
        prev = bars[i] + 1;
    }
    q[k] = slots - prev;
    return q;
}

inline parikh_vector gen_fixed_length(std::size_t sigma, count_t m, std::uint64_t seed) {
    rng r(seed);
    return gen_fixed_length(sigma, m, r);
}

struct experiment_config {
    pos_t n = 100000;
    std::size_t sigma = 4;
    query_model model = query_model::quasi_balanced;
    count_t epsilon = 10;
    // Nominal query lengths. When empty, `points` lengths spaced
    // geometrically over [m_lo, m_hi] are used; m_lo/m_hi default to
    // log2(n) and sqrt(n).
    std::vector<count_t> m_values;
    count_t m_lo = 0;
    count_t m_hi = 0;
    std::size_t points = 8;
    std::size_t texts = 10;
    std::size_t queries = 50;
    std::uint64_t seed = 1;
    std::vector<backend> backends{backend::table};
    bool baseline = false;
    bool timing = false;
    std::size_t timing_repeats = 3;
    // When set, every repetition searches this text instead of a random one.
    const encoded_text* fixed_text = nullptr;
    std::string source = "random";
};

struct experiment_cell {
    count_t m = 0;
    backend which = backend::table;
    std::uint64_t samples = 0;
    std::uint64_t texts = 0;
    std::uint64_t sum_query_len = 0;
    std::uint64_t sum_jumps = 0;
    std::uint64_t sum_occurrences = 0;
    std::uint64_t sum_window_steps = 0;
    std::uint64_t sum_search_probes = 0;
    std::uint64_t sum_row_reads = 0;
    std::uint64_t sum_node_visits = 0;
    std::uint64_t gap_sum = 0;
    std::uint64_t gap_count = 0;
    std::uint64_t gap_min = std::numeric_limits<std::uint64_t>::max();
    bool clamped = false;
    std::uint64_t mismatches = 0;
    double jump_ns = 0;
    double window_ns = 0;

    double mean(std::uint64_t sum) const {
        return samples ? static_cast<double>(sum) / static_cast<double>(samples) : 0.0;
    }
    double mean_jumps() const { return mean(sum_jumps); }
    double mean_query_len() const { return mean(sum_query_len); }
    double mean_gap() const {
        return gap_count ? static_cast<double>(gap_sum) / static_cast<double>(gap_count) : 0.0;
    }
};

struct experiment_result {
    pos_t n = 0;
    std::size_t sigma = 0;
    query_model model = query_model::quasi_balanced;
    count_t epsilon = 0;
    std::string source;
    bool baseline = false;
    bool timing = false;
    std::vector<experiment_cell> cells;

    const experiment_cell* find(count_t m, backend b) const {
        for (const auto& c : cells) {
            if (c.m == m && c.which == b) {
                return &c;
            }
        }
        return nullptr;
    }
};

inline std::vector<count_t> resolve_lengths(const experiment_config& cfg, pos_t n) {
    if (!cfg.m_values.empty()) {
        return cfg.m_values;
    }
    count_t lo = cfg.m_lo ? cfg.m_lo
                          : std::max<count_t>(1, static_cast<count_t>(std::log2(static_cast<double>(n))));
    count_t hi = cfg.m_hi ? cfg.m_hi
                          : std::max<count_t>(lo, static_cast<count_t>(std::sqrt(static_cast<double>(n))));
    if (lo == 0 || hi < lo || hi > n) {
        throw std::invalid_argument("query length range must satisfy 1 <= m_lo <= m_hi <= n");
    }
    std::vector<count_t> out;
    std::size_t points = std::max<std::size_t>(cfg.points, 1);
    for (std::size_t i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        auto m = static_cast<count_t>(std::llround(
            std::exp(std::log(static_cast<double>(lo)) * (1 - t) + std::log(static_cast<double>(hi)) * t)));
        if (out.empty() || out.back() != m) {
            out.push_back(m);
        }
    }
    return out;
}

namespace detail {

template <class F>
double median_ns(std::size_t repeats, F&& body) {
    std::vector<double> times;
    for (std::size_t i = 0; i < std::max<std::size_t>(repeats, 1); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

template <class Index>
void run_backend(const Index& index, const std::vector<parikh_vector>& queries,
                 const std::vector<std::vector<pos_t>>* expected, const experiment_config& cfg,
                 experiment_cell& cell) {
    jump_engine<Index> engine(index);
    jump_result r;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        engine.search_into(queries[i], {}, r);
        const auto& tr = r.trace;
        cell.sum_jumps += tr.iterations;
        cell.sum_occurrences += r.starts.size();
        cell.sum_search_probes += tr.probes.search_probes;
        cell.sum_row_reads += tr.probes.row_reads;
        cell.sum_node_visits += tr.probes.node_visits;
        cell.gap_sum += tr.gap_sum;
        cell.gap_count += tr.gap_count;
        if (tr.gap_count) {
            cell.gap_min = std::min<std::uint64_t>(cell.gap_min, tr.gap_min);
        }
        if (expected && (*expected)[i] != r.starts) {
            ++cell.mismatches;
        }
    }
    if (cfg.timing) {
        cell.jump_ns += median_ns(cfg.timing_repeats, [&] {
            for (const auto& q : queries) {
                engine.search_into(q, {}, r);
            }
        });
    }
}

}  // namespace detail

// Cells are ordered by m, then by back-end in configuration order. Text r
// uses stream (seed, 2r); queries for text r and length index i use stream
// (seed, 2(r * lengths + i) + 1), so results do not depend on loop order.
inline experiment_result run_experiment(const experiment_config& cfg) {
    if (cfg.backends.empty()) {
        throw std::invalid_argument("experiment needs at least one back-end");
    }
    const pos_t n = cfg.fixed_text ? cfg.fixed_text->size() : cfg.n;
    const std::size_t sigma = cfg.fixed_text ? cfg.fixed_text->alphabet_size() : cfg.sigma;
    if (n == 0 || sigma == 0) {
        throw std::invalid_argument("experiment needs n >= 1 and sigma >= 1");
    }
    if (cfg.model == query_model::quasi_balanced && cfg.epsilon == 0) {
        throw std::invalid_argument("quasi-balanced queries need epsilon >= 1");
    }
    const std::vector<count_t> lengths = resolve_lengths(cfg, n);

    experiment_result result;
    result.n = n;
    result.sigma = sigma;
    result.model = cfg.model;
    result.epsilon = cfg.epsilon;
    result.source = cfg.source;
    result.baseline = cfg.baseline;
    result.timing = cfg.timing;
    for (count_t m : lengths) {
        for (backend b : cfg.backends) {
            experiment_cell cell;
            cell.m = m;
            cell.which = b;
            result.cells.push_back(cell);
        }
    }

    for (std::size_t t = 0; t < cfg.texts; ++t) {
        std::optional<encoded_text> generated;
        if (!cfg.fixed_text) {
            rng text_rng(cfg.seed, 2 * t);
            generated = gen_text(n, sigma, text_rng);
        }
        const encoded_text& text = cfg.fixed_text ? *cfg.fixed_text : *generated;
        std::optional<prefix_table> table;
        std::optional<wavelet_tree> tree;
        for (backend b : cfg.backends) {
            if (b == backend::table && !table) {
                table.emplace(text);
            } else if (b == backend::wavelet && !tree) {
                tree.emplace(text);
            }
        }

        for (std::size_t li = 0; li < lengths.size(); ++li) {
            const count_t m = lengths[li];
            rng query_rng(cfg.seed, 2 * (t * lengths.size() + li) + 1);
            std::vector<parikh_vector> queries;
            bool clamped = false;
            for (std::size_t i = 0; i < cfg.queries; ++i) {
                if (cfg.model == query_model::quasi_balanced) {
                    count_t x = std::max<count_t>(1, static_cast<count_t>(std::llround(
                                                         static_cast<double>(m) / static_cast<double>(sigma))));
                    bool c = false;
                    queries.push_back(gen_quasi_balanced(sigma, x, cfg.epsilon, query_rng, &c));
                    clamped = clamped || c;
                } else {
                    queries.push_back(gen_fixed_length(sigma, m, query_rng));
                }
            }

            std::vector<std::vector<pos_t>> expected;
            std::uint64_t window_steps = 0;
            double window_ns = 0;
            if (cfg.baseline) {
                for (const auto& q : queries) {
                    window_stats ws;
                    auto occ = window_search(text, q, {}, &ws);
                    window_steps += ws.shifts;
                    std::vector<pos_t> starts;
                    starts.reserve(occ.size());
                    for (const auto& o : occ) {
                        starts.push_back(o.start);
                    }
                    expected.push_back(std::move(starts));
                }
                if (cfg.timing) {
                    window_ns = detail::median_ns(cfg.timing_repeats, [&] {
                        for (const auto& q : queries) {
                            auto occ = window_search(text, q);
                            if (occ.size() == std::numeric_limits<std::size_t>::max()) {
                                std::abort();
                            }
                        }
                    });
                }
            }

            for (std::size_t bi = 0; bi < cfg.backends.size(); ++bi) {
                experiment_cell& cell = result.cells[li * cfg.backends.size() + bi];
                cell.samples += queries.size();
                cell.texts += 1;
                cell.clamped = cell.clamped || clamped;
                cell.sum_window_steps += window_steps;
                cell.window_ns += window_ns;
                for (const auto& q : queries) {
                    cell.sum_query_len += q.length();
                }
                const auto* exp = cfg.baseline ? &expected : nullptr;
                if (cfg.backends[bi] == backend::table) {
                    detail::run_backend(*table, queries, exp, cfg, cell);
                } else {
                    detail::run_backend(*tree, queries, exp, cfg, cell);
                }
            }
        }
    }
    return result;
}

struct trend_point {
    double m = 0;
    double mean_jumps = 0;
};

struct trend_report {
    // log(mean J) = intercept + exponent * log(m), least squares.
    double exponent = 0;
    double intercept = 0;
    // Least-squares c in mean J ~ c * n / sqrt(m * sigma * ln sigma) on log
    // scale (NaN for sigma < 2), with per-point log residuals.
    double c = 0;
    std::vector<double> residuals;
    // J(m_lo) / J(m_hi) against the required sqrt(m_hi / m_lo) / 2.
    double decrease_ratio = 0;
    double required_ratio = 0;
    bool flagged = false;
    std::size_t points = 0;
};

inline trend_report trend_check(std::vector<trend_point> pts, pos_t n, std::size_t sigma) {
    std::sort(pts.begin(), pts.end(), [](const trend_point& a, const trend_point& b) { return a.m < b.m; });
    std::erase_if(pts, [](const trend_point& p) { return !(p.m > 0) || !(p.mean_jumps > 0); });
    if (pts.size() < 2 || pts.front().m == pts.back().m) {
        throw std::invalid_argument("degenerate fit: need at least two distinct query lengths");
    }
    trend_report rep;
    rep.points = pts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        double x = std::log(p.m);
        double y = std::log(p.mean_jumps);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = static_cast<double>(pts.size());
    rep.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    rep.intercept = (sy - rep.exponent * sx) / k;

    auto model = [&](double m) {
        double s = static_cast<double>(sigma);
        return static_cast<double>(n) / std::sqrt(m * s * std::log(s));
    };
    if (sigma >= 2) {
        double log_c = 0;
        for (const auto& p : pts) {
            log_c += std::log(p.mean_jumps) - std::log(model(p.m));
        }
        log_c /= k;
        rep.c = std::exp(log_c);
        for (const auto& p : pts) {
            rep.residuals.push_back(std::log(p.mean_jumps) - log_c - std::log(model(p.m)));
        }
    } else {
        rep.c = std::numeric_limits<double>::quiet_NaN();
    }
    rep.decrease_ratio = pts.front().mean_jumps / pts.back().mean_jumps;
    rep.required_ratio = std::sqrt(pts.back().m / pts.front().m) / 2.0;
    rep.flagged = rep.decrease_ratio < rep.required_ratio;
    return rep;
}

// Fits the cells of one back-end against their mean query lengths.
inline trend_report trend_check(const experiment_result& result, backend which = backend::table) {
    std::vector<trend_point> pts;
    for (const auto& c : result.cells) {
        if (c.which == which && c.samples > 0) {
            pts.push_back({c.mean_query_len(), c.mean_jumps()});
        }
    }
    return trend_check(std::move(pts), result.n, result.sigma);
}

namespace detail {
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}
}  // namespace detail

inline void write_csv_header(std::ostream& out) {
    out << "schema,source,n,sigma,query_model,epsilon,backend,m,mean_query_len,texts,samples,"
           "mean_jumps,mean_occurrences,mean_window_steps,mean_search_probes,mean_row_reads,"
           "mean_node_visits,mean_gap,gap_samples,clamped,mismatches,jump_ns_per_query,"
           "window_ns_per_query\n";
}

inline void write_csv_rows(const experiment_result& r, std::ostream& out) {
    using detail::fmt_double;
    for (const auto& c : r.cells) {
        out << "jpm-bench/1," << r.source << ',' << r.n << ',' << r.sigma << ',' << to_string(r.model)
            << ',' << r.epsilon << ',' << to_string(c.which) << ',' << c.m << ','
            << fmt_double(c.mean_query_len()) << ',' << c.texts << ',' << c.samples << ','
            << fmt_double(c.mean_jumps()) << ',' << fmt_double(c.mean(c.sum_occurrences)) << ','
            << (r.baseline ? fmt_double(c.mean(c.sum_window_steps)) : "") << ','
            << fmt_double(c.mean(c.sum_search_probes)) << ',' << fmt_double(c.mean(c.sum_row_reads)) << ','
            << fmt_double(c.mean(c.sum_node_visits)) << ',' << fmt_double(c.mean_gap()) << ','
            << c.gap_count << ',' << (c.clamped ? 1 : 0) << ',' << c.mismatches << ',';
        if (r.timing) {
            out << fmt_double(c.samples ? c.jump_ns / static_cast<double>(c.samples) : 0.0) << ','
                << (r.baseline ? fmt_double(c.samples ? c.window_ns / static_cast<double>(c.samples) : 0.0)
                               : "");
        } else {
            out << ',';
        }
        out << '\n';
    }
}

inline void write_csv(const experiment_result& r, std::ostream& out) {
    write_csv_header(out);
    write_csv_rows(r, out);
}

}  // namespace jpm
