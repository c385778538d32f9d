#pragma once

// Command implementations behind the jpm executable. Each returns a process
// exit status and writes its report to `out`, diagnostics to `err`.
//   0  success / found
//   1  not found (decision mode)
//   2  usage error
//   3  I/O or index-format error
//   4  internal consistency failure

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/genstat.hpp"
#include "jpm/index_file.hpp"
#include "jpm/io.hpp"
#include "jpm/jumping.hpp"

namespace jpm {

inline constexpr int exit_found = 0;
inline constexpr int exit_not_found = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;
inline constexpr int exit_internal = 4;

class usage_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline count_t parse_count(std::string_view s) {
    count_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        throw usage_error("bad count '" + std::string(s) + "' in query");
    }
    return v;
}

inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

}  // namespace detail

// "a=3 b=1 c=2" (omitted symbols count 0) or positional "3,1,2" / "3 1 2".
inline parikh_vector parse_query(std::string_view spec, const alphabet& sigma) {
    auto tokens = detail::split_tokens(spec);
    if (tokens.empty()) {
        throw usage_error("empty query specification");
    }
    parikh_vector q(sigma.size());
    bool named = tokens.front().find('=') != std::string_view::npos;
    if (named) {
        std::vector<bool> seen(sigma.size(), false);
        for (auto t : tokens) {
            auto eq = t.find('=');
            if (eq != 1) {
                throw usage_error("expected symbol=count, got '" + std::string(t) + "'");
            }
            char ch = t[0];
            if (!sigma.contains(ch)) {
                throw usage_error(std::string("symbol '") + ch + "' is not in the index alphabet");
            }
            symbol_t k = sigma.encode(ch);
            if (seen[k]) {
                throw usage_error(std::string("symbol '") + ch + "' given twice");
            }
            seen[k] = true;
            q[k] = detail::parse_count(t.substr(2));
        }
    } else {
        if (tokens.size() != sigma.size()) {
            throw usage_error("query has " + std::to_string(tokens.size()) + " counts but the alphabet has " +
                              std::to_string(sigma.size()) + " symbols");
        }
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            q[k] = detail::parse_count(tokens[k]);
        }
    }
    if (q.is_zero()) {
        throw usage_error("empty query (all counts are zero)");
    }
    return q;
}

enum class query_mode { decision, occurrences };

inline query_mode parse_query_mode(const std::string& s) {
    if (s == "decision") return query_mode::decision;
    if (s == "occurrences") return query_mode::occurrences;
    throw usage_error("unknown mode '" + s + "'");
}

struct index_options {
    std::string input;
    std::string format = "plain";
    std::string backend = "table";
    std::string output;
    // Symbols to use instead of the ones found in the input.
    std::string alphabet;
    bool concatenate = false;
    // Interval back-end: fill every entry now and drop the text.
    bool eager = false;
};

struct query_options {
    std::string index;
    std::string query;
    std::string mode = "occurrences";
    bool trace = false;
};

struct bench_options {
    std::string input;  // optional FASTA/plain text; fixes the text
    std::string format = "fasta";
    std::string backend = "table";  // table | wavelet | both
    std::string output;             // empty: stdout
    pos_t n = 100000;
    std::size_t sigma = 4;
    count_t m_lo = 0;
    count_t m_hi = 0;
    std::size_t points = 8;
    std::string query_model = "quasi-balanced";
    count_t epsilon = 10;
    std::size_t reps = 10;
    std::size_t queries = 50;
    std::optional<std::uint64_t> seed;
    bool baseline = false;
    bool timing = true;
    std::size_t repeats = 3;
};

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const format_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

inline std::vector<text_record> load_texts(const std::string& path, const std::string& format,
                                           bool concatenate) {
    if (format == "plain") {
        return {text_record{"", load_plain(path)}};
    }
    if (format == "fasta") {
        return load_fasta(path, concatenate);
    }
    throw usage_error("unknown format '" + format + "'");
}

inline alphabet alphabet_of(const std::vector<text_record>& texts) {
    std::string all;
    for (const auto& t : texts) {
        all += t.sequence;
    }
    return alphabet::infer(all);
}

inline void print_probes(std::ostream& out, const probe_counters& p) {
    out << " firstfit_calls=" << p.firstfit_calls << " prv_calls=" << p.prv_calls
        << " search_probes=" << p.search_probes << " row_reads=" << p.row_reads
        << " node_visits=" << p.node_visits;
}

}  // namespace detail

inline int run_index(const index_options& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (o.input.empty() || o.output.empty()) {
            throw usage_error("index needs --input and --output");
        }
        index_kind kind = parse_index_kind(o.backend);
        if (o.eager && kind != index_kind::interval) {
            throw usage_error("--eager applies to the interval back-end only");
        }
        auto texts = detail::load_texts(o.input, o.format, o.concatenate);
        alphabet sigma = o.alphabet.empty() ? detail::alphabet_of(texts) : alphabet(o.alphabet);
        index_bundle b = index_bundle::build(kind, sigma, texts, !o.eager);
        b.save_file(o.output);
        pos_t total = 0;
        for (const auto& r : b.records) {
            total += r.size();
        }
        out << "indexed " << b.records.size() << " record(s), n=" << total << ", sigma=" << sigma.size()
            << " (" << sigma.symbols() << "), back-end " << to_string(kind) << '\n';
        return exit_found;
    });
}

// Runs one query against a loaded or freshly built index. Output is a pure
// function of the index contents and the query.
inline int answer_query(const index_bundle& b, const parikh_vector& q, query_mode mode, bool trace,
                        std::ostream& out) {
    validate_query(q, b.sigma.size());
    const bool multi = b.records.size() > 1;
    if (mode == query_mode::decision) {
        bool any = false;
        for (const auto& r : b.records) {
            bool hit = std::visit(
                [&](const auto& ix) -> bool {
                    using T = std::decay_t<decltype(ix)>;
                    if constexpr (std::is_same_v<T, interval_index>) {
                        return ix.decide(q);
                    } else {
                        return decide_jump(ix, q);
                    }
                },
                r.index);
            if (multi) {
                out << r.name << '\t' << (hit ? "yes" : "no") << '\n';
            }
            any = any || hit;
        }
        if (!multi) {
            out << (any ? "yes" : "no") << '\n';
        }
        return any ? exit_found : exit_not_found;
    }

    std::uint64_t total = 0;
    for (const auto& r : b.records) {
        std::visit(
            [&](const auto& ix) {
                using T = std::decay_t<decltype(ix)>;
                std::string prefix = multi ? r.name + '\t' : std::string();
                if constexpr (std::is_same_v<T, interval_index>) {
                    if (!ix.has_text()) {
                        throw usage_error(
                            "an eager interval index answers decision queries only; rebuild without --eager");
                    }
                    auto res = ix.fill_and_report(q);
                    if (!res.swept && q.length() <= ix.size()) {
                        throw std::logic_error("interval entry already filled; occurrences unavailable");
                    }
                    for (pos_t s : res.starts) {
                        out << prefix << s << '\n';
                    }
                    total += res.starts.size();
                    out << "# " << prefix << "count=" << res.starts.size() << " sweeps=" << ix.sweeps()
                        << " steps=" << ix.steps() << '\n';
                } else {
                    jump_options opts;
                    opts.record_trace = trace;
                    auto res = jump_search(ix, q, opts);
                    for (pos_t s : res.starts) {
                        out << prefix << s << '\n';
                    }
                    total += res.starts.size();
                    out << "# " << prefix << "count=" << res.starts.size() << " jumps=" << res.trace.iterations;
                    detail::print_probes(out, res.trace.probes);
                    out << '\n';
                    if (trace) {
                        for (const auto& st : res.trace.steps) {
                            out << "# " << prefix << "step L=" << st.left << " R=" << st.right
                                << " found=" << (st.found ? "yes" : "no") << '\n';
                        }
                    }
                }
            },
            r.index);
    }
    return exit_found;
}

inline int run_query(const query_options& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (o.index.empty() || o.query.empty()) {
            throw usage_error("query needs --input (index file) and --query");
        }
        query_mode mode = parse_query_mode(o.mode);
        index_bundle b = index_bundle::load_file(o.index);
        parikh_vector q = parse_query(o.query, b.sigma);
        return answer_query(b, q, mode, o.trace, out);
    });
}

inline experiment_config make_experiment_config(const bench_options& o) {
    experiment_config cfg;
    cfg.n = o.n;
    cfg.sigma = o.sigma;
    if (o.query_model == "quasi-balanced") {
        cfg.model = query_model::quasi_balanced;
    } else if (o.query_model == "fixed-length") {
        cfg.model = query_model::fixed_length;
    } else {
        throw usage_error("unknown query model '" + o.query_model + "'");
    }
    if (o.epsilon == 0) {
        throw usage_error("--epsilon must be >= 1");
    }
    cfg.epsilon = o.epsilon;
    cfg.m_lo = o.m_lo;
    cfg.m_hi = o.m_hi;
    cfg.points = o.points;
    cfg.texts = o.reps;
    cfg.queries = o.queries;
    cfg.baseline = o.baseline;
    cfg.timing = o.timing;
    cfg.timing_repeats = std::max<std::size_t>(o.repeats, 3);
    if (o.backend == "table") {
        cfg.backends = {backend::table};
    } else if (o.backend == "wavelet") {
        cfg.backends = {backend::wavelet};
    } else if (o.backend == "both") {
        cfg.backends = {backend::table, backend::wavelet};
    } else if (o.backend == "interval") {
        throw usage_error("the interval back-end answers decision queries only and cannot run benchmarks");
    } else {
        throw usage_error("unknown back-end '" + o.backend + "'");
    }
    if (o.reps == 0 || o.queries == 0) {
        throw usage_error("--reps and --queries must be >= 1");
    }
    if (o.sigma == 0 || o.sigma > 256) {
        throw usage_error("--sigma must be in 1..256");
    }
    if (o.n == 0) {
        throw usage_error("--n must be >= 1");
    }
    return cfg;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("PM_SEED")) {
        std::string_view s(env);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
            throw usage_error("PM_SEED is not an unsigned integer");
        }
        return v;
    }
    return 1;
}

inline int run_bench(const bench_options& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        experiment_config cfg = make_experiment_config(o);
        cfg.seed = resolve_seed(o.seed);
        std::optional<encoded_text> fixed;
        if (!o.input.empty()) {
            auto texts = detail::load_texts(o.input, o.format, true);
            fixed = encoded_text::encode(texts.front().sequence);
            cfg.fixed_text = &*fixed;
            cfg.source = o.input;
            for (char& c : cfg.source) {
                if (c == ',' || c == '\n') {
                    c = '_';
                }
            }
        }
        if (cfg.m_hi > (fixed ? fixed->size() : cfg.n)) {
            throw usage_error("--m-hi exceeds the text length");
        }
        if (cfg.m_lo && cfg.m_hi && cfg.m_lo > cfg.m_hi) {
            throw usage_error("--m-lo exceeds --m-hi");
        }
        experiment_result r = run_experiment(cfg);
        if (o.output.empty()) {
            write_csv(r, out);
        } else {
            std::ofstream f(o.output);
            if (!f) {
                throw io_error("cannot open '" + o.output + "' for writing");
            }
            write_csv(r, f);
            if (!f) {
                throw io_error("failed to write '" + o.output + "'");
            }
        }
        for (const auto& c : r.cells) {
            if (c.mismatches) {
                err << "error: " << c.mismatches << " query result(s) disagree with the window baseline at m="
                    << c.m << '\n';
                return exit_internal;
            }
        }
        return exit_found;
    });
}

}  // namespace jpm
