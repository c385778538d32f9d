// jpm: build jumbled pattern matching indexes, query them, run benchmarks.

#include <iostream>

#include <CLI11.hpp>

#include "jpm/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Jumbled (Parikh vector) pattern matching"};
    app.require_subcommand(1);

    jpm::index_options ix;
    auto* index_cmd = app.add_subcommand("index", "Build an index file from a text");
    index_cmd->add_option("--input", ix.input, "Text file")->required();
    index_cmd->add_option("--format", ix.format, "plain | fasta")->capture_default_str();
    index_cmd->add_option("--backend", ix.backend, "table | wavelet | interval")->capture_default_str();
    index_cmd->add_option("--output", ix.output, "Index file to write")->required();
    index_cmd->add_option("--alphabet", ix.alphabet, "Symbols in order (default: those in the text)");
    index_cmd->add_flag("--concat", ix.concatenate, "Concatenate FASTA records into one text");
    index_cmd->add_flag("--eager", ix.eager, "Interval back-end: fill all entries now instead of on demand");

    jpm::query_options qo;
    auto* query_cmd = app.add_subcommand("query", "Query an index file");
    query_cmd->add_option("--input", qo.index, "Index file")->required();
    query_cmd->add_option("--query", qo.query, "\"a=3 b=1 c=2\" or \"3,1,2\"")->required();
    query_cmd->add_option("--mode", qo.mode, "decision | occurrences")->capture_default_str();
    query_cmd->add_flag("--trace", qo.trace, "Print every jump");

    jpm::bench_options bo;
    std::uint64_t seed = 0;
    bool no_timing = false;
    auto* bench_cmd = app.add_subcommand("bench", "Run jump-count experiments, write CSV");
    bench_cmd->add_option("--input", bo.input, "Fixed text (random queries only)");
    bench_cmd->add_option("--format", bo.format, "plain | fasta")->capture_default_str();
    bench_cmd->add_option("--backend", bo.backend, "table | wavelet | both")->capture_default_str();
    bench_cmd->add_option("--output", bo.output, "CSV file (default: stdout)");
    bench_cmd->add_option("--n", bo.n, "Random text length")->capture_default_str();
    bench_cmd->add_option("--sigma", bo.sigma, "Alphabet size")->capture_default_str();
    bench_cmd->add_option("--m-lo", bo.m_lo, "Smallest query length (default log2 n)");
    bench_cmd->add_option("--m-hi", bo.m_hi, "Largest query length (default sqrt n)");
    bench_cmd->add_option("--points", bo.points, "Query lengths between m-lo and m-hi")->capture_default_str();
    bench_cmd->add_option("--query-model", bo.query_model, "quasi-balanced | fixed-length")->capture_default_str();
    bench_cmd->add_option("--epsilon", bo.epsilon, "Quasi-balanced spread")->capture_default_str();
    bench_cmd->add_option("--reps", bo.reps, "Texts per query length")->capture_default_str();
    bench_cmd->add_option("--queries", bo.queries, "Queries per text and length")->capture_default_str();
    auto* seed_opt = bench_cmd->add_option("--seed", seed, "PRNG seed (fallback: PM_SEED, then 1)");
    bench_cmd->add_flag("--baseline", bo.baseline, "Also run the sliding-window search and cross-check");
    bench_cmd->add_flag("--no-timing", no_timing, "Leave timing columns empty");
    bench_cmd->add_option("--repeats", bo.repeats, "Timing repeats per cell (median, >= 3)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : jpm::exit_usage;
    }

    if (*index_cmd) {
        return jpm::run_index(ix, std::cout, std::cerr);
    }
    if (*query_cmd) {
        return jpm::run_query(qo, std::cout, std::cerr);
    }
    if (seed_opt->count()) {
        bo.seed = seed;
    }
    bo.timing = !no_timing;
    return jpm::run_bench(bo, std::cout, std::cerr);
}
