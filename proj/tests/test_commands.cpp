#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "jpm/commands.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace jpm;

namespace {

const std::string worked = "cabcccaaabccbaacca";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct outcome {
    int code;
    std::string out;
    std::string err;
};

outcome index_cmd(const index_options& o) {
    std::ostringstream out, err;
    int rc = run_index(o, out, err);
    return {rc, out.str(), err.str()};
}

outcome query_cmd(const query_options& o) {
    std::ostringstream out, err;
    int rc = run_query(o, out, err);
    return {rc, out.str(), err.str()};
}

outcome bench_cmd(const bench_options& o) {
    std::ostringstream out, err;
    int rc = run_bench(o, out, err);
    return {rc, out.str(), err.str()};
}

std::string in_memory_answer(index_kind kind, const std::string& text, const std::string& query,
                             query_mode mode, bool trace) {
    alphabet a = alphabet::infer(text);
    auto b = index_bundle::build(kind, a, {text_record{"", text}}, true);
    std::ostringstream out;
    answer_query(b, parse_query(query, a), mode, trace, out);
    return out.str();
}

}  // namespace

TEST(ParseQuery, NamedAndPositional) {
    alphabet a("abc");
    EXPECT_EQ(parse_query("a=3 b=1 c=2", a), parikh_vector(std::vector<count_t>{3, 1, 2}));
    EXPECT_EQ(parse_query("c=2,a=3", a), parikh_vector(std::vector<count_t>{3, 0, 2}));
    EXPECT_EQ(parse_query("3,1,2", a), parikh_vector(std::vector<count_t>{3, 1, 2}));
    EXPECT_EQ(parse_query("3 1 2", a), parikh_vector(std::vector<count_t>{3, 1, 2}));
}

TEST(ParseQuery, Errors) {
    alphabet a("abc");
    EXPECT_THROW(parse_query("", a), std::invalid_argument);
    EXPECT_THROW(parse_query("a=1 a=2", a), std::invalid_argument);
    EXPECT_THROW(parse_query("d=1", a), std::invalid_argument);
    EXPECT_THROW(parse_query("a=0", a), std::invalid_argument);
    EXPECT_THROW(parse_query("1,2", a), std::invalid_argument);
    EXPECT_THROW(parse_query("1,x,2", a), std::invalid_argument);
    EXPECT_THROW(parse_query("a=-1", a), std::invalid_argument);
    EXPECT_THROW(parse_query("0,0,0", a), std::invalid_argument);
    EXPECT_THROW(parse_query_mode("maybe"), std::invalid_argument);
}

TEST(Commands, WorkedExampleThroughFiles) {
    temp_dir dir;
    for (std::string backend : {"table", "wavelet"}) {
        index_options io;
        io.input = dir.write("s.txt", worked + "\n");
        io.backend = backend;
        io.output = dir.file(backend + ".idx");
        auto built = index_cmd(io);
        ASSERT_EQ(built.code, exit_found) << built.err;
        EXPECT_NE(built.out.find("n=18, sigma=3 (abc)"), std::string::npos);

        query_options qo;
        qo.index = io.output;
        qo.query = "a=3 b=1 c=2";
        qo.trace = true;
        auto res = query_cmd(qo);
        ASSERT_EQ(res.code, exit_found) << res.err;
        EXPECT_EQ(res.out.rfind("5\n6\n7\n13\n# count=4 jumps=6", 0), 0u) << res.out;
        EXPECT_NE(res.out.find("# step L=0 R=8 found=no\n# step L=4 R=10 found=yes\n"), std::string::npos);
        EXPECT_NE(res.out.find("# step L=12 R=18 found=yes\n"), std::string::npos);

        qo.mode = "decision";
        qo.trace = false;
        EXPECT_EQ(query_cmd(qo).out, "yes\n");
        qo.query = "0,3,1";
        auto no = query_cmd(qo);
        EXPECT_EQ(no.code, exit_not_found);
        EXPECT_EQ(no.out, "no\n");
    }
}

TEST(Commands, FileRoundTripMatchesInMemoryAnswer) {
    temp_dir dir;
    const std::string text = "ababbaabaabbbaaabbab";
    for (auto kind : {index_kind::table, index_kind::wavelet, index_kind::interval}) {
        for (std::string query : {"3,2", "0,4", "1,1", "10,10"}) {
            for (auto mode : {query_mode::decision, query_mode::occurrences}) {
                index_options io;
                io.input = dir.write("t.txt", text);
                io.backend = to_string(kind);
                io.output = dir.file("t.idx");
                ASSERT_EQ(index_cmd(io).code, exit_found);
                query_options qo;
                qo.index = io.output;
                qo.query = query;
                qo.mode = mode == query_mode::decision ? "decision" : "occurrences";
                EXPECT_EQ(query_cmd(qo).out, in_memory_answer(kind, text, query, mode, false))
                    << to_string(kind) << ' ' << query;
            }
        }
    }
}

TEST(Commands, IntervalDecisionsAndEagerLimits) {
    temp_dir dir;
    index_options io;
    io.input = dir.write("t.txt", "ababbaabaabbbaaabbab");
    io.backend = "interval";
    io.eager = true;
    io.output = dir.file("eager.idx");
    ASSERT_EQ(index_cmd(io).code, exit_found);
    query_options qo;
    qo.index = io.output;
    qo.mode = "decision";
    qo.query = "a=3 b=2";
    EXPECT_EQ(query_cmd(qo).code, exit_found);
    qo.query = "b=4";
    EXPECT_EQ(query_cmd(qo).code, exit_not_found);
    qo.mode = "occurrences";
    EXPECT_EQ(query_cmd(qo).code, exit_usage);

    io.input = dir.write("abc.txt", "abcabc");
    io.output = dir.file("bad.idx");
    EXPECT_EQ(index_cmd(io).code, exit_usage);
    io.backend = "table";
    EXPECT_EQ(index_cmd(io).code, exit_usage);  // --eager with a jumping back-end
}

TEST(Commands, LazyIntervalReportsOccurrences) {
    temp_dir dir;
    index_options io;
    io.input = dir.write("t.txt", "ababbaabaabbbaaabbab");
    io.backend = "interval";
    io.output = dir.file("lazy.idx");
    ASSERT_EQ(index_cmd(io).code, exit_found);
    query_options qo;
    qo.index = io.output;
    qo.query = "3,2";
    auto r = query_cmd(qo);
    EXPECT_EQ(r.code, exit_found);
    auto text = encoded_text::encode("ababbaabaabbbaaabbab");
    std::string expect;
    auto starts = oracle::starts(text.codes(), std::vector<count_t>{3, 2});
    for (pos_t st : starts) expect += std::to_string(st) + '\n';
    expect += "# count=" + std::to_string(starts.size()) + " sweeps=1 steps=20\n";
    EXPECT_EQ(r.out, expect);
}

TEST(Commands, FastaRecordsAndConcatenation) {
    temp_dir dir;
    std::string fasta = ">one first\nACGT\nAC\n>two\nGGGA\n";
    index_options io;
    io.input = dir.write("g.fa", fasta);
    io.format = "fasta";
    io.output = dir.file("g.idx");
    auto built = index_cmd(io);
    ASSERT_EQ(built.code, exit_found) << built.err;
    EXPECT_NE(built.out.find("indexed 2 record(s), n=10"), std::string::npos);
    query_options qo;
    qo.index = io.output;
    qo.query = "A=1 G=1";
    qo.mode = "decision";
    EXPECT_EQ(query_cmd(qo).out, "one\tno\ntwo\tyes\n");
    qo.mode = "occurrences";
    auto occ = query_cmd(qo);
    EXPECT_EQ(occ.out.rfind("# one\tcount=0", 0), 0u) << occ.out;
    EXPECT_NE(occ.out.find("two\t3\n"), std::string::npos);

    io.concatenate = true;
    ASSERT_EQ(index_cmd(io).code, exit_found);
    qo.mode = "decision";
    EXPECT_EQ(query_cmd(qo).out, "yes\n");
}

TEST(Commands, ErrorExitCodes) {
    temp_dir dir;
    index_options io;
    io.input = dir.file("missing.txt");
    io.output = dir.file("x.idx");
    EXPECT_EQ(index_cmd(io).code, exit_io);
    io.input = dir.write("s.txt", worked);
    io.backend = "suffix";
    EXPECT_EQ(index_cmd(io).code, exit_usage);
    io.backend = "table";
    io.format = "genbank";
    EXPECT_EQ(index_cmd(io).code, exit_usage);

    query_options qo;
    qo.index = dir.write("junk.idx", "not an index");
    qo.query = "1,1,1";
    EXPECT_EQ(query_cmd(qo).code, exit_io);
    io.format = "plain";
    ASSERT_EQ(index_cmd(io).code, exit_found);
    qo.index = io.output;
    qo.query = "z=1";
    EXPECT_EQ(query_cmd(qo).code, exit_usage);
    qo.query = "1,1,1";
    qo.mode = "all";
    EXPECT_EQ(query_cmd(qo).code, exit_usage);
}

TEST(Bench, DeterministicCsvWithoutTiming) {
    bench_options bo;
    bo.n = 3000;
    bo.sigma = 4;
    bo.m_lo = 8;
    bo.m_hi = 64;
    bo.points = 4;
    bo.reps = 2;
    bo.queries = 5;
    bo.seed = 17;
    bo.timing = false;
    bo.baseline = true;
    bo.backend = "both";
    auto a = bench_cmd(bo);
    auto b = bench_cmd(bo);
    ASSERT_EQ(a.code, exit_found) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 1 + 4 * 2);
}

TEST(Bench, SeedFromEnvironment) {
    bench_options bo;
    bo.n = 500;
    bo.m_lo = 4;
    bo.m_hi = 8;
    bo.points = 2;
    bo.reps = 1;
    bo.queries = 3;
    bo.timing = false;
    ::setenv("PM_SEED", "17", 1);
    auto env = bench_cmd(bo);
    bo.seed = 17;
    auto flag = bench_cmd(bo);
    ::setenv("PM_SEED", "x", 1);
    bo.seed.reset();
    auto bad = bench_cmd(bo);
    ::unsetenv("PM_SEED");
    EXPECT_EQ(env.out, flag.out);
    EXPECT_EQ(bad.code, exit_usage);
    EXPECT_EQ(resolve_seed(std::nullopt), 1u);
}

TEST(Bench, RejectsBadConfigurations) {
    bench_options bo;
    bo.backend = "interval";
    EXPECT_EQ(bench_cmd(bo).code, exit_usage);
    bo.backend = "table";
    bo.query_model = "gaussian";
    EXPECT_EQ(bench_cmd(bo).code, exit_usage);
    bo.query_model = "fixed-length";
    bo.n = 100;
    bo.m_hi = 200;
    EXPECT_EQ(bench_cmd(bo).code, exit_usage);
    bo.m_hi = 0;
    bo.epsilon = 0;
    bo.query_model = "quasi-balanced";
    EXPECT_EQ(bench_cmd(bo).code, exit_usage);
}

TEST(Bench, FixedTextFromFile) {
    temp_dir dir;
    bench_options bo;
    bo.input = dir.write("g.fa", ">x\nACGTTGCAACGTAGCTAGCTAGGATCGATCGA\n>y\nACGTACGTAGCATCGACTAG\n");
    bo.m_lo = 3;
    bo.m_hi = 6;
    bo.points = 2;
    bo.reps = 2;
    bo.queries = 4;
    bo.timing = false;
    bo.baseline = true;
    bo.output = dir.file("out.csv");
    auto r = bench_cmd(bo);
    ASSERT_EQ(r.code, exit_found) << r.err;
    EXPECT_TRUE(r.out.empty());
    auto csv = slurp(bo.output);
    EXPECT_NE(csv.find(",52,4,quasi-balanced,"), std::string::npos) << csv;
}

#ifdef JPM_CLI_PATH
namespace {
int run_cli(const std::string& args, const temp_dir& dir) {
    std::string cmd = std::string("\"") + JPM_CLI_PATH + "\" " + args + " >\"" + dir.file("stdout") + "\" 2>\"" +
                      dir.file("stderr") + "\"";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
}  // namespace

TEST(Cli, ExitCodesAndOutput) {
    temp_dir dir;
    std::string s = dir.write("s.txt", worked);
    std::string idx = dir.file("s.idx");
    EXPECT_EQ(run_cli("index --input \"" + s + "\" --output \"" + idx + "\"", dir), 0);
    EXPECT_EQ(run_cli("query --input \"" + idx + "\" --query \"a=3 b=1 c=2\"", dir), 0);
    EXPECT_EQ(slurp(dir.file("stdout")).rfind("5\n6\n7\n13\n", 0), 0u);
    EXPECT_EQ(run_cli("query --input \"" + idx + "\" --query 0,3,1 --mode decision", dir), 1);
    EXPECT_EQ(slurp(dir.file("stdout")), "no\n");
    EXPECT_EQ(run_cli("query --input \"" + idx + "\"", dir), 2);
    EXPECT_EQ(run_cli("frobnicate", dir), 2);
    EXPECT_EQ(run_cli("index --input \"" + dir.file("nope") + "\" --output \"" + idx + "\"", dir), 3);
    EXPECT_EQ(run_cli("bench --n 2000 --m-lo 8 --m-hi 16 --points 2 --reps 1 --queries 2 --seed 5 --no-timing", dir),
              0);
    EXPECT_EQ(slurp(dir.file("stdout")).rfind("schema,", 0), 0u);
    EXPECT_EQ(run_cli("--help", dir), 0);
}
#endif
