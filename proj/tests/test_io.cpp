#include "aflaz/chu.hpp"
#include "aflaz/io.hpp"
#include "aflaz/verify.hpp"

#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace aflaz;

namespace {

SequenceSet parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_sequences(in);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting round-trips") {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        const std::string s = io::format_number(v);
        double back = 0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(io::format_number(0.0) == "0");
    CHECK(io::format_number(0.5) == "0.5");
    CHECK(io::format_number(std::nan("")) == "nan");
    CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("iq and phase files") {
    const SequenceSet iq = parse("# format=iq\nre,im\n1,0\n0,1\n-1,0\n");
    CHECK(iq.count() == 1);
    CHECK(iq.length() == 3);
    CHECK(std::abs(iq[0][1] - std::complex<double>(0, 1)) < 1e-15);
    const SequenceSet ph = parse("# format=phase\nphase\n0\n3.141592653589793\n");
    CHECK(std::abs(ph[0][1] + 1.0) < 1e-15);
    const SequenceSet multi = parse("# format=iq\nseq,re,im\n0,1,0\n0,1,0\n1,-1,0\n1,1,0\n");
    CHECK(multi.count() == 2);
    CHECK(std::abs(multi[1][0] + 1.0) < 1e-15);
}

TEST_CASE("sequence round trip in both formats") {
    const SequenceSet set = chu_set(ChuSpec{13, {2, 5, -3}});
    for (io::SequenceFormat f : {io::SequenceFormat::iq, io::SequenceFormat::phase}) {
        std::ostringstream out;
        io::write_sequences(out, set, f);
        const SequenceSet back = parse(out.str());
        REQUIRE(back.count() == set.count());
        for (Index m = 0; m < set.count(); ++m) {
            const double tol = f == io::SequenceFormat::iq ? 0.0 : 1e-15;
            CHECK((back[m].entries() - set[m].entries()).cwiseAbs().maxCoeff() <= tol);
        }
    }
    std::ostringstream single;
    io::write_sequences(single, SequenceSet{{chu_sequence(4, 1)}});
    CHECK(lines_of(single.str())[1] == "re,im");
}

TEST_CASE("malformed sequence files") {
    CHECK_THROWS_AS(parse(""), std::invalid_argument);
    CHECK_THROWS_AS(parse("re,im\n1,0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=polar\nre,im\n1,0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nphase\n0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nre,im\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nre,im\n1,x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nre,im\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nre,im\n0.5,0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nseq,re,im\n1,1,0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# format=iq\nseq,re,im\n0,1,0\n1,1,0\n1,1,0\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::read_sequences_file("/nonexistent/seq.csv"), std::runtime_error);
}

TEST_CASE("surface CSV layout") {
    const SequenceSet set = chu_set(ChuSpec{5, {1, 2}});
    std::ostringstream out;
    io::write_surfaces(out, set, LazSpec{2, 2});
    const auto lines = lines_of(out.str());
    CHECK(lines.front() == "m,m_prime,tau,nu,mag_sq");
    CHECK(lines.size() == 1 + 4 * 9);
    CHECK(lines[1].rfind("0,0,-1,-1,", 0) == 0);
    CHECK(lines.back().rfind("1,1,1,1,", 0) == 0);
}

TEST_CASE("bound CSV and JSON") {
    const BoundReport ok = benchmark_bound(BoundParams{128, 6, 32, 8, 0});
    const BoundReport na = closed_form_bound(ClosedForm::uniform_opt_q, BoundParams{16, 1, 16, 2, 0});
    std::ostringstream out;
    io::write_bounds_csv(out, {ok, na});
    const auto lines = lines_of(out.str());
    CHECK(lines[0] == "bound,N,M,Zx,Zy,D,q,value,applicable");
    CHECK(lines[1] == "benchmark,128,6,32,8,0,," + io::format_number(ok.value) + ",ok");
    CHECK(lines[2] == "uniform_opt_q,16,1,16,2,0," + std::to_string(*na.q) + ",nan,not_applicable");

    const auto j = io::to_json(ok);
    CHECK(j["name"] == "benchmark");
    CHECK(j["value"].get<double>() == ok.value);
    CHECK(j["params"]["Zx"] == 32);
    const auto jn = io::to_json(na);
    CHECK(jn["value"].is_null());
    CHECK(jn["status"] == "not_applicable");
    CHECK_FALSE(jn["note"].get<std::string>().empty());

    const BoundReport weighted = laz_bound(weights_A(3, 8), BoundParams{16, 2, 8, 2, 1});
    const auto jw = io::to_json(weighted);
    CHECK(jw["weight"]["family"] == "A");
    CHECK(jw["weight"]["values"].size() == 8);
    CHECK(jw["tradeoff"]["rhs"].get<double>() == weighted.tradeoff->rhs);
    CHECK(io::bound_csv_row(weighted).find(",1,3,") != std::string::npos);
}

TEST_CASE("check and theta JSON") {
    CheckOutcome c{"gram_lower", {{"N", 4}, {"M", 2}}, 10.0, 9.5, true, 42};
    const auto j = io::to_json(c);
    CHECK(j.dump() == R"({"check":"gram_lower","params":{"N":4.0,"M":2.0},"lhs":10.0,"rhs":9.5,"pass":true,"seed":42})");

    const ThetaReport t = theta_report(chu_set(ChuSpec{7, {1, 2}}), LazSpec{3, 2});
    const auto jt = io::to_json(t);
    CHECK(jt["theta_max_sq"].get<double>() == t.theta_max_sq);
    CHECK(jt["argmax_c"]["m"].is_number());
    const auto solo = io::to_json(theta_report(SequenceSet{{chu_sequence(7, 1)}}, LazSpec{1, 1}));
    CHECK(solo["theta_c_sq"].is_null());
    CHECK(solo["argmax_a"].is_null());
}

TEST_CASE("tables and file output") {
    io::Table t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
    CHECK(t.to_csv() == "a,b\n1,2\n3,4\n");
    t.rows.push_back({"5"});
    CHECK_THROWS_AS(t.to_csv(), std::logic_error);

    const auto dir = std::filesystem::temp_directory_path() / "aflaz_io_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    io::write_text((dir / "x.txt").string(), "hello\n");
    std::ifstream in(dir / "x.txt");
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    std::filesystem::remove_all(dir.parent_path());
}

}
