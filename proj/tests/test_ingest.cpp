#include "linlasso/error.hpp"
#include "linlasso/ingest.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace linlasso;

namespace {

RawDataset parse(const std::string& text, const std::string& response = "1") {
    std::istringstream in(text);
    return parse_table(in, ResponseSpec::parse(response));
}

}  // namespace

TEST_CASE("load_table reads the crime fixture") {
    const auto raw = load_table(LINLASSO_DATA_DIR "/crime.csv", ResponseSpec::parse("1"));
    CHECK(raw.n_rows == 50);
    CHECK(raw.columns.size() == 6);
    for (const auto& col : raw.columns) CHECK(col.is_numeric());
    CHECK(raw.response == 0);
}

TEST_CASE("load_table reads the three-row simple array") {
    const auto raw = load_table(LINLASSO_DATA_DIR "/simple.csv", ResponseSpec::parse("y"));
    CHECK(raw.n_rows == 3);
    CHECK(raw.columns.size() == 3);
    CHECK(raw.columns[1].numeric()[1] == doctest::Approx(0.435890));
}

TEST_CASE("load_table error paths") {
    CHECK_THROWS_AS(load_table("/nonexistent/file.csv", ResponseSpec{}), DataError);
    CHECK_THROWS_WITH_AS(parse("a,b\n1,2\n3,\n4,5\n"), "missing cell at (2, 2)", DataError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n3\n"), DataError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n3,4\n", "zz"), DataError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n3,4\n", "3"), DataError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n\n3,4\n"), DataError);
    CHECK_THROWS_AS(ResponseSpec::parse("0"), UsageError);
}

TEST_CASE("response by name or index, trailing blank lines ignored") {
    const auto raw = parse("a,b,c\n1,2,3\n4,5,6\n\n", "c");
    CHECK(raw.response == 2);
    CHECK(raw.n_rows == 2);
    CHECK(parse("a,b,c\n1,2,3\n", "2").response == 1);
}

TEST_CASE("type inference: numeric only if every cell parses") {
    const auto raw = parse("y,g,v\n1,a,1e3\n2,b,-2.5\n3,1,+4\n");
    CHECK(raw.columns[1].is_numeric() == false);
    CHECK(raw.columns[2].is_numeric());
    CHECK(raw.columns[2].numeric()[0] == 1000.0);
}

TEST_CASE("binarize_nominals passes numeric data through") {
    const auto raw = parse("y,x1,x2\n1,2,3\n2,1,5\n4,0,1\n");
    const auto data = binarize_nominals(raw);
    CHECK(data.r() == 2);
    CHECK(data.provenance.empty());
    CHECK(data.X(2, 1) == 1.0);
    CHECK(data.names == std::vector<std::string>{"y", "x1", "x2"});
}

TEST_CASE("binarize_nominals expands levels against the lexicographic reference") {
    const auto raw = parse("y,g\n1,c\n2,a\n3,b\n4,a\n5,c\n6,b\n");
    const auto data = binarize_nominals(raw);
    REQUIRE(data.r() == 2);
    CHECK(data.names[1] == "g=b");
    CHECK(data.names[2] == "g=c");
    CHECK(data.provenance.at("g=c").level == "c");
    CHECK(data.provenance.at("g=b").column == "g");
    const Eigen::VectorXd expect_b = (Eigen::VectorXd(6) << 0, 0, 1, 0, 0, 1).finished();
    CHECK(data.X.col(0) == expect_b);
    // Reference rows ("a") are exactly the rows where no indicator is set.
    for (Eigen::Index i = 0; i < 6; ++i) {
        const double sum = data.X.row(i).sum();
        CHECK(sum <= 1.0);
        CHECK((sum == 0.0) == (raw.columns[1].nominal()[static_cast<std::size_t>(i)] == "a"));
    }
}

TEST_CASE("binarize_nominals errors") {
    CHECK_THROWS_AS(binarize_nominals(parse("y,x\na,1\nb,2\nc,3\n")), DataError);
    CHECK_THROWS_AS(binarize_nominals(parse("y,g,x\n1,a,1\n2,a,2\n3,a,4\n")), DataError);
    CHECK_THROWS_AS(binarize_nominals(parse("y,x\n1,1\n2,1\n3,1\n")), DataError);
    CHECK_THROWS_AS(binarize_nominals(parse("y,x\n1,1\n2,2\n")), DataError);
}

TEST_CASE("grades-shaped table expands 32 raw predictors to 41") {
    // Level structure of the secondary-school mathematics data: 15 numeric
    // columns, 13 two-level nominals, and Mjob/Fjob (5), reason (4), guardian (3).
    std::vector<std::pair<std::string, std::size_t>> nominal = {
        {"school", 2},   {"sex", 2},   {"address", 2}, {"famsize", 2}, {"Pstatus", 2},
        {"schoolsup", 2}, {"famsup", 2}, {"paid", 2},    {"activities", 2}, {"nursery", 2},
        {"higher", 2},   {"internet", 2}, {"romantic", 2}, {"Mjob", 5},     {"Fjob", 5},
        {"reason", 4},   {"guardian", 3}};
    const std::vector<std::string> numeric = {"age",  "Medu", "Fedu",   "traveltime", "studytime",
                                              "failures", "famrel", "freetime", "goout", "Dalc",
                                              "Walc", "health", "absences", "G1", "G2"};
    std::mt19937_64 rng(11);
    std::ostringstream csv;
    csv << "G3";
    for (const auto& n : numeric) csv << ',' << n;
    for (const auto& [n, levels] : nominal) csv << ',' << n;
    csv << '\n';
    const std::size_t rows = 60;
    for (std::size_t i = 0; i < rows; ++i) {
        csv << (rng() % 20);
        for (std::size_t k = 0; k < numeric.size(); ++k) csv << ',' << (i * (k + 3) + rng() % 7) % 23;
        for (const auto& [n, levels] : nominal) csv << ",L" << (i % levels);
        csv << '\n';
    }
    std::istringstream in(csv.str());
    const auto raw = parse_table(in, ResponseSpec::parse("G3"));
    CHECK(raw.columns.size() - 1 == 32);
    const auto data = binarize_nominals(raw);
    std::size_t expanded = numeric.size();
    for (const auto& [n, levels] : nominal) expanded += levels - 1;
    CHECK(expanded == 41);
    CHECK(data.r() == 41);
    CHECK(data.provenance.size() == 41 - numeric.size());
}

TEST_CASE("binarize_nominals is idempotent on numeric input") {
    const auto raw = parse("y,x1,x2\n1,2,3\n2,1,5\n4,0,1\n");
    const auto once = binarize_nominals(raw);
    RawDataset again;
    again.n_rows = once.n();
    again.columns.push_back({"y", std::vector<double>(once.y.data(), once.y.data() + once.y.size())});
    for (Eigen::Index j = 0; j < once.X.cols(); ++j) {
        const Eigen::VectorXd col = once.X.col(j);
        again.columns.push_back({once.names[static_cast<std::size_t>(j) + 1],
                                 std::vector<double>(col.data(), col.data() + col.size())});
    }
    const auto twice = binarize_nominals(again);
    CHECK(twice.X == once.X);
    CHECK(twice.names == once.names);
}

TEST_CASE("subset_rows and drop_predictors") {
    const auto data = binarize_nominals(parse("y,x1,x2\n1,2,3\n2,1,5\n4,0,1\n"));
    const auto sub = data.subset_rows({2, 0});
    CHECK(sub.y(0) == 4.0);
    CHECK(sub.X(1, 1) == 3.0);
    const auto dropped = data.drop_predictors({"x1"});
    CHECK(dropped.r() == 1);
    CHECK(dropped.names[1] == "x2");
    CHECK_THROWS_AS(data.drop_predictors({"nope"}), UsageError);
}
