#include "semdex/votes.hpp"

#include "semdex/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

using namespace semdex;
using votes::spearman;
namespace fs = std::filesystem;

namespace {

struct TempCsv {
    fs::path path;
    explicit TempCsv(const std::string& content) {
        path = fs::temp_directory_path() /
               ("semdex_votes_" + std::to_string(std::random_device{}()) + ".csv");
        std::ofstream(path, std::ios::binary) << content;
    }
    ~TempCsv() { fs::remove(path); }
};

// Independent rank correlation: counting ranks, then textbook Pearson.
double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            double less = 0, equal = 0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] < v[i]) ++less;
                if (j != i && v[j] == v[i]) ++equal;
            }
            r[i] = 1.0 + less + equal / 2.0;
        }
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    return num / std::sqrt(dx * dy);
}

} // namespace

TEST_CASE("load_votes: happy path") {
    TempCsv file("year,country_code,agreement\n1970,FRA,0.42\n1970,GBR,0.8\n1971,FRA,1\n");
    auto records = votes::load_votes(file.path);
    REQUIRE(records.size() == 3);
    CHECK(records[0].year == 1970);
    CHECK(records[0].country_code == "FRA");
    CHECK(records[0].agreement == doctest::Approx(0.42));
    CHECK(records[2].agreement == 1.0);
}

TEST_CASE("load_votes: empty file with header") {
    TempCsv file("year,country_code,agreement\n");
    CHECK(votes::load_votes(file.path).empty());
}

TEST_CASE("load_votes: row errors carry the line number") {
    TempCsv bad_range("year,country_code,agreement\n1970,FRA,0.2\n1970,GBR,1.42\n");
    try {
        votes::load_votes(bad_range.path);
        FAIL("expected throw");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    TempCsv bad_year("year,country_code,agreement\nMCMLXX,FRA,0.2\n");
    CHECK_THROWS_AS(votes::load_votes(bad_year.path), InputError);

    TempCsv dup("year,country_code,agreement\n1970,FRA,0.2\n1970,FRA,0.3\n");
    CHECK_THROWS_AS(votes::load_votes(dup.path), InputError);

    TempCsv no_header("1970,FRA,0.2\n");
    CHECK_THROWS_AS(votes::load_votes(no_header.path), InputError);

    CHECK_THROWS_AS(votes::load_votes("/nonexistent/votes.csv"), InputError);
}

TEST_CASE("spearman: pinned examples") {
    std::vector<double> x1{1, 2, 3, 4};
    CHECK(*spearman(x1, x1) == 1.0);
    std::vector<double> x2{1, 2, 3}, y2{3, 2, 1};
    CHECK(*spearman(x2, y2) == -1.0);
    std::vector<double> x3{1, 2, 3}, y3{1, 3, 2};
    CHECK(std::abs(*spearman(x3, y3) - 0.5) < 1e-15);
}

TEST_CASE("spearman: contract violations and undefined cases") {
    std::vector<double> x{1, 2, 3}, y{1, 2};
    CHECK_THROWS_AS(spearman(x, y), std::invalid_argument);
    std::vector<double> xs{1, 2};
    CHECK_THROWS_AS(spearman(xs, xs), std::invalid_argument);
    std::vector<double> flat{2, 2, 2}, rising{1, 2, 3};
    CHECK(!spearman(flat, rising).has_value());
    CHECK(!spearman(rising, flat).has_value());
}

TEST_CASE("spearman: symmetry, self-correlation, monotone invariance") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 3 + rng() % 20;
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = std::round(u(rng) * 8) / 8.0; // induce ties
        for (auto& v : y) v = std::round(u(rng) * 8) / 8.0;
        bool xconst = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
        bool yconst = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
        if (xconst || yconst) continue;

        auto xy = spearman(x, y);
        auto yx = spearman(y, x);
        REQUIRE(xy.has_value());
        CHECK(*xy == *yx);
        CHECK(*xy >= -1.0);
        CHECK(*xy <= 1.0);
        CHECK(*spearman(x, x) == 1.0);

        // strictly monotone transform of either input changes nothing
        std::vector<double> ex(n);
        for (std::size_t i = 0; i < n; ++i) ex[i] = std::exp(x[i]);
        CHECK(*spearman(ex, y) == doctest::Approx(*xy).epsilon(1e-15));

        CHECK(*xy == doctest::Approx(oracle_spearman(x, y)).epsilon(1e-13));
    }
}

namespace {

embed::EmbeddingModel correlation_model(int n_countries, int year,
                                        const std::vector<float>& ref_direction,
                                        std::vector<std::vector<float>> country_vecs) {
    std::vector<std::string> labels;
    labels.push_back("USA_" + std::to_string(year));
    for (int i = 0; i < n_countries; ++i) {
        std::string code = "C" + std::string(1, char('A' + i)) + "A";
        labels.push_back(code + "_" + std::to_string(year));
    }
    auto model = test::make_random_model({{"w", 3}}, labels, 2, 71);
    auto ref_row = model.doc_in.row(*model.vocab.label_index(labels[0]));
    std::copy(ref_direction.begin(), ref_direction.end(), ref_row.begin());
    for (int i = 0; i < n_countries; ++i) {
        auto row = model.doc_in.row(*model.vocab.label_index(labels[i + 1]));
        std::copy(country_vecs[i].begin(), country_vecs[i].end(), row.begin());
    }
    return model;
}

} // namespace

TEST_CASE("yearly_correlation: perfectly aligned and inverted years") {
    // five countries at increasing cosine to USA's direction (1, 0)
    std::vector<std::vector<float>> vecs;
    std::vector<double> cosines{0.1, 0.3, 0.5, 0.7, 0.9};
    for (double c : cosines)
        vecs.push_back({float(c), float(std::sqrt(1 - c * c))});
    auto model = correlation_model(5, 2000, {1.0f, 0.0f}, vecs);
    DocIndex docs(model.vocab, {});

    std::vector<votes::VotingRecord> aligned, inverted;
    for (int i = 0; i < 5; ++i) {
        std::string code = "C" + std::string(1, char('A' + i)) + "A";
        aligned.push_back({2000, code, 0.1 + 0.2 * i}); // same order as cosines
        inverted.push_back({2000, code, 0.9 - 0.2 * i});
    }

    auto up = votes::yearly_correlation(model, docs, aligned, "USA", {2000, 2000}, {});
    REQUIRE(up.size() == 1);
    CHECK(up[0].rho == 1.0);
    CHECK(up[0].n == 5);
    CHECK(up[0].year == 2000);

    auto down = votes::yearly_correlation(model, docs, inverted, "USA", {2000, 2000}, {});
    REQUIRE(down.size() == 1);
    CHECK(down[0].rho == -1.0);
}

TEST_CASE("yearly_correlation: shuffled agreements match the oracle") {
    std::mt19937_64 rng(73);
    std::vector<std::vector<float>> vecs;
    std::vector<double> cosines;
    for (int i = 0; i < 10; ++i) {
        double c = 0.05 + 0.09 * i;
        cosines.push_back(c);
        vecs.push_back({float(c), float(std::sqrt(1 - c * c))});
    }
    auto model = correlation_model(10, 2000, {1.0f, 0.0f}, vecs);
    DocIndex docs(model.vocab, {});

    std::vector<double> agreements(10);
    for (auto& a : agreements) a = double(rng() % 100) / 100.0;
    std::vector<votes::VotingRecord> records;
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        std::string code = "C" + std::string(1, char('A' + i)) + "A";
        records.push_back({2000, code, agreements[i]});
        y.push_back(agreements[i]);
    }
    // recompute the exact cosines the model will see (float vectors)
    for (int i = 0; i < 10; ++i) {
        std::string code = "C" + std::string(1, char('A' + i)) + "A";
        x.push_back(semindex::cosine<float>(model.doc_vector(code + "_2000"),
                                            model.doc_vector("USA_2000")));
    }

    auto points = votes::yearly_correlation(model, docs, records, "USA", {2000, 2000}, {});
    REQUIRE(points.size() == 1);
    CHECK(points[0].rho == doctest::Approx(oracle_spearman(x, y)).epsilon(1e-13));
}

TEST_CASE("yearly_correlation: reference excluded, small years skipped") {
    std::vector<std::vector<float>> vecs = {{0.5f, 0.5f}, {0.8f, 0.1f}};
    auto model = correlation_model(2, 2000, {1.0f, 0.0f}, vecs);
    DocIndex docs(model.vocab, {});

    // votes include the reference country itself; with only 2 other
    // countries the year must be skipped (n < 3)
    std::vector<votes::VotingRecord> records = {
        {2000, "USA", 1.0}, {2000, "CAA", 0.5}, {2000, "CBA", 0.7}};
    auto points = votes::yearly_correlation(model, docs, records, "USA", {2000, 2000}, {});
    CHECK(points.empty());

    // missing reference year: skipped, not fatal
    auto points2 = votes::yearly_correlation(model, docs, records, "USA", {1999, 1999}, {});
    CHECK(points2.empty());
}
