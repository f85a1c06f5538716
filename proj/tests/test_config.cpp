#include "doctest.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>

#include "comblat/config.hpp"
#include "oracles.hpp"

using namespace comblat;

namespace {

PipelineConfig parse(const std::string& text) { return parse_config(text, "."); }

std::string contains_what(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const PipelineConfig c = parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}]})");
    CHECK(c.window == CombWindow{-5, 5});
    REQUIRE(c.opos.size() == 1);
    CHECK(c.opos[0].delta_m == 1);
    CHECK(c.opos[0].copies == 1);
    CHECK(c.alpha == 0.5);
    REQUIRE(c.thetas.size() == 3);
    CHECK(c.thetas[0] == 0.0);
    CHECK(c.thetas[1] == doctest::Approx(std::numbers::pi / 4));
    CHECK(c.thetas[2] == doctest::Approx(std::numbers::pi / 2));
    CHECK(c.seed == 0);
    CHECK(c.samples == 0);
    CHECK(c.workers == 1);
    CHECK(c.exports == std::vector<std::string>{"report"});
    CHECK(c.splitter.kind == SplitterSpec::Kind::Sylvester);
    CHECK(c.dimensions() == 1);
    CHECK(c.copies() == 1);

    // Object and array window forms agree.
    const PipelineConfig o =
        parse(R"({"window": {"n_min": -5, "n_max": 5}, "opos": [{"delta_m": 1}]})");
    CHECK(o.window == c.window);
}

TEST_CASE("malformed documents fail with parse errors that name the field") {
    CHECK_THROWS_WITH_AS(parse("{not json"), doctest::Contains("not valid JSON"), ParseError);
    CHECK_THROWS_AS(parse("[1, 2]"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"opos": [{"delta_m": 1}]})"),
                         doctest::Contains("window"), ParseError);
    CHECK_THROWS_WITH_AS(parse(R"({"window": [-5, 5]})"), doctest::Contains("opos"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "bogus": 1})"),
        doctest::Contains("unknown field 'bogus'"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1.5}]})"),
        doctest::Contains("delta_m"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "alpha": "big"})"),
        doctest::Contains("alpha"), ParseError);
    CHECK_THROWS_AS(parse(R"({"window": [-5], "opos": [{"delta_m": 1}]})"), ParseError);
    CHECK_THROWS_AS(
        parse(R"({"window": {"n_min": -5, "n_max": 5, "step": 2}, "opos": [{"delta_m": 1}]})"),
        ParseError);
}

TEST_CASE("validation rejects physically meaningless settings") {
    CHECK_THROWS_WITH_AS(parse(R"({"window": [5, -5], "opos": [{"delta_m": 1}]})"),
                         doctest::Contains("empty comb window"), ValidationError);
    CHECK_THROWS_WITH_AS(parse(R"({"window": [-5, 5], "opos": []})"),
                         doctest::Contains("at least one OPO"), ValidationError);
    CHECK_THROWS_WITH_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 2}]})"),
                         doctest::Contains("even pump index"), ValidationError);
    CHECK_THROWS_WITH_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": -1}]})"),
                         doctest::Contains("positive"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}, {"delta_m": 1}]})"),
        doctest::Contains("duplicate delta_m"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1, "copies": 3}, {"delta_m": 7}]})"),
        doctest::Contains("uniform"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "alpha": -1})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "thetas": []})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "samples": 1})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "samples": -2})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "workers": 0})"),
                    ValidationError);
    CHECK_THROWS_AS(parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "seed": -1})"),
                    ValidationError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "exports": ["csv"]})"),
        doctest::Contains("unknown export selector"), ValidationError);
}

TEST_CASE("sampling is gated on the dense-check size limit") {
    // 2 * 1 * 401 = 802 qumodes: fine without sampling, too large with it.
    CHECK_NOTHROW(parse(R"({"window": [-200, 200], "opos": [{"delta_m": 1}]})"));
    const std::string msg = contains_what([] {
        parse(R"({"window": [-200, 200], "opos": [{"delta_m": 1}], "samples": 100})");
    });
    CHECK(msg.find("dense covariance") != std::string::npos);
    CHECK_NOTHROW(parse(R"({"window": [-20, 20], "opos": [{"delta_m": 1}], "samples": 100})"));
}

TEST_CASE("three OPOs cannot use the sylvester splitter") {
    const std::string base =
        R"({"window": [-5, 5], "opos": [{"delta_m": 1}, {"delta_m": 7}, {"delta_m": 91}])";
    const std::string msg = contains_what([&] { parse(base + "}"); });
    CHECK(msg.find("unsupported splitter order 6") != std::string::npos);
    CHECK(msg.find("powers of two") != std::string::npos);
    // Same error when asked for explicitly.
    CHECK_THROWS_AS(parse(base + R"(, "splitter": "sylvester"})"), ValidationError);
}

TEST_CASE("user splitters come as sign matrices or files") {
    SUBCASE("inline signs") {
        const PipelineConfig c = parse(
            R"({"window": [-5, 5], "opos": [{"delta_m": 1}],
                "splitter": {"signs": [[1, 1], [1, -1]]}})");
        CHECK(c.splitter.kind == SplitterSpec::Kind::Signs);
        const BalancedSplitter h = make_splitter(c);
        CHECK((h.matrix - sylvester_splitter(2).matrix).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("signs must form a balanced orthogonal matrix") {
        CHECK_THROWS_WITH_AS(
            parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}],
                      "splitter": {"signs": [[1, 1], [1, 1]]}})"),
            doctest::Contains("splitter"), ValidationError);
        CHECK_THROWS_AS(
            parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}],
                      "splitter": {"signs": [[1, 2], [1, -1]]}})"),
            ValidationError);
        // Order must be 2D.
        CHECK_THROWS_AS(
            parse(R"({"window": [-5, 5], "opos": [{"delta_m": 1}],
                      "splitter": {"signs": [[1,1,1,1],[1,-1,1,-1],[1,1,-1,-1],[1,-1,-1,1]]}})"),
            ValidationError);
    }

    SUBCASE("matrix files accept sign patterns and prescaled entries") {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "comblat_config_test";
        fs::create_directories(dir);

        {
            std::ofstream out(dir / "h2_signs.txt");
            out << "# order-2 pattern\n1 1\n1 -1\n";
        }
        {
            std::ofstream out(dir / "h2_scaled.txt");
            const double r = 1.0 / std::sqrt(2.0);
            out.precision(17);
            out << r << " " << r << "\n" << r << " " << -r << "\n";
        }
        const std::string doc =
            R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "splitter": {"file": "h2_signs.txt"}})";
        const PipelineConfig c = parse_config(doc, dir);
        CHECK((make_splitter(c).matrix - sylvester_splitter(2).matrix).cwiseAbs().maxCoeff() <
              1e-15);

        const std::string scaled =
            R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "splitter": {"file": "h2_scaled.txt"}})";
        CHECK((make_splitter(parse_config(scaled, dir)).matrix -
               sylvester_splitter(2).matrix)
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);

        CHECK_THROWS_AS(parse_config(
                            R"({"window": [-5, 5], "opos": [{"delta_m": 1}],
                                "splitter": {"file": "nope.txt"}})",
                            dir),
                        IoError);
        fs::remove_all(dir);
    }

    SUBCASE("six OPOs can splitter-mix through an order-12 Paley matrix") {
        // Order 12 has no Sylvester matrix; the sign form covers it.
        Json doc;
        doc["window"] = Json::array({-3, 3});
        Json opos = Json::array();
        for (int d = 0; d < 6; ++d) opos.push_back(Json{{"delta_m", 2 * d + 1}});
        doc["opos"] = std::move(opos);
        Json signs = Json::array();
        const Eigen::MatrixXd paley = oracles::paley12_signs();
        for (int i = 0; i < 12; ++i) {
            Json row = Json::array();
            for (int j = 0; j < 12; ++j) row.push_back(static_cast<int>(paley(i, j)));
            signs.push_back(std::move(row));
        }
        doc["splitter"] = Json{{"signs", std::move(signs)}};

        const PipelineConfig c = parse(doc.dump());
        const BalancedSplitter h = make_splitter(c);
        CHECK(h.order() == 12);
        CHECK((h.matrix * h.matrix.transpose() - Eigen::MatrixXd::Identity(12, 12))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);

        // The same matrix is refused when 2D disagrees with its order.
        Json wrong = doc;
        wrong["opos"] = Json::array({Json{{"delta_m", 1}}});
        const std::string msg = contains_what([&] { parse(wrong.dump()); });
        CHECK(msg.find("does not match 2D = 2") != std::string::npos);
    }
}

TEST_CASE("the canonical echo is a fixed point of parsing") {
    const std::vector<std::string> docs = {
        R"({"window": [-5, 5], "opos": [{"delta_m": 1}]})",
        R"({"window": {"n_max": 8, "n_min": -8}, "opos": [{"delta_m": 1}, {"delta_m": 7}],
            "alpha": 1.0, "thetas": [0.0, 0.5], "seed": 42, "samples": 1000, "workers": 3,
            "exports": ["report", "dot", "report"]})",
        R"({"window": [-4, 4], "opos": [{"delta_m": 1, "copies": 2}],
            "splitter": {"signs": [[1, 1], [1, -1]]}})",
    };
    for (const auto& doc : docs) {
        const PipelineConfig c = parse(doc);
        const std::string echo = config_to_json(c).dump(2);
        const PipelineConfig c2 = parse(echo);
        CHECK(config_to_json(c2).dump(2) == echo);
    }

    // Duplicate export selectors are deduplicated in the echo.
    const PipelineConfig c = parse(
        R"({"window": [-5, 5], "opos": [{"delta_m": 1}], "exports": ["dot", "dot", "report"]})");
    CHECK(c.exports == std::vector<std::string>{"dot", "report"});
}
