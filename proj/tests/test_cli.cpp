#include "susyqft/cli.hpp"
#include "susyqft/errors.hpp"
#include "susyqft/suites.hpp"

#include <json.hpp>

#include <doctest.h>

using namespace sqft;

TEST_CASE("parser examples")
{
    CHECK(parse_element("one") == Element::one());
    CHECK(parse_element("zeta([1,0])") == c(TestFunction({1.0})) * R(1.0, TestFunction({1.0})));
    Element e = parse_element("2i * R(1,[0,1]) * c([1,0])");
    REQUIRE(e.size() == 1);
    CHECK(e.words()[0].coeff == cplx(0, 2));
    CHECK(e == cplx(0, 2) * R(1.0, TestFunction({0.0, 1.0})) * c(TestFunction({1.0})));
}

TEST_CASE("parser arithmetic and shifts")
{
    const TestFunction f({0.5, -1.0});
    CHECK(parse_element("c([0.5,-1]) - c([0.5,-1])").is_zero());
    CHECK(parse_element("(1 + i) * j([0.5, -1])") == cplx(1, 1) * j(f));
    CHECK(parse_element("-R(-2, [0.5,-1])") == -R(-2.0, f));
    CHECK(parse_element("c([0.5,-1])@(0.25 + 0.5i)") == Element(Generator::clifford(f, cplx(0.25, 0.5))));
    CHECK(parse_element("zeta([1])@1") == Element(Word{1.0, {Generator::clifford(TestFunction({1.0}), 1.0),
                                                              Generator::resolvent(1.0, TestFunction({1.0}), 1.0)}}));
    CHECK(parse_element("3*i") == Element::scalar(cplx(0, 3)));
}

TEST_CASE("parse errors carry the offset")
{
    try {
        parse_element("c([1]");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
    try {
        parse_element("one + foo([1])");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
    CHECK_THROWS_AS(parse_element("R(c([1]), [1])"), ParseError);
    CHECK_THROWS_AS(parse_element("c([1])@c([1])"), ParseError);
    CHECK_THROWS_AS(parse_element("1 +"), ParseError);
    CHECK_THROWS_AS(parse_element("R(1, [])"), DomainError);
    CHECK_THROWS_AS(parse_element("R(0, [1])"), DomainError);
}

TEST_CASE("print then parse is the identity")
{
    Draws d(7);
    for (int k = 0; k < 50; ++k) {
        Element a = Element::scalar(cplx(d.uniform(-2, 2), d.uniform(-2, 2)));
        int len = d.integer(1, 4);
        Element w = Element::one();
        for (int q = 0; q < len; ++q) {
            TestFunction f = d.function(3);
            cplx z(d.uniform(-1, 1), d.uniform(0, 1));
            int kind = d.integer(0, 2);
            Generator g = kind == 0 ? Generator::clifford(f, z)
                        : kind == 1 ? Generator::resolvent(cplx(d.lambda(), d.uniform(-1, 1)), f, z)
                                    : Generator::field(f, z);
            w = w * Element(g);
        }
        a = a + w * cplx(d.uniform(-1, 1), d.uniform(-1, 1));
        CHECK(parse_element(print_element(a)) == a);
    }
}

TEST_CASE("brute force pairing oracle")
{
    CMatrix th(4, std::vector<cplx>(4, 0.0));
    th[0][1] = 2;
    th[2][3] = 3;
    th[0][2] = 5;
    th[1][3] = 7;
    th[0][3] = 11;
    th[1][2] = 13;
    // pairings {01,23}, {02,13}, {03,12} with Pfaffian signs
    CHECK(brute_force_pairing(th, 4) == cplx(2.0 * 3 - 5.0 * 7 + 11.0 * 13));
    CHECK(brute_force_pairing(th, 3) == cplx(0.0));
}

TEST_CASE("suite names")
{
    for (const char* s : {"kms", "susy", "relations", "tau", "cocycle", "localbound", "all"})
        CHECK(std::string(suite_name(parse_suite(s))) == s);
    CHECK_THROWS_AS(parse_suite("nope"), DomainError);
}

TEST_CASE("relations report is deterministic and well formed")
{
    RunConfig cfg;
    cfg.suite = Suite::Relations;
    cfg.seed = 11;
    Report r1 = run_suite(cfg), r2 = run_suite(cfg);
    std::string j1 = report_json(r1), j2 = report_json(r2);
    CHECK(j1 == j2);
    CHECK(r1.ok());
    auto doc = nlohmann::json::parse(j1);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["suite"] == "relations");
    CHECK(doc["summary"]["total"] == r1.records.size());
    std::string prev;
    for (const auto& rec : doc["records"]) {
        CHECK(!rec["anchor"].get<std::string>().empty());
        CHECK(rec["name"].get<std::string>() >= prev);
        prev = rec["name"].get<std::string>();
    }
    cfg.seed = 12;
    CHECK(report_json(run_suite(cfg)) != j1);
}
