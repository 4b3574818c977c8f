#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyinv/loop_model.hpp"
#include "polyinv/cli_core.hpp"
#include "test_support.hpp"

using namespace polyinv;

namespace {
std::string fixture(const std::string& name) { return std::string(POLYINV_FIXTURE_DIR) + "/" + name; }
}

TEST_CASE("fibonacci loop parses") {
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));
    CHECK(loop.variables == std::vector<std::string>{"x", "y"});
    CHECK(loop.parameters.empty());
    REQUIRE(loop.branches.size() == 1);
    CHECK(loop.guard.trivially_true());
    REQUIRE(loop.initial_values.size() == 2);
    CHECK(*loop.initial_values[0].constant == 0);
    CHECK(*loop.initial_values[1].constant == 1);
    // simultaneous semantics: y image mentions the old x
    const std::vector<std::string> names = loop.ring_names();
    CHECK(loop.branches[0].assignment[1].to_string(names) == "x + y");
}

TEST_CASE("parse errors carry position and reason") {
    CHECK_THROWS_AS(parse_loop("vars x;\ninit x = 0;\nguard true;\n"), LoopParseError);  // no branch
    CHECK_THROWS_AS(parse_loop("vars x;\ninit x = 0;\nguard true;\nbranch when true { y := 1; }"),
                    LoopParseError);  // unknown variable
    CHECK_THROWS_AS(parse_loop("vars x y;\ninit x = 0, y = 0;\nguard true;\n"
                               "branch when true { x := y; }"),
                    LoopParseError);  // missing assignment
    CHECK_THROWS_AS(parse_loop("vars x;\ninit x = 0;\nguard true;\n"
                               "branch when true { x := x/y; }"),
                    LoopParseError);  // non-polynomial expression
    CHECK_THROWS_AS(parse_loop("vars x;\ninit x != 3;\nguard true;\nbranch when true { x := x; }"),
                    LoopParseError);  // no initial value for x
    try {
        parse_loop("vars x;\ninit x = 0;\nguard true;\nbranch when true { q := 1; }");
        CHECK(false);
    } catch (const LoopParseError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("unknown loop variable") != std::string::npos);
    }
}

TEST_CASE("order atoms are kept but restrict modes") {
    LoopSystem loop = parse_loop(read_file(fixture("guarded.loop")));
    CHECK(!loop.guard.algebraic());
    CHECK(!loop.supports(InvariantMode::plain));
    CHECK(loop.supports(InvariantMode::inductive));
    CHECK(loop.supports(InvariantMode::absolute));
    CHECK(loop.guard.unsupported_atoms == std::vector<std::string>{"x < 10"});

    // ... but an order atom in init is a hard error
    CHECK_THROWS_AS(parse_loop("vars x;\ninit x < 1;\nguard true;\nbranch when true { x := x; }"),
                    LoopParseError);
}

TEST_CASE("pretty print round trips") {
    for (const char* name : {"fib.loop", "tricky.loop", "twothree.loop", "cohencu.loop",
                             "twobranch.loop", "guarded.loop"}) {
        LoopSystem a = parse_loop(read_file(fixture(name)));
        LoopSystem b = parse_loop(pretty_print(a));
        CHECK(a.variables == b.variables);
        CHECK(a.parameters == b.parameters);
        REQUIRE(a.branches.size() == b.branches.size());
        for (std::size_t i = 0; i < a.branches.size(); ++i) {
            CHECK(a.branches[i].assignment == b.branches[i].assignment);
            CHECK(a.branches[i].condition.equations == b.branches[i].condition.equations);
            CHECK(a.branches[i].condition.inequations == b.branches[i].condition.inequations);
        }
        CHECK(a.init.equations == b.init.equations);
        CHECK(a.guard.unsupported_atoms == b.guard.unsupported_atoms);
        CHECK(pretty_print(a) == pretty_print(b));
    }
}

TEST_CASE("validate_exclusivity") {
    LoopSystem loop = parse_loop(read_file(fixture("twobranch.loop")));
    std::vector<Point> witnesses{{make_rational(0)}, {make_rational(3)}, {make_rational(-2)}};
    CHECK(validate_exclusivity(loop, witnesses).empty());

    LoopSystem overlapping = parse_loop(
        "vars x;\ninit x = 0;\nguard true;\n"
        "branch when true { x := x + 1; }\nbranch when true { x := x - 1; }");
    auto refutations = validate_exclusivity(overlapping, {{make_rational(5)}});
    REQUIRE(refutations.size() == 1);
    CHECK(refutations[0].branch_a == 0);
    CHECK(refutations[0].branch_b == 1);

    LoopSystem single = parse_loop(read_file(fixture("fib.loop")));
    CHECK(validate_exclusivity(single, {{make_rational(1), make_rational(1)}}).empty());
}

TEST_CASE("the parser never crashes on mangled input") {
    // structured mutations of a valid loop plus raw noise; every outcome must
    // be a clean LoopParseError or a parsed loop, never a crash
    std::string base = read_file(fixture("twothree.loop"));
    test_support::Rng rng(20240601);
    int parsed = 0, rejected = 0;
    for (int iter = 0; iter < 400; ++iter) {
        std::string text = base;
        switch (rng.below(4)) {
            case 0:  // delete a span
                if (!text.empty()) {
                    std::size_t at = rng.below(text.size());
                    text.erase(at, rng.below(8) + 1);
                }
                break;
            case 1: {  // flip a character
                if (!text.empty()) {
                    const char alphabet[] = "xyab0123();={}!<>*+-/^ #";
                    text[rng.below(text.size())] = alphabet[rng.below(sizeof alphabet - 1)];
                }
                break;
            }
            case 2: {  // insert noise
                const char* bits[] = {";", "}", "branch", "^^", "1/0", ":=", "when", "\n\n", "=", "~"};
                std::size_t at = rng.below(text.size());
                text.insert(at, bits[rng.below(10)]);
                break;
            }
            case 3:  // truncate
                text.resize(rng.below(text.size() + 1));
                break;
        }
        try {
            parse_loop(text);
            ++parsed;
        } catch (const LoopParseError&) {
            ++rejected;
        } catch (const std::invalid_argument&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 400);
    CHECK(rejected > 100);  // most mutations must be detected as malformed
}

TEST_CASE("polynomial printer and parser agree on random polynomials") {
    test_support::Rng rng(88);
    std::vector<std::string> names{"x", "y", "z"};
    for (int iter = 0; iter < 150; ++iter) {
        Polynomial p = test_support::random_polynomial(rng, 3, 4, 6);
        CHECK(parse_polynomial(p.to_string(names), names) == p);
    }
}

TEST_CASE("parametric init extraction") {
    LoopSystem loop = parse_loop(read_file(fixture("twothree.loop")));
    CHECK(loop.parametric());
    CHECK(*loop.initial_values[0].parameter == 0);
    CHECK(*loop.initial_values[1].parameter == 1);
    CHECK(loop.arity() == 4);
}
