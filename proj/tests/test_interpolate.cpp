#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyinv/cli_core.hpp"
#include "polyinv/interpolate.hpp"
#include "polyinv/sampler.hpp"
#include "test_support.hpp"

using namespace polyinv;

namespace {
std::string fixture(const std::string& name) { return std::string(POLYINV_FIXTURE_DIR) + "/" + name; }

std::vector<Point> fib_points(std::size_t depth) {
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));
    SampleConfig cfg;
    cfg.depth = depth;
    return sample_points(loop, cfg);
}

InterpOptions options_for(const LoopSystem& loop, const SampleConfig& cfg) {
    InterpOptions opt;
    SampleConfig fresh = cfg;
    fresh.depth = cfg.depth * 2;
    opt.fresh_points = sample_points(loop, fresh);
    return opt;
}
}  // namespace

TEST_CASE("build_lin_sys evaluates monomials at points") {
    auto monomials = monomials_up_to_degree(2, 1, MonomialOrder::degrevlex());  // 1, y, x
    std::vector<Point> pts{{make_rational(1), make_rational(2)}, {make_rational(3), make_rational(4)}};
    LinSys sys = build_lin_sys(monomials, pts);
    REQUIRE(sys.matrix.rows() == 2);
    REQUIRE(sys.matrix.cols() == 3);
    // degrevlex ascending: 1, then y, then x
    CHECK(sys.matrix.at(0, 0) == 1);
    CHECK(sys.matrix.at(0, 1) == 2);
    CHECK(sys.matrix.at(0, 2) == 1);
    CHECK(sys.matrix.at(1, 1) == 4);
    CHECK(sys.matrix.at(1, 2) == 3);

    Monomial x2(std::vector<unsigned>{2});
    LinSys sq = build_lin_sys({x2}, {{make_rational(3)}});
    CHECK(sq.matrix.at(0, 0) == 9);
}

TEST_CASE("fibonacci degree-4 matrix has corank exactly one") {
    auto monomials = monomials_up_to_degree(2, 4, MonomialOrder::degrevlex());
    REQUIRE(monomials.size() == 15);
    auto pts = fib_points(19);
    REQUIRE(pts.size() == 20);
    LinSys sys = build_lin_sys(monomials, pts);
    CHECK(rank(sys.matrix) == 14);
    // cross-check over a random prime
    FpMatrix f = reduce_matrix_mod(sys.matrix, PrimeField(1000003));
    CHECK(reduced_row_echelon(f).pivots.size() == 14);
}

TEST_CASE("build_lin_sys_modp inverts denominators") {
    auto monomials = monomials_up_to_degree(1, 1, MonomialOrder::degrevlex());  // 1, x
    std::vector<Point> pt{{make_rational(1, 3)}};
    LinSysModp sys = build_lin_sys_modp(monomials, pt, 97);
    CHECK(sys.matrix.at(0, 0) == 1);
    CHECK(sys.matrix.at(0, 1) == 65);  // 3^{-1} mod 97

    CHECK_THROWS_AS(build_lin_sys_modp(monomials, pt, 3), UnluckyPrimeError);

    std::vector<Point> ints{{make_rational(12)}};
    CHECK(build_lin_sys_modp(monomials, ints, 7).matrix.at(0, 1) == 5);
}

TEST_CASE("gen_poly") {
    Monomial x2({2, 0}), xy({1, 1}), one({0, 0});
    Polynomial p = gen_poly({x2, xy, one},
                            {make_rational(1), make_rational(-1), make_rational(0)});
    CHECK(p == parse_polynomial("x^2 - x*y", {"x", "y"}));
    CHECK(gen_poly({x2, xy, one}, {make_rational(0), make_rational(0), make_rational(0)}).is_zero());
}

TEST_CASE("plain_inv_interp reproduces the fibonacci quartic") {
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));
    SampleConfig cfg;
    cfg.depth = 21;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(2, 4, MonomialOrder::degrevlex());
    InterpResult r = plain_inv_interp(monomials, pts, loop, InvariantMode::inductive,
                                      options_for(loop, cfg));
    REQUIRE(r.certified());
    REQUIRE(r.nullspace_dim == 1);
    Polynomial quartic =
        parse_polynomial("1 - y^4 + 2*x*y^3 + x^2*y^2 - 2*x^3*y - x^4", {"x", "y"});
    CHECK(ideal_equal(r.basis, {quartic}, MonomialOrder::degrevlex()));

    // returned candidates vanish on inputs and the deeper fresh batch
    SampleConfig deep = cfg;
    deep.depth = cfg.depth * 2;
    for (const Point& p : sample_points(loop, deep))
        for (const Polynomial& f : r.basis) CHECK(f.evaluate(p) == 0);
}

TEST_CASE("plain_inv_interp fails with empty nullspace at degree 1") {
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));
    SampleConfig cfg;
    cfg.depth = 10;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(2, 1, MonomialOrder::degrevlex());
    InterpResult r = plain_inv_interp(monomials, pts, loop, InvariantMode::inductive);
    CHECK(r.status == InterpStatus::fail_zero_dimension);
    CHECK(r.nullspace_dim == 0);

    // no linear relation already on the first four points: full column rank
    std::vector<Point> four(pts.begin(), pts.begin() + 4);
    CHECK(rank(build_lin_sys(monomials, four).matrix) == 3);
}

TEST_CASE("constant loop x := x certifies x - 1 at degree 1") {
    LoopSystem loop = parse_loop(read_file(fixture("constant.loop")));
    SampleConfig cfg;
    cfg.depth = 3;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(1, 1, MonomialOrder::degrevlex());
    InterpResult r =
        plain_inv_interp(monomials, pts, loop, InvariantMode::inductive, options_for(loop, cfg));
    REQUIRE(r.certified());
    CHECK(ideal_equal(r.basis, {parse_polynomial("x - 1", {"x"})}, MonomialOrder::degrevlex()));
}

TEST_CASE("modular engine matches the direct engine on fibonacci") {
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));
    SampleConfig cfg;
    cfg.depth = 21;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(2, 4, MonomialOrder::degrevlex());
    InterpOptions opt = options_for(loop, cfg);
    InterpResult direct = plain_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
    InterpResult modular = modp_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
    REQUIRE(direct.certified());
    REQUIRE(modular.certified());
    CHECK(rowspace_equal(direct.nullspace, modular.nullspace));
    CHECK(ideal_equal(direct.basis, modular.basis, MonomialOrder::degrevlex()));
    CHECK(!modular.primes_used.empty());
    CHECK(modular.primes_used[0] == max_machine_prime());

    // the reconstructed nullspace is congruent to each retained image
    for (std::uint64_t p : modular.primes_used) {
        LinSysModp sys = build_lin_sys_modp(monomials, pts, p);
        CHECK(congruent_mod(modular.nullspace, nullspace_echelon(sys.matrix)));
    }
}

TEST_CASE("modular engine recovers the tricky ideal at degree 2") {
    LoopSystem loop = parse_loop(read_file(fixture("tricky.loop")));
    SampleConfig cfg;
    cfg.depth = 16;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(3, 2, MonomialOrder::degrevlex());
    InterpResult r =
        modp_inv_interp(monomials, pts, loop, InvariantMode::inductive, options_for(loop, cfg));
    REQUIRE(r.certified());
    std::vector<std::string> xyz{"x", "y", "z"};
    std::vector<Polynomial> expected{
        parse_polynomial("x + y + z - 6", xyz),
        parse_polynomial("y^2 + 4*y*z + 4*z^2 - 6*y - 24*z + 20", xyz)};
    CHECK(ideal_equal(r.basis, expected, MonomialOrder::degrevlex()));
}

TEST_CASE("parametric non-existence: zero-dimensional nullspace") {
    LoopSystem loop = parse_loop(read_file(fixture("twothree.loop")));
    SampleConfig cfg;
    cfg.depth = 12;
    cfg.num_initials = 7;  // each instantiation only contributes ~6 modes at degree 2
    cfg.seed = 5;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(4, 2, MonomialOrder::degrevlex());
    REQUIRE(pts.size() >= monomials.size() + 5);
    InterpResult r = modp_inv_interp(monomials, pts, loop, InvariantMode::inductive);
    CHECK(r.status == InterpStatus::fail_zero_dimension);
    CHECK(r.nullspace_dim == 0);

    // With too few instantiations the nullspace is spuriously positive, but
    // the gate still refuses to certify the junk candidates.
    SampleConfig thin = cfg;
    thin.num_initials = 3;
    auto thin_pts = sample_points(loop, thin);
    InterpOptions opt;
    SampleConfig fresh = thin;
    fresh.depth = thin.depth * 2;
    opt.fresh_points = sample_points(loop, fresh);
    InterpResult junk = modp_inv_interp(monomials, thin_pts, loop, InvariantMode::inductive, opt);
    CHECK(junk.nullspace_dim > 0);
    CHECK(junk.status == InterpStatus::fail_certification);
}

TEST_CASE("a denominator hitting the working prime skips that prime") {
    // initial value 1/p for the largest machine prime: the first image is
    // unlucky by construction and the driver moves to smaller primes.
    std::uint64_t p = max_machine_prime();
    std::string src = "vars x;\ninit x = 1/" + std::to_string(p) +
                      ";\nguard true;\nbranch when true { x := x; }";
    LoopSystem loop = parse_loop(src);
    SampleConfig cfg;
    cfg.depth = 2;
    auto pts = sample_points(loop, cfg);
    auto monomials = monomials_up_to_degree(1, 1, MonomialOrder::degrevlex());
    InterpOptions opt;
    opt.fresh_points = pts;
    InterpResult r = modp_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
    REQUIRE(r.certified());
    for (std::uint64_t used : r.primes_used) CHECK(used != p);
    // primes descend strictly
    for (std::size_t i = 1; i < r.primes_used.size(); ++i)
        CHECK(r.primes_used[i] < r.primes_used[i - 1]);
    // the candidate really is x - 1/p, whose denominator forced several images
    CHECK(r.primes_used.size() >= 3);
    Polynomial expected = Polynomial::variable(1, 0) -
                          Polynomial::constant(1, Rational(1, Integer(static_cast<unsigned long>(p))));
    CHECK(ideal_equal(r.basis, {expected}, MonomialOrder::degrevlex()));
}

TEST_CASE("engine row-space equivalence on random loops") {
    test_support::Rng rng(2024);
    int done = 0;
    for (int iter = 0; iter < 8; ++iter) {
        LoopSystem loop = test_support::random_single_branch_loop(rng);
        SampleConfig cfg;
        cfg.depth = 4 + iter % 5;  // depth <= 8
        cfg.seed = 7 + iter;
        auto pts = sample_points(loop, cfg);
        auto monomials =
            monomials_up_to_degree(loop.variables.size(), 2, MonomialOrder::degrevlex());
        // Kernel entries can be enormous; give the modular engine room.
        InterpOptions opt;
        opt.max_images = 1500;
        opt.budget.max_pairs = 3000;
        opt.budget.max_degree = 24;
        InterpResult direct, modular;
        try {
            direct = plain_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
            modular = modp_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
        } catch (const BudgetExceeded&) {
            continue;
        }
        if (direct.status == InterpStatus::fail_budget ||
            modular.status == InterpStatus::fail_budget)
            continue;
        CHECK(direct.nullspace_dim == modular.nullspace_dim);
        CHECK(modular.status != InterpStatus::fail_reconstruction);
        if (direct.nullspace_dim > 0 && modular.nullspace_dim > 0)
            CHECK(rowspace_equal(direct.nullspace, modular.nullspace));
        ++done;
    }
    CHECK(done >= 5);  // most random loops must actually complete
}
