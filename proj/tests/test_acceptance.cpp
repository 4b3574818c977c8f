#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "polyinv/cli_core.hpp"
#include "polyinv/interpolate.hpp"
#include "polyinv/reconstruct.hpp"
#include "polyinv/sampler.hpp"
#include "test_support.hpp"

using namespace polyinv;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(POLYINV_FIXTURE_DIR) + "/" + name; }

/// Collected checks for one acceptance criterion; prints the single
/// pass/fail line the suite is specified to emit.
class Criterion {
public:
    Criterion(int number, std::string name)
        : number_(number), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) failures_.push_back(what);
    }

    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

    ~Criterion() {
        long ms = elapsed_ms();
        std::printf("[acceptance] %d %-28s %s (%ld ms)\n", number_, name_.c_str(),
                    failures_.empty() ? "PASS" : "FAIL", ms);
        for (const std::string& f : failures_) std::printf("              - %s\n", f.c_str());
        std::fflush(stdout);
        CHECK_MESSAGE(failures_.empty(), "criterion " << number_ << " (" << name_ << ")");
    }

private:
    int number_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> failures_;
};

std::vector<Polynomial> parse_candidates(const json& report, const LoopSystem& loop) {
    std::vector<Polynomial> out;
    for (const auto& s : report["result"]["candidates"])
        out.push_back(parse_polynomial(s.get<std::string>(), loop.ring_names()));
    return out;
}

Polynomial fib_quartic() {
    return parse_polynomial("1 - y^4 + 2*x*y^3 + x^2*y^2 - 2*x^3*y - x^4", {"x", "y"});
}

// Certified bases carried into the soundness sweep (criterion 7).
struct CertifiedRun {
    LoopSystem loop;
    std::vector<Polynomial> basis;
    std::size_t inference_depth;
};
std::vector<CertifiedRun> g_certified;

}  // namespace

TEST_CASE("criterion 1: fibonacci reproduction") {
    Criterion crit(1, "fibonacci-reproduction");
    LoopSystem loop = parse_loop(read_file(fixture("fib.loop")));

    for (const char* engine : {"modular", "direct"}) {
        CliOptions opts;
        opts.loop_file = fixture("fib.loop");
        opts.engine = engine;
        opts.degree = 4;
        opts.degree_explicit = true;
        RunReport r = run_infer(opts);
        crit.expect(r.exit_code == 0, std::string(engine) + ": expected exit 0");
        crit.expect(r.payload["status"] == "certified", std::string(engine) + ": not certified");
        auto basis = parse_candidates(r.payload, loop);
        crit.expect(ideal_equal(basis, {fib_quartic()}, MonomialOrder::degrevlex()),
                    std::string(engine) + ": ideal differs from the quartic");
        if (r.exit_code == 0)
            g_certified.push_back(
                {loop, basis, r.payload["result"]["config_effective"]["depth"].get<std::size_t>()});
    }

    for (unsigned degree : {1u, 2u, 3u}) {
        CliOptions opts;
        opts.loop_file = fixture("fib.loop");
        opts.degree = degree;
        opts.degree_explicit = true;
        RunReport r = run_infer(opts);
        crit.expect(r.exit_code == 1, "degree " + std::to_string(degree) + ": expected FAIL");
        crit.expect(r.payload["status"] == "fail-zero-dimension",
                    "degree " + std::to_string(degree) + ": expected an empty nullspace");
        crit.expect(r.payload["result"]["nullspace_dim"] == 0,
                    "degree " + std::to_string(degree) + ": nullspace not empty");
    }
    crit.expect(crit.elapsed_ms() <= 5000, "runtime over 5 s");
}

TEST_CASE("criterion 2: tricky-example reproduction") {
    Criterion crit(2, "tricky-reproduction");
    LoopSystem loop = parse_loop(read_file(fixture("tricky.loop")));
    std::vector<std::string> xyz{"x", "y", "z"};
    std::vector<Polynomial> expected{
        parse_polynomial("x + y + z - 6", xyz),
        parse_polynomial("y^2 + 4*y*z + 4*z^2 - 6*y - 24*z + 20", xyz)};

    CliOptions opts;
    opts.loop_file = fixture("tricky.loop");
    opts.degree = 2;
    opts.degree_explicit = true;
    RunReport r = run_infer(opts);
    crit.expect(r.exit_code == 0 && r.payload["status"] == "certified", "not certified");
    auto basis = parse_candidates(r.payload, loop);
    crit.expect(ideal_equal(basis, expected, MonomialOrder::degrevlex()),
                "certified ideal differs from the published generators");
    crit.expect(r.payload["result"]["ideal_dimension"] == 1, "Groebner dimension is not 1");
    if (r.exit_code == 0)
        g_certified.push_back(
            {loop, basis, r.payload["result"]["config_effective"]["depth"].get<std::size_t>()});

    CliOptions aopts;
    aopts.loop_file = fixture("tricky.loop");
    RunReport a = run_analyze(aopts);
    crit.expect(a.payload["result"]["bounds"]["dimension_window"] == json::array({0, 1}),
                "analyze window is not [0,1]");
    crit.expect(1 >= a.payload["result"]["bounds"]["dimension_window"][0].get<int>() &&
                    1 <= a.payload["result"]["bounds"]["dimension_window"][1].get<int>(),
                "certified dimension outside the analyze window");
    crit.expect(crit.elapsed_ms() <= 5000, "runtime over 5 s");
}

TEST_CASE("criterion 3: non-existence reproduction") {
    Criterion crit(3, "non-existence-reproduction");

    CliOptions aopts;
    aopts.loop_file = fixture("twothree.loop");
    RunReport a = run_analyze(aopts);
    crit.expect(a.payload["result"]["bounds"]["triviality"] == "trivial-for-parametric-init",
                "analyze verdict is not trivial-for-parametric-init");

    for (unsigned degree : {1u, 2u, 3u, 4u}) {
        CliOptions opts;
        opts.loop_file = fixture("twothree.loop");
        opts.degree = degree;
        opts.degree_explicit = true;
        RunReport r = run_infer(opts);
        std::string tag = "degree " + std::to_string(degree) + ": ";
        crit.expect(r.exit_code == 1, tag + "expected FAIL");
        crit.expect(r.payload["status"] == "fail-zero-dimension",
                    tag + "expected zero-dimensional nullspace, got " +
                        r.payload["status"].get<std::string>());
        std::size_t monomials = r.payload["result"]["monomial_count"].get<std::size_t>();
        crit.expect(r.payload["result"]["points_used"].get<std::size_t>() >= monomials + 5,
                    tag + "fewer than |monomials| + 5 points");
        crit.expect(r.payload["result"]["config_effective"]["initials"].get<std::size_t>() >= 3,
                    tag + "fewer than 3 parameter instantiations");
    }
    crit.expect(crit.elapsed_ms() <= 10000, "runtime over 10 s");
}

TEST_CASE("criterion 4: bound fixtures") {
    Criterion crit(4, "bound-fixtures");
    CliOptions opts;
    opts.loop_file = fixture("fib.loop");
    opts.lattice_file = fixture("fib.lattice");
    RunReport r = run_analyze(opts);
    const json& bounds = r.payload["result"]["bounds"];
    crit.expect(r.payload["result"]["ideal"]["degree"] == "4", "deg(M) != 4");
    crit.expect(r.payload["result"]["ideal"]["dimension"] == 1, "dim(M) != 1");
    crit.expect(bounds["bound_sharp"] == "4", "sharp bound != 4");
    crit.expect(fib_quartic().total_degree() <= 4,
                "interpolated generator degree exceeds the bound");
}

TEST_CASE("criterion 5: engine oracle equivalence") {
    Criterion crit(5, "engine-oracle-equivalence");
    test_support::Rng rng(424242);
    int compared = 0, skipped_budget = 0;
    for (int iter = 0; iter < 20; ++iter) {
        LoopSystem loop = test_support::random_single_branch_loop(rng);
        SampleConfig cfg;
        cfg.depth = 4 + iter % 5;  // depth <= 8
        cfg.seed = 1000 + iter;
        auto pts = sample_points(loop, cfg);
        auto monomials =
            monomials_up_to_degree(loop.variables.size(), 2, MonomialOrder::degrevlex());
        InterpOptions opt;
        opt.max_images = 2000;
        opt.max_primes_examined = 4096;
        opt.budget.max_pairs = 3000;
        opt.budget.max_degree = 24;
        InterpResult direct, modular;
        try {
            direct = plain_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
        } catch (const BudgetExceeded&) {
            ++skipped_budget;
            continue;
        }
        if (direct.status == InterpStatus::fail_budget) {
            ++skipped_budget;
            continue;
        }
        try {
            modular = modp_inv_interp(monomials, pts, loop, InvariantMode::inductive, opt);
        } catch (const BudgetExceeded&) {
            modular.status = InterpStatus::fail_budget;
        }
        std::string tag = "loop " + std::to_string(iter) + ": ";
        crit.expect(modular.status != InterpStatus::fail_reconstruction,
                    tag + "modular reconstruction did not stabilize");
        crit.expect(direct.nullspace_dim == modular.nullspace_dim,
                    tag + "nullspace dimensions differ");
        if (direct.nullspace_dim > 0 && modular.nullspace.rows() > 0) {
            crit.expect(rowspace_equal(direct.nullspace, modular.nullspace),
                        tag + "row spaces differ");
        }
        if (direct.certified() && modular.certified() && direct.basis.size() <= 8)
            g_certified.push_back({loop, direct.basis, cfg.depth});
        ++compared;
    }
    crit.expect(compared >= 15, "too few loops completed within budget");
    crit.expect(crit.elapsed_ms() <= 60000, "runtime over 60 s");
    (void)skipped_budget;
}

TEST_CASE("criterion 6: reconstruction round trip") {
    Criterion crit(6, "reconstruction-round-trip");
    test_support::Rng rng(777);
    const std::uint64_t p1 = max_machine_prime();
    const std::uint64_t p2 = prev_prime(p1);
    const Integer m1(static_cast<unsigned long>(p1));
    const Integer m2(static_cast<unsigned long>(p2));

    auto residue_of = [](const Rational& q, const Integer& m) {
        Integer binv;
        mpz_invert(binv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t());
        Integer r = (q.get_num() * binv) % m;
        if (r < 0) r += m;
        return r;
    };

    int exact = 0;
    for (int i = 0; i < 1000; ++i) {
        Rational q = make_rational(rng.signed_below(1000000),
                                   static_cast<long>(rng.below(1000000)) + 1);
        // two machine primes: far more modulus than the bound needs
        Integer m = m1 * m2;
        Integer res = crt_combine({residue_of(q, m1), residue_of(q, m2)}, {m1, m2});
        auto rec = rational_reconstruct(res, m);
        if (rec && *rec == q) ++exact;
    }
    crit.expect(exact == 1000, "only " + std::to_string(exact) + "/1000 recovered exactly");

    // Under-supplied: entries too large for one prime must either FAIL or be
    // caught by the congruence check against a held-out image.
    int silent_wrong = 0, failed = 0, caught = 0, lucky = 0;
    for (int i = 0; i < 1000; ++i) {
        Integer num = Integer(static_cast<unsigned long>(rng.next() % 1000000000000000ull)) + 1;
        Integer den = Integer(static_cast<unsigned long>(rng.next() % 1000000000000000ull)) + 1;
        if (rng.below(2)) num = -num;
        Rational q(num, den);
        q.canonicalize();
        auto rec = rational_reconstruct(residue_of(q, m1), m1);
        if (!rec) {
            ++failed;
            continue;
        }
        if (*rec == q) {
            ++lucky;  // it really was within the one-prime bound
            continue;
        }
        // per-prime congruence against the held-out image
        Integer lhs = (rec->get_num() - residue_of(q, m2) * rec->get_den()) % m2;
        if (lhs != 0) {
            ++caught;
        } else {
            ++silent_wrong;
        }
    }
    crit.expect(silent_wrong == 0,
                std::to_string(silent_wrong) + " silent wrong reconstructions");
    crit.expect(failed + caught > 0, "under-supplied cases never exercised the guards");
}

TEST_CASE("criterion 7: checker soundness sweep") {
    Criterion crit(7, "checker-soundness-sweep");
    crit.expect(!g_certified.empty(), "no certified bases were collected");
    for (std::size_t i = 0; i < g_certified.size(); ++i) {
        const CertifiedRun& run = g_certified[i];
        SampleConfig cfg;
        cfg.depth = run.inference_depth * 3;
        auto points = sample_points(run.loop, cfg);
        for (const Polynomial& f : run.basis)
            for (const Point& p : points)
                if (f.evaluate(p) != 0) {
                    crit.expect(false, "basis " + std::to_string(i) +
                                           " does not vanish at 3x inference depth");
                    break;
                }
    }

    // planted non-invariant on fibonacci
    LoopSystem fib = parse_loop(read_file(fixture("fib.loop")));
    SampleConfig cfg;
    cfg.depth = 12;
    auto points = sample_points(fib, cfg);
    auto cex = falsify_by_samples(fib, {parse_polynomial("x - y", {"x", "y"})}, points,
                                  InvariantMode::inductive);
    crit.expect(cex.has_value(), "falsifier missed the planted non-invariant x - y");
}

TEST_CASE("criterion 8: cubic-loop feasibility envelope") {
    Criterion crit(8, "cubic-loop-feasibility");
    CliOptions opts;
    opts.loop_file = fixture("cohencu.loop");
    opts.degree = 3;
    opts.degree_explicit = true;
    RunReport r = run_infer(opts);
    crit.expect(r.exit_code == 0 && r.payload["status"] == "certified",
                "cohencu inference did not certify");
    LoopSystem loop = parse_loop(read_file(fixture("cohencu.loop")));
    auto basis = parse_candidates(r.payload, loop);
    // the classic closed-form invariants are members of the certified ideal
    std::vector<std::string> names{"n", "x", "y", "z"};
    for (const char* inv : {"z - 6*n - 6", "y - 3*n^2 - 3*n - 1", "x - n^3"}) {
        crit.expect(member(parse_polynomial(inv, names), basis),
                    std::string("missing invariant: ") + inv);
    }
    crit.expect(crit.elapsed_ms() <= 60000, "runtime over 60 s");
}
