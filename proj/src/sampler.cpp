#include "polyinv/sampler.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace polyinv {

namespace {

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

Point apply_branch(const LoopSystem& loop, std::size_t branch_index, const Point& point) {
    // Simultaneous semantics: every image is evaluated on the pre-state.
    Point next(point);
    for (std::size_t i = 0; i < loop.variables.size(); ++i)
        next[i] = loop.branches[branch_index].assignment[i].evaluate(point);
    return next;
}

void require_mode(const LoopSystem& loop, InvariantMode mode) {
    if (!loop.supports(mode))
        throw ModeUnsupported("loop has order atoms outside the algebraic condition language; mode '" +
                              to_string(mode) + "' is unavailable (use inductive or absolute)");
}

}  // namespace

std::string point_to_string(const Point& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << to_string(p[i]);
    }
    os << ")";
    return os.str();
}

std::vector<Point> step(const LoopSystem& loop, const Point& point, InvariantMode mode) {
    if (point.size() != loop.arity()) throw std::invalid_argument("sample point arity mismatch");
    require_mode(loop, mode);

    if (mode == InvariantMode::absolute) {
        std::vector<Point> out;
        for (std::size_t b = 0; b < loop.branches.size(); ++b) {
            Point img = apply_branch(loop, b, point);
            bool dup = false;
            for (const Point& q : out) dup |= (q == img);
            if (!dup) out.push_back(std::move(img));
        }
        return out;
    }

    if (mode == InvariantMode::plain && !loop.guard.satisfied_at(point)) return {};

    std::size_t enabled = loop.branches.size();
    for (std::size_t b = 0; b < loop.branches.size(); ++b) {
        if (!loop.branches[b].condition.satisfied_at(point)) continue;
        if (enabled != loop.branches.size())
            throw ExclusivityViolation("branch conditions " + std::to_string(enabled) + " and " +
                                       std::to_string(b) + " both hold at " + point_to_string(point));
        enabled = b;
    }
    if (enabled == loop.branches.size()) return {};
    return {apply_branch(loop, enabled, point)};
}

std::vector<Point> sample_points(const LoopSystem& loop, const SampleConfig& cfg) {
    if (cfg.depth < 1 || cfg.num_initials < 1)
        throw std::invalid_argument("sample config requires depth >= 1 and num_initials >= 1");
    require_mode(loop, cfg.mode);

    SplitMix rng{cfg.seed ^ 0x5bf03635ull};
    const std::size_t nv = loop.variables.size();
    const std::size_t np = loop.parameters.size();

    // Parameter constraints: init atoms with every variable replaced by its
    // declared initial value, leaving conditions on the parameters alone.
    std::vector<Polynomial> subst_map;
    for (std::size_t i = 0; i < nv; ++i) {
        const auto& iv = loop.initial_values[i];
        if (iv.constant)
            subst_map.push_back(Polynomial::constant(loop.arity(), *iv.constant));
        else
            subst_map.push_back(Polynomial::variable(loop.arity(), nv + *iv.parameter));
    }
    for (std::size_t j = 0; j < np; ++j)
        subst_map.push_back(Polynomial::variable(loop.arity(), nv + j));

    auto params_admissible = [&](const Point& full) {
        for (const Polynomial& eq : loop.init.equations)
            if (eq.substitute(subst_map).evaluate(full) != 0) return false;
        for (const Polynomial& ne : loop.init.inequations)
            if (ne.substitute(subst_map).evaluate(full) == 0) return false;
        return true;
    };

    // Instantiate initial states.
    std::vector<Point> initials;
    if (np == 0) {
        Point start(loop.arity(), Rational(0));
        for (std::size_t i = 0; i < nv; ++i) start[i] = *loop.initial_values[i].constant;
        if (!params_admissible(start))
            throw std::invalid_argument("init constraints are unsatisfiable at the declared values");
        initials.push_back(std::move(start));
    } else {
        std::set<Point> seen;
        const std::size_t max_attempts = cfg.num_initials * 100;
        std::size_t attempts = 0;
        while (initials.size() < cfg.num_initials) {
            if (++attempts > max_attempts)
                throw std::invalid_argument(
                    "could not instantiate initial parameters after " +
                    std::to_string(max_attempts) + " rejection-sampling attempts");
            Point full(loop.arity(), Rational(0));
            for (std::size_t j = 0; j < np; ++j) {
                long bound = cfg.coordinate_bound;
                long num = static_cast<long>(rng.below(2 * bound + 1)) - bound;
                long den = static_cast<long>(rng.below(bound)) + 1;
                full[nv + j] = make_rational(num, den);
            }
            for (std::size_t i = 0; i < nv; ++i) {
                const auto& iv = loop.initial_values[i];
                full[i] = iv.constant ? *iv.constant : full[nv + *iv.parameter];
            }
            if (!params_admissible(full)) continue;
            if (!seen.insert(full).second) continue;
            initials.push_back(std::move(full));
        }
    }

    // Breadth-first expansion, deduplicated, discovery order.
    std::vector<Point> out;
    std::set<Point> visited;
    for (const Point& start : initials) {
        std::deque<std::pair<Point, std::size_t>> frontier;
        if (visited.insert(start).second) out.push_back(start);
        frontier.emplace_back(start, 0);
        while (!frontier.empty()) {
            auto [p, d] = frontier.front();
            frontier.pop_front();
            if (d == cfg.depth) continue;
            for (Point& q : step(loop, p, cfg.mode)) {
                if (visited.insert(q).second) {
                    out.push_back(q);
                    frontier.emplace_back(std::move(q), d + 1);
                }
            }
        }
    }
    return out;
}

}  // namespace polyinv
