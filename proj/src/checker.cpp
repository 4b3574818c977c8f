#include "polyinv/checker.hpp"

namespace polyinv {

std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::certified: return "certified";
        case CertStatus::failed_initial: return "failed-initial";
        case CertStatus::failed_branch: return "failed-branch";
        case CertStatus::budget_exceeded: return "budget-exceeded";
        case CertStatus::mode_unsupported: return "mode-unsupported";
    }
    return "?";
}

bool check_initial(const std::vector<Polynomial>& candidates, const ConstraintSet& init,
                   const GroebnerBudget& budget) {
    for (const Polynomial& f : candidates)
        if (!member_saturated(f, init.equations, init.inequations, budget)) return false;
    return true;
}

bool check_consecution(const std::vector<Polynomial>& candidates,
                       const std::vector<Polynomial>& images, const ConstraintSet& condition,
                       const GroebnerBudget& budget) {
    std::vector<Polynomial> gens = candidates;
    gens.insert(gens.end(), condition.equations.begin(), condition.equations.end());
    for (const Polynomial& f : candidates) {
        Polynomial composed = f.substitute(images);
        if (!member_saturated(composed, gens, condition.inequations, budget)) return false;
    }
    return true;
}

namespace {

// One Groebner basis per branch, shared by all candidates; candidates only
// get reduced against it.
struct BranchChecker {
    GroebnerBasis gb;
    std::size_t base_arity;

    static BranchChecker build(const std::vector<Polynomial>& candidates,
                               const ConstraintSet& condition, const GroebnerBudget& budget) {
        const std::size_t base = candidates.empty() ? condition.equations.at(0).arity()
                                                    : candidates[0].arity();
        const std::size_t ext = base + condition.inequations.size();
        std::vector<Polynomial> gens;
        for (const Polynomial& f : candidates) gens.push_back(f.extended(ext));
        for (const Polynomial& e : condition.equations) gens.push_back(e.extended(ext));
        for (std::size_t k = 0; k < condition.inequations.size(); ++k) {
            Polynomial t = Polynomial::variable(ext, base + k);
            gens.push_back(t * condition.inequations[k].extended(ext) -
                           Polynomial::constant(ext, Rational(1)));
        }
        return {buchberger(gens, MonomialOrder::degrevlex(), budget), base};
    }

    bool contains(const Polynomial& p) const {
        if (p.is_zero()) return true;
        return normal_form(p.extended(gb.arity()), gb).is_zero();
    }
};

}  // namespace

CertificationReport certify(const LoopSystem& loop, const std::vector<Polynomial>& candidates,
                            InvariantMode mode, const GroebnerBudget& budget) {
    CertificationReport report;
    report.initial_ok.assign(candidates.size(), false);
    report.branch_ok.assign(loop.branches.size(), std::vector<bool>(candidates.size(), false));
    if (candidates.empty()) return report;  // vacuously certified

    if (mode != InvariantMode::absolute && !loop.supports(mode)) {
        report.status = CertStatus::mode_unsupported;
        report.detail = "loop conditions contain order atoms; mode '" + to_string(mode) +
                        "' cannot be certified";
        return report;
    }

    try {
        // Initial-value inclusion.
        GroebnerBasis init_gb = [&] {
            const std::size_t base = loop.arity();
            const std::size_t ext = base + loop.init.inequations.size();
            std::vector<Polynomial> gens;
            for (const Polynomial& e : loop.init.equations) gens.push_back(e.extended(ext));
            for (std::size_t k = 0; k < loop.init.inequations.size(); ++k) {
                Polynomial t = Polynomial::variable(ext, base + k);
                gens.push_back(t * loop.init.inequations[k].extended(ext) -
                               Polynomial::constant(ext, Rational(1)));
            }
            return buchberger(gens, MonomialOrder::degrevlex(), budget);
        }();
        bool initial_all = true;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            DivisionRecord rec = normal_form_with_record(candidates[i].extended(init_gb.arity()), init_gb);
            report.initial_ok[i] = rec.remainder.is_zero();
            report.initial_certificates.push_back(std::move(rec));
            initial_all &= report.initial_ok[i];
        }
        if (!initial_all) {
            report.status = CertStatus::failed_initial;
            report.detail = "a candidate does not vanish on the initial variety";
            return report;
        }

        for (std::size_t b = 0; b < loop.branches.size(); ++b) {
            ConstraintSet condition;  // absolute: empty
            if (mode != InvariantMode::absolute) condition = loop.branches[b].condition;
            if (mode == InvariantMode::plain) {
                condition.equations.insert(condition.equations.end(), loop.guard.equations.begin(),
                                           loop.guard.equations.end());
                condition.inequations.insert(condition.inequations.end(),
                                             loop.guard.inequations.begin(),
                                             loop.guard.inequations.end());
            }
            BranchChecker checker = BranchChecker::build(candidates, condition, budget);
            const std::vector<Polynomial> images = loop.branch_images(b);
            bool branch_all = true;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                report.branch_ok[b][i] = checker.contains(candidates[i].substitute(images));
                branch_all &= report.branch_ok[b][i];
            }
            if (!branch_all) {
                report.status = CertStatus::failed_branch;
                report.failed_branch_index = static_cast<int>(b);
                report.detail = "consecution fails on branch " + std::to_string(b);
                return report;
            }
        }
    } catch (const BudgetExceeded& e) {
        report.status = CertStatus::budget_exceeded;
        report.detail = e.what();
        return report;
    }

    report.status = CertStatus::certified;
    return report;
}

std::optional<Counterexample> falsify_by_samples(const LoopSystem& loop,
                                                 const std::vector<Polynomial>& candidates,
                                                 const std::vector<Point>& points,
                                                 InvariantMode mode) {
    if (candidates.empty()) return std::nullopt;
    for (const Point& alpha : points) {
        bool on_variety = true;
        for (const Polynomial& f : candidates)
            if (f.evaluate(alpha) != 0) {
                on_variety = false;
                break;
            }
        if (!on_variety) continue;
        for (std::size_t b = 0; b < loop.branches.size(); ++b) {
            if (mode != InvariantMode::absolute) {
                const ConstraintSet& cond = loop.branches[b].condition;
                if (!cond.algebraic() || !cond.satisfied_at(alpha)) continue;
                if (mode == InvariantMode::plain &&
                    (!loop.guard.algebraic() || !loop.guard.satisfied_at(alpha)))
                    continue;
            }
            Point beta(alpha);
            for (std::size_t i = 0; i < loop.variables.size(); ++i)
                beta[i] = loop.branches[b].assignment[i].evaluate(alpha);
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (candidates[i].evaluate(beta) != 0) return Counterexample{alpha, b, i};
        }
    }
    return std::nullopt;
}

}  // namespace polyinv
