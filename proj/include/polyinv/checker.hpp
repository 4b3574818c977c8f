#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyinv/groebner.hpp"
#include "polyinv/loop_model.hpp"
#include "polyinv/sampler.hpp"

namespace polyinv {

enum class CertStatus { certified, failed_initial, failed_branch, budget_exceeded, mode_unsupported };

std::string to_string(CertStatus s);

struct CertificationReport {
    CertStatus status = CertStatus::certified;
    int failed_branch_index = -1;            // when status == failed_branch
    std::vector<bool> initial_ok;            // per candidate polynomial
    std::vector<std::vector<bool>> branch_ok;  // [branch][candidate]
    std::string detail;
    // Division records for the initial-value memberships, kept as
    // re-expandable certificates.
    std::vector<DivisionRecord> initial_certificates;

    bool certified() const { return status == CertStatus::certified; }
};

/// Initial-value inclusion: every candidate must lie in the ideal generated
/// by the init equations, localized at the init inequations.
bool check_initial(const std::vector<Polynomial>& candidates, const ConstraintSet& init,
                   const GroebnerBudget& budget = {});

/// Consecution for one branch: for every f, the composed f(A(x)) must lie in
/// <candidates + condition equations>, localized at the condition
/// inequations. `condition` already reflects the invariant mode.
bool check_consecution(const std::vector<Polynomial>& candidates,
                       const std::vector<Polynomial>& images, const ConstraintSet& condition,
                       const GroebnerBudget& budget = {});

/// Full certification: initial inclusion plus consecution for every branch,
/// with branch conditions ignored in absolute mode and the guard added in
/// plain mode. Certified implies every candidate is an invariant of the
/// requested kind.
CertificationReport certify(const LoopSystem& loop, const std::vector<Polynomial>& candidates,
                            InvariantMode mode, const GroebnerBudget& budget = {});

struct Counterexample {
    Point point;
    std::size_t branch_index;
    std::size_t candidate_index;
};

/// Cheap necessary-condition probe: a sampled point on the common zero set
/// whose enabled-branch image leaves it refutes invariance.
std::optional<Counterexample> falsify_by_samples(const LoopSystem& loop,
                                                 const std::vector<Polynomial>& candidates,
                                                 const std::vector<Point>& points,
                                                 InvariantMode mode);

}  // namespace polyinv
