#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyinv/loop_model.hpp"

namespace polyinv {

/// Two branch conditions held at the same visited state in plain/inductive
/// mode; carries the offending point in printable form.
struct ExclusivityViolation : std::runtime_error {
    explicit ExclusivityViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ModeUnsupported : std::runtime_error {
    explicit ModeUnsupported(const std::string& what) : std::runtime_error(what) {}
};

struct SampleConfig {
    InvariantMode mode = InvariantMode::inductive;
    std::size_t depth = 12;          // max steps per trajectory
    std::size_t num_initials = 3;    // parameter instantiations (parametric loops)
    std::uint64_t seed = 1;
    long coordinate_bound = 20;      // |num|, den bound for random parameter values
};

/// Successor states of one point under the mode's semantics.
///   plain:     empty if the guard fails, else the unique enabled branch
///   inductive: guard ignored, unique enabled branch (none -> no successor)
///   absolute:  images of all branches, conditions ignored
std::vector<Point> step(const LoopSystem& loop, const Point& point, InvariantMode mode);

/// Deduplicated breadth-first collection of all states reachable within
/// cfg.depth steps from each instantiated initial state. Deterministic for
/// fixed (loop, cfg). Points carry parameter values as trailing coordinates.
std::vector<Point> sample_points(const LoopSystem& loop, const SampleConfig& cfg);

std::string point_to_string(const Point& p);

}  // namespace polyinv
