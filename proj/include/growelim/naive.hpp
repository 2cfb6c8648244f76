#pragma once

// Reference solvers. Both are quadratic and exist to be trusted: every faster
// algorithm is checked against them.

#include "growelim/core.hpp"

namespace growelim {

/// Priority-order solver: shape i is eliminated by the argmin over j < i of
/// t(i, j) among the j still alive at that time (ties go to the smaller j).
/// The inner reduction over j runs in parallel with OpenMP.
EliminationSchedule solve_naive(const Instance& inst);

/// Single-threaded version of solve_naive kept as the reference kernel.
EliminationSchedule solve_naive_serial(const Instance& inst);

struct EventQueueEntry {
  TouchTime time = kNever;
  Index eliminator = 0;  ///< higher-priority shape of the pair
  Index victim = 0;
};

/// The simulation materialises every pair, so it refuses larger inputs.
inline constexpr std::size_t kSimulationLimit = 20000;

/// Event simulation: pops all pairwise touching events in time order and
/// applies those whose two shapes are both still present.
EliminationSchedule solve_simulation(const Instance& inst);

}  // namespace growelim
