#ifndef BNSL_MOVE_HPP
#define BNSL_MOVE_HPP

#include <string>

#include "bnsl/dag.hpp"

namespace bnsl {

enum class MoveKind { Add, Delete, Reverse };

/// Single-edge modification of a DAG.
struct Move {
    MoveKind kind = MoveKind::Add;
    NodeId from = 0;
    NodeId to = 0;

    auto operator<=>(const Move&) const = default;
};

/// The move whose application undoes `m` (Add<->Delete, Reverse flips).
Move reversal_of(const Move& m);

/// Applies `m` to `dag`; throws GraphError when not applicable.
void apply_move(Dag& dag, const Move& m);

std::string to_string(MoveKind kind);
std::string to_string(const Move& m);

}  // namespace bnsl

#endif  // BNSL_MOVE_HPP
