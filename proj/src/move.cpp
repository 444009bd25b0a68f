#include "bnsl/move.hpp"

#include "bnsl/errors.hpp"

namespace bnsl {

Move reversal_of(const Move& m) {
    switch (m.kind) {
        case MoveKind::Add:
            return {MoveKind::Delete, m.from, m.to};
        case MoveKind::Delete:
            return {MoveKind::Add, m.from, m.to};
        case MoveKind::Reverse:
            return {MoveKind::Reverse, m.to, m.from};
    }
    throw InternalError("reversal_of: bad move kind");
}

void apply_move(Dag& dag, const Move& m) {
    switch (m.kind) {
        case MoveKind::Add:
            dag.add_edge(m.from, m.to);
            return;
        case MoveKind::Delete:
            dag.remove_edge(m.from, m.to);
            return;
        case MoveKind::Reverse:
            dag.remove_edge(m.from, m.to);
            dag.add_edge(m.to, m.from);
            return;
    }
    throw InternalError("apply_move: bad move kind");
}

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::Add:
            return "add";
        case MoveKind::Delete:
            return "delete";
        case MoveKind::Reverse:
            return "reverse";
    }
    throw InternalError("to_string: bad move kind");
}

std::string to_string(const Move& m) {
    return to_string(m.kind) + "(" + std::to_string(m.from) + "->" + std::to_string(m.to) + ")";
}

}  // namespace bnsl
