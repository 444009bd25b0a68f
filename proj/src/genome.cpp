#include "bnsl/genome.hpp"

#include <string>

#include "bnsl/errors.hpp"

namespace bnsl {

Dag decode(const Genome& genome) {
    const NodeId n = genome.n;
    if (n < 1) throw GraphError("decode: genome node count must be at least 1");
    if (genome.bits.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw GraphError("decode: genome has " + std::to_string(genome.bits.size()) +
                         " bits, expected " + std::to_string(n) + "^2");
    Dag dag(n);
    for (std::size_t b = 0; b < genome.bits.size(); ++b) {
        if (!genome.bits[b]) continue;
        if (genome.bits[b] != 1) throw GraphError("decode: non-binary genome entry");
        const NodeId from = static_cast<NodeId>(b / static_cast<std::size_t>(n));
        const NodeId to = static_cast<NodeId>(b % static_cast<std::size_t>(n));
        if (from == to)
            throw GraphError("decode: self-loop bit at locus " + std::to_string(b));
        if (would_create_cycle(dag.index(), from, to))
            throw GraphError("decode: genome encodes a cyclic graph (locus " +
                             std::to_string(b) + ")");
        dag.add_edge(from, to);
    }
    return dag;
}

Genome encode(const Dag& dag) {
    const NodeId n = dag.node_count();
    Genome genome;
    genome.n = n;
    genome.bits.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (const auto& [from, to] : dag.edges())
        genome.bits[static_cast<std::size_t>(from) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(to)] = 1;
    return genome;
}

}  // namespace bnsl
