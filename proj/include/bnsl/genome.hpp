#ifndef BNSL_GENOME_HPP
#define BNSL_GENOME_HPP

#include <cstdint>
#include <vector>

#include "bnsl/dag.hpp"

namespace bnsl {

/// Flat bit-vector encoding of a DAG: bits has length n*n and bit b set means
/// the edge (b / n) -> (b % n) is present. Diagonal bits must stay zero and
/// the decoded graph must be acyclic.
struct Genome {
    NodeId n = 0;
    std::vector<std::uint8_t> bits;  // n*n, values 0/1

    bool operator==(const Genome&) const = default;
};

/// Decodes a genome into a Dag with default labels. Throws GraphError when a
/// diagonal bit is set or the decoded edge set contains a cycle.
Dag decode(const Genome& genome);

/// Inverse of decode; encode(decode(g)) == g for every valid genome.
Genome encode(const Dag& dag);

}  // namespace bnsl

#endif  // BNSL_GENOME_HPP
