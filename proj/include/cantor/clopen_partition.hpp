#pragma once

// Inductive construction of n-block clopen partitions of a clopen subset of
// the code space: the last block is repeatedly split into a cylinder v around
// its smallest point and the remainder.

#include <span>
#include <string>
#include <vector>

#include "cantor/code_space.hpp"

namespace cantor {

class PartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PartitionBlock;

struct Partition {
    ClopenSet carrier;
    std::vector<PartitionBlock> blocks;

    std::size_t size() const noexcept { return blocks.size(); }

    /// Leaf blocks in order, with refined blocks replaced by their sub-blocks.
    std::vector<ClopenSet> leaves() const;

    /// Top-level block sets.
    std::vector<ClopenSet> block_sets() const;
};

struct PartitionBlock {
    ClopenSet set;
    /// Present once the block has been refined; its carrier equals `set`.
    std::vector<Partition> refinement;  // zero or one element
};

/// The cylinder v of the splitting step: shortest cylinder inside `block`
/// that contains its smallest point and not its largest.
Cylinder splitting_cylinder(const ClopenSet& block);

/// n-block partition of `carrier`. Block order follows the induction:
/// {S_1, ..., S_{n-2}, v, S_{n-1} - v}.
Partition build_partition(const ClopenSet& carrier, int n);

/// Copy of `p` in which the block reached by `path` (0-based indices, each
/// step descending into a refinement) is itself partitioned into n blocks.
Partition refine_block(const Partition& p, std::span<const std::size_t> path, int n);
Partition refine_block(const Partition& p, std::size_t index, int n);

struct PartitionLaws {
    bool disjoint = true;
    bool covers = true;
    bool non_empty = true;
    bool canonical = true;
    bool splittable = true;  // every block holds two distinct points
    bool refinements_valid = true;

    bool all() const { return disjoint && covers && non_empty && canonical && splittable && refinements_valid; }
    std::string describe() const;
};

/// Exact check of the partition laws, recursively through refinements.
PartitionLaws check_partition(const Partition& p);

} // namespace cantor
