#include "cantor/clopen_partition.hpp"

#include <sstream>

namespace cantor {

std::vector<ClopenSet> Partition::leaves() const {
    std::vector<ClopenSet> out;
    for (const auto& b : blocks) {
        if (b.refinement.empty()) {
            out.push_back(b.set);
        } else {
            auto sub = b.refinement.front().leaves();
            out.insert(out.end(), sub.begin(), sub.end());
        }
    }
    return out;
}

std::vector<ClopenSet> Partition::block_sets() const {
    std::vector<ClopenSet> out;
    for (const auto& b : blocks)
        out.push_back(b.set);
    return out;
}

Cylinder splitting_cylinder(const ClopenSet& block) {
    const Address a = block.min_point();
    const Address b = block.max_point();
    if (a == b)
        throw PartitionError("cannot split singleton");
    for (std::size_t k = 0;; ++k) {
        Cylinder v(a.head(k));
        if (!v.contains(b) && block.contains(v))
            return v;
    }
}

Partition build_partition(const ClopenSet& carrier, int n) {
    if (n < 1)
        throw PartitionError("partition needs at least one block");
    if (carrier.empty())
        throw PartitionError("empty carrier");
    Partition p{carrier, {PartitionBlock{carrier, {}}}};
    while (static_cast<int>(p.blocks.size()) < n) {
        ClopenSet last = std::move(p.blocks.back().set);
        p.blocks.pop_back();
        const Cylinder v = splitting_cylinder(last);
        ClopenSet vs(std::vector<Cylinder>{v});
        ClopenSet rest = clopen_complement(vs, last);
        p.blocks.push_back({std::move(vs), {}});
        p.blocks.push_back({std::move(rest), {}});
    }
    return p;
}

Partition refine_block(const Partition& p, std::span<const std::size_t> path, int n) {
    if (path.empty())
        throw PartitionError("empty block path");
    const std::size_t i = path.front();
    if (i >= p.blocks.size())
        throw PartitionError("block index out of range");
    Partition out = p;
    PartitionBlock& block = out.blocks[i];
    if (path.size() == 1) {
        block.refinement = {build_partition(block.set, n)};
    } else {
        if (block.refinement.empty())
            throw PartitionError("block path descends into an unrefined block");
        block.refinement.front() = refine_block(block.refinement.front(), path.subspan(1), n);
    }
    return out;
}

Partition refine_block(const Partition& p, std::size_t index, int n) {
    const std::size_t path[] = {index};
    return refine_block(p, std::span<const std::size_t>(path), n);
}

PartitionLaws check_partition(const Partition& p) {
    PartitionLaws laws;
    const auto sets = p.block_sets();
    ClopenSet uni;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const ClopenSet& s = sets[i];
        if (s.empty()) {
            laws.non_empty = false;
            continue;
        }
        if (ClopenSet(s.cylinders()) != s)
            laws.canonical = false;
        if (s.min_point() == s.max_point())
            laws.splittable = false;
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!s.intersect(sets[j]).empty())
                laws.disjoint = false;
        uni = uni.unite(s);
    }
    laws.covers = uni == p.carrier;
    for (const auto& b : p.blocks) {
        if (b.refinement.empty())
            continue;
        const Partition& sub = b.refinement.front();
        const PartitionLaws inner = check_partition(sub);
        if (sub.carrier != b.set || !inner.all())
            laws.refinements_valid = false;
    }
    return laws;
}

std::string PartitionLaws::describe() const {
    std::ostringstream os;
    os << "disjoint=" << disjoint << " covers=" << covers << " non_empty=" << non_empty
       << " canonical=" << canonical << " splittable=" << splittable << " refinements=" << refinements_valid;
    return os.str();
}

} // namespace cantor
