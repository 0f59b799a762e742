#pragma once

// Prefix-rewriting maps on the code space. A map is a finite list of rules
// u -> v acting on sequences u.rest as v.rest; the u words form a prefix code
// covering the domain. Such maps are homeomorphisms onto their image and are
// closed under composition and inversion, which is all the conjugation and
// recoding machinery needs.

#include <string>
#include <vector>

#include "cantor/code_space.hpp"

namespace cantor {

struct PrefixRule {
    Word from;
    Word to;

    friend bool operator==(const PrefixRule&, const PrefixRule&) = default;
};

class PrefixMap {
public:
    PrefixMap() = default;  // identity on the whole space
    explicit PrefixMap(std::vector<PrefixRule> rules);

    static PrefixMap identity() { return PrefixMap(); }
    static PrefixMap prepend(Word w) { return PrefixMap({PrefixRule{"", std::move(w)}}); }

    const std::vector<PrefixRule>& rules() const noexcept { return rules_; }

    ClopenSet domain() const;
    ClopenSet image() const;

    bool in_domain(const Address& a) const noexcept;

    /// Throws SpaceError if a lies outside the domain.
    Address apply(const Address& a) const;

    /// Image of a cylinder contained in the domain.
    ClopenSet apply(const Cylinder& c) const;

    /// Rules swapped. Requires the target words to form a prefix code.
    PrefixMap inverse() const;

    /// next o this, restricted to the points whose image lies in next's domain.
    PrefixMap then(const PrefixMap& next) const;

    friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

private:
    const PrefixRule* match(const Address& a) const noexcept;

    std::vector<PrefixRule> rules_;
};

/// A homeomorphism between two clopen subspaces, stored as mutually inverse
/// prefix maps.
struct Homeomorphism {
    PrefixMap forward;
    PrefixMap backward;

    static Homeomorphism identity() { return {}; }

    /// next o this.
    Homeomorphism then(const Homeomorphism& next) const {
        return {forward.then(next.forward), next.backward.then(backward)};
    }

    Homeomorphism inverse() const { return {backward, forward}; }
};

/// Complete prefix code with `count` codewords, built by repeatedly splitting
/// the lexicographically last codeword: {""}, {0,1}, {0,10,11}, {0,10,110,111}, ...
std::vector<Word> canonical_prefix_code(std::size_t count);

/// Recoding homeomorphism from the full code space onto `target`: the i-th
/// codeword (sorted) is rewritten to the i-th cylinder word of the target.
/// Throws SpaceError("empty subspace") for an empty target.
Homeomorphism recode_homeomorphism(const ClopenSet& target);

/// Homeomorphism from `source` onto `target` through the full code space.
Homeomorphism recode_between(const ClopenSet& source, const ClopenSet& target);

} // namespace cantor
