#pragma once

// Symbolic model of the Cantor space {0,1}^N: eventually-constant addresses,
// cylinders, finite unions of cylinders (clopen sets) and the embedding onto
// the middle-thirds Cantor set.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Finite word over {'0','1'}.
using Word = std::string;

class SpaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_binary_word(std::string_view w);

/// An infinite binary sequence of the form prefix . tail tail tail ...
///
/// Kept canonical: the prefix never ends with the tail symbol, so every
/// eventually-constant sequence has exactly one representation and `==` is
/// sequence equality.
class Address {
public:
    Address() = default;
    Address(Word prefix, char tail);

    /// Parses "01(0)" style notation: prefix followed by the repeated symbol in
    /// parentheses. A bare word "01" means "01(0)".
    static Address parse(std::string_view text);

    const Word& prefix() const noexcept { return prefix_; }
    char tail() const noexcept { return tail_; }

    /// Symbol at 0-based position i.
    char symbol(std::size_t i) const noexcept {
        return i < prefix_.size() ? prefix_[i] : tail_;
    }

    /// First n symbols of the sequence.
    Word head(std::size_t n) const;

    bool starts_with(std::string_view w) const noexcept;

    /// Sequence with the first k symbols removed.
    Address drop(std::size_t k) const;

    /// Sequence w . this.
    Address prepend(std::string_view w) const;

    std::string to_string() const;

    friend bool operator==(const Address&, const Address&) = default;

    /// Lexicographic order of the infinite sequences.
    friend std::strong_ordering operator<=>(const Address& a, const Address& b);

private:
    Word prefix_;
    char tail_ = '0';
};

/// Set of all sequences beginning with `word`. The empty word is the whole
/// space.
class Cylinder {
public:
    Cylinder() = default;
    explicit Cylinder(Word word);

    const Word& word() const noexcept { return word_; }
    std::size_t depth() const noexcept { return word_.size(); }

    bool contains(const Address& a) const noexcept { return a.starts_with(word_); }
    bool contains(const Cylinder& c) const noexcept;
    bool disjoint(const Cylinder& c) const noexcept;

    /// Lexicographically smallest and largest points: word.0^inf and word.1^inf.
    Address min_point() const { return Address(word_, '0'); }
    Address max_point() const { return Address(word_, '1'); }

    Cylinder child(char s) const { return Cylinder(word_ + s); }

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
    friend auto operator<=>(const Cylinder& a, const Cylinder& b) { return a.word_ <=> b.word_; }

private:
    Word word_;
};

/// Finite disjoint union of cylinders in canonical form: no nesting, no
/// sibling pair w0/w1 (merged to w), sorted by word.
class ClopenSet {
public:
    ClopenSet() = default;
    explicit ClopenSet(std::vector<Cylinder> cylinders);
    ClopenSet(std::initializer_list<const char*> words);

    static ClopenSet full() { return ClopenSet(std::vector<Cylinder>{Cylinder{}}); }

    const std::vector<Cylinder>& cylinders() const noexcept { return cylinders_; }
    bool empty() const noexcept { return cylinders_.empty(); }
    bool is_full() const noexcept { return cylinders_.size() == 1 && cylinders_[0].depth() == 0; }

    bool contains(const Address& a) const noexcept;
    bool contains(const Cylinder& c) const noexcept;
    bool contains(const ClopenSet& s) const noexcept;
    bool intersects(const Cylinder& c) const noexcept;

    /// Lexicographic extremes of the set. Throws on the empty set.
    Address min_point() const;
    Address max_point() const;

    /// Every member cylinder extended by exactly `extra` symbols, in order.
    std::vector<Cylinder> refine(std::size_t extra) const;

    ClopenSet unite(const ClopenSet& other) const;
    ClopenSet intersect(const ClopenSet& other) const;

    std::string to_string() const;

    friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

private:
    std::vector<Cylinder> cylinders_;
};

/// within - x. Throws SpaceError("not a subset") unless x is contained in within.
ClopenSet clopen_complement(const ClopenSet& x, const ClopenSet& within);

/// Image of the address in the middle-thirds Cantor set: sum 2 s_i 3^-i.
Rational embed_cmts(const Address& a);

/// |embed_cmts(a) - embed_cmts(b)|.
Rational code_distance(const Address& a, const Address& b);

/// Distance between the extreme points of the cylinder image, 3^-depth.
Rational cylinder_diameter(const Cylinder& c);

} // namespace cantor
