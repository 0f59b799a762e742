#include "cantor/code_space.hpp"

#include <algorithm>
#include <sstream>

namespace cantor {

namespace {

Rational power_of_three_inverse(std::size_t n) {
    boost::multiprecision::cpp_int d = 1;
    for (std::size_t i = 0; i < n; ++i)
        d *= 3;
    return Rational(1, d);
}

void require_word(std::string_view w) {
    if (!is_binary_word(w))
        throw SpaceError("not a binary word: '" + std::string(w) + "'");
}

// Removes everything the canonical form forbids. Input cylinders may nest
// and come in any order.
std::vector<Cylinder> canonicalize(std::vector<Cylinder> in) {
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());

    // Sorted by word, a cylinder's ancestors appear before it.
    std::vector<Cylinder> outer;
    for (auto& c : in) {
        if (!outer.empty() && outer.back().contains(c))
            continue;
        outer.push_back(std::move(c));
    }

    std::vector<Cylinder> out;
    for (auto& c : outer) {
        out.push_back(std::move(c));
        while (out.size() >= 2) {
            const Word& a = out[out.size() - 2].word();
            const Word& b = out.back().word();
            const bool siblings = !a.empty() && a.size() == b.size() && a.back() == '0' &&
                                  b.back() == '1' && a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0;
            if (!siblings)
                break;
            Word parent = a.substr(0, a.size() - 1);
            out.pop_back();
            out.back() = Cylinder(std::move(parent));
        }
    }
    return out;
}

// Parts of c not covered by any cylinder of x.
void subtract(const Cylinder& c, const ClopenSet& x, std::vector<Cylinder>& out) {
    bool touched = false;
    for (const auto& xc : x.cylinders()) {
        if (xc.contains(c))
            return;
        if (!xc.disjoint(c))
            touched = true;
    }
    if (!touched) {
        out.push_back(c);
        return;
    }
    subtract(c.child('0'), x, out);
    subtract(c.child('1'), x, out);
}

} // namespace

bool is_binary_word(std::string_view w) {
    return std::all_of(w.begin(), w.end(), [](char ch) { return ch == '0' || ch == '1'; });
}

// ---------------------------------------------------------------- Address

Address::Address(Word prefix, char tail) : prefix_(std::move(prefix)), tail_(tail) {
    if (tail != '0' && tail != '1')
        throw SpaceError(std::string("tail must be '0' or '1', got '") + tail + "'");
    require_word(prefix_);
    while (!prefix_.empty() && prefix_.back() == tail_)
        prefix_.pop_back();
}

Address Address::parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos)
        return Address(Word(text), '0');
    if (text.size() != open + 3 || text[open + 2] != ')')
        throw SpaceError("malformed address: '" + std::string(text) + "'");
    return Address(Word(text.substr(0, open)), text[open + 1]);
}

Word Address::head(std::size_t n) const {
    Word w = prefix_.substr(0, std::min(n, prefix_.size()));
    w.resize(n, tail_);
    return w;
}

bool Address::starts_with(std::string_view w) const noexcept {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (symbol(i) != w[i])
            return false;
    return true;
}

Address Address::drop(std::size_t k) const {
    return Address(k < prefix_.size() ? prefix_.substr(k) : Word{}, tail_);
}

Address Address::prepend(std::string_view w) const {
    Word p(w);
    p += prefix_;
    return Address(std::move(p), tail_);
}

std::string Address::to_string() const {
    return prefix_ + '(' + tail_ + ')';
}

std::strong_ordering operator<=>(const Address& a, const Address& b) {
    const std::size_t n = std::max(a.prefix_.size(), b.prefix_.size()) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const char x = a.symbol(i);
        const char y = b.symbol(i);
        if (x != y)
            return x <=> y;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Cylinder

Cylinder::Cylinder(Word word) : word_(std::move(word)) {
    require_word(word_);
}

bool Cylinder::contains(const Cylinder& c) const noexcept {
    return c.word_.size() >= word_.size() && c.word_.compare(0, word_.size(), word_) == 0;
}

bool Cylinder::disjoint(const Cylinder& c) const noexcept {
    return !contains(c) && !c.contains(*this);
}

// ---------------------------------------------------------------- ClopenSet

ClopenSet::ClopenSet(std::vector<Cylinder> cylinders) : cylinders_(canonicalize(std::move(cylinders))) {}

ClopenSet::ClopenSet(std::initializer_list<const char*> words) {
    std::vector<Cylinder> cs;
    for (const char* w : words)
        cs.emplace_back(Word(w));
    cylinders_ = canonicalize(std::move(cs));
}

bool ClopenSet::contains(const Address& a) const noexcept {
    return std::any_of(cylinders_.begin(), cylinders_.end(), [&](const Cylinder& c) { return c.contains(a); });
}

bool ClopenSet::contains(const Cylinder& c) const noexcept {
    // Canonical members are maximal, so containment needs a single ancestor
    // unless c is split across several members.
    if (std::any_of(cylinders_.begin(), cylinders_.end(), [&](const Cylinder& m) { return m.contains(c); }))
        return true;
    std::vector<Cylinder> rest;
    subtract(c, *this, rest);
    return rest.empty();
}

bool ClopenSet::contains(const ClopenSet& s) const noexcept {
    return std::all_of(s.cylinders_.begin(), s.cylinders_.end(), [&](const Cylinder& c) { return contains(c); });
}

bool ClopenSet::intersects(const Cylinder& c) const noexcept {
    return std::any_of(cylinders_.begin(), cylinders_.end(), [&](const Cylinder& m) { return !m.disjoint(c); });
}

Address ClopenSet::min_point() const {
    if (empty())
        throw SpaceError("empty clopen set has no points");
    return cylinders_.front().min_point();
}

Address ClopenSet::max_point() const {
    if (empty())
        throw SpaceError("empty clopen set has no points");
    return cylinders_.back().max_point();
}

std::vector<Cylinder> ClopenSet::refine(std::size_t extra) const {
    std::vector<Cylinder> out;
    out.reserve(cylinders_.size() << extra);
    for (const auto& c : cylinders_) {
        const std::size_t count = std::size_t{1} << extra;
        for (std::size_t m = 0; m < count; ++m) {
            Word w = c.word();
            for (std::size_t bit = extra; bit-- > 0;)
                w += ((m >> bit) & 1U) ? '1' : '0';
            out.emplace_back(std::move(w));
        }
    }
    return out;
}

ClopenSet ClopenSet::unite(const ClopenSet& other) const {
    std::vector<Cylinder> all = cylinders_;
    all.insert(all.end(), other.cylinders_.begin(), other.cylinders_.end());
    return ClopenSet(std::move(all));
}

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
    std::vector<Cylinder> out;
    for (const auto& a : cylinders_)
        for (const auto& b : other.cylinders_) {
            if (a.contains(b))
                out.push_back(b);
            else if (b.contains(a))
                out.push_back(a);
        }
    return ClopenSet(std::move(out));
}

std::string ClopenSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < cylinders_.size(); ++i)
        os << (i ? "," : "") << '[' << cylinders_[i].word() << ']';
    os << '}';
    return os.str();
}

ClopenSet clopen_complement(const ClopenSet& x, const ClopenSet& within) {
    if (!within.contains(x))
        throw SpaceError("not a subset");
    std::vector<Cylinder> out;
    for (const auto& c : within.cylinders())
        subtract(c, x, out);
    return ClopenSet(std::move(out));
}

// ---------------------------------------------------------------- metric

Rational embed_cmts(const Address& a) {
    // prefix digits over 3^p, plus the tail contribution sum_{i>p} 2*3^-i = 3^-p
    // when the tail is 1.
    const Word& p = a.prefix();
    boost::multiprecision::cpp_int num = 0;
    boost::multiprecision::cpp_int den = 1;
    for (char s : p) {
        num = num * 3 + (s == '1' ? 2 : 0);
        den *= 3;
    }
    if (a.tail() == '1')
        num += 1;
    return Rational(num, den);
}

Rational code_distance(const Address& a, const Address& b) {
    Rational d = embed_cmts(a) - embed_cmts(b);
    return d < 0 ? Rational(-d) : d;
}

Rational cylinder_diameter(const Cylinder& c) {
    return power_of_three_inverse(c.depth());
}

} // namespace cantor
