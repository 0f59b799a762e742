#include "cantor/prefix_map.hpp"

#include <algorithm>

namespace cantor {

namespace {

bool has_prefix(const Word& w, const Word& p) {
    return w.size() >= p.size() && w.compare(0, p.size(), p) == 0;
}

// In sorted order a word is followed by all its extensions, so checking
// neighbours is enough.
bool prefix_free(std::vector<Word> words) {
    std::sort(words.begin(), words.end());
    for (std::size_t i = 1; i < words.size(); ++i)
        if (has_prefix(words[i], words[i - 1]))
            return false;
    return true;
}

std::vector<Word> sources(const std::vector<PrefixRule>& rules) {
    std::vector<Word> out;
    for (const auto& r : rules)
        out.push_back(r.from);
    return out;
}

std::vector<Word> targets(const std::vector<PrefixRule>& rules) {
    std::vector<Word> out;
    for (const auto& r : rules)
        out.push_back(r.to);
    return out;
}

} // namespace

PrefixMap::PrefixMap(std::vector<PrefixRule> rules) : rules_(std::move(rules)) {
    for (const auto& r : rules_)
        if (!is_binary_word(r.from) || !is_binary_word(r.to))
            throw SpaceError("prefix rule words must be binary");
    std::sort(rules_.begin(), rules_.end(), [](const PrefixRule& a, const PrefixRule& b) { return a.from < b.from; });
    if (!prefix_free(sources(rules_)))
        throw SpaceError("prefix map sources are not a prefix code");
}

ClopenSet PrefixMap::domain() const {
    if (rules_.empty())
        return ClopenSet::full();
    std::vector<Cylinder> cs;
    for (const auto& r : rules_)
        cs.emplace_back(r.from);
    return ClopenSet(std::move(cs));
}

ClopenSet PrefixMap::image() const {
    if (rules_.empty())
        return ClopenSet::full();
    std::vector<Cylinder> cs;
    for (const auto& r : rules_)
        cs.emplace_back(r.to);
    return ClopenSet(std::move(cs));
}

const PrefixRule* PrefixMap::match(const Address& a) const noexcept {
    for (const auto& r : rules_)
        if (a.starts_with(r.from))
            return &r;
    return nullptr;
}

bool PrefixMap::in_domain(const Address& a) const noexcept {
    return rules_.empty() || match(a) != nullptr;
}

Address PrefixMap::apply(const Address& a) const {
    if (rules_.empty())
        return a;
    const PrefixRule* r = match(a);
    if (r == nullptr)
        throw SpaceError("address " + a.to_string() + " outside map domain");
    return a.drop(r->from.size()).prepend(r->to);
}

ClopenSet PrefixMap::apply(const Cylinder& c) const {
    if (rules_.empty())
        return ClopenSet(std::vector<Cylinder>{c});
    if (!domain().contains(c))
        throw SpaceError("cylinder [" + c.word() + "] outside map domain");
    std::vector<Cylinder> out;
    for (const auto& r : rules_) {
        if (has_prefix(c.word(), r.from))
            out.emplace_back(r.to + c.word().substr(r.from.size()));
        else if (has_prefix(r.from, c.word()))
            out.emplace_back(r.to);
    }
    return ClopenSet(std::move(out));
}

PrefixMap PrefixMap::inverse() const {
    if (rules_.empty())
        return *this;
    if (!prefix_free(targets(rules_)))
        throw SpaceError("prefix map is not invertible");
    std::vector<PrefixRule> inv;
    for (const auto& r : rules_)
        inv.push_back({r.to, r.from});
    return PrefixMap(std::move(inv));
}

PrefixMap PrefixMap::then(const PrefixMap& next) const {
    if (rules_.empty())
        return next;
    if (next.rules_.empty())
        return *this;
    std::vector<PrefixRule> out;
    for (const auto& r : rules_)
        for (const auto& n : next.rules_) {
            if (has_prefix(r.to, n.from))
                out.push_back({r.from, n.to + r.to.substr(n.from.size())});
            else if (has_prefix(n.from, r.to))
                out.push_back({r.from + n.from.substr(r.to.size()), n.to});
        }
    if (out.empty())
        throw SpaceError("composition has empty domain");
    return PrefixMap(std::move(out));
}

std::vector<Word> canonical_prefix_code(std::size_t count) {
    if (count == 0)
        throw SpaceError("prefix code needs at least one codeword");
    std::vector<Word> code{Word{}};
    while (code.size() < count) {
        Word last = code.back();
        code.pop_back();
        code.push_back(last + '0');
        code.push_back(last + '1');
    }
    return code;
}

Homeomorphism recode_homeomorphism(const ClopenSet& target) {
    if (target.empty())
        throw SpaceError("empty subspace");
    if (target.is_full())
        return Homeomorphism::identity();
    const auto& cyl = target.cylinders();
    const auto code = canonical_prefix_code(cyl.size());
    std::vector<PrefixRule> rules;
    for (std::size_t i = 0; i < cyl.size(); ++i)
        rules.push_back({code[i], cyl[i].word()});
    PrefixMap forward(std::move(rules));
    PrefixMap backward = forward.inverse();
    return {std::move(forward), std::move(backward)};
}

Homeomorphism recode_between(const ClopenSet& source, const ClopenSet& target) {
    return recode_homeomorphism(source).inverse().then(recode_homeomorphism(target));
}

} // namespace cantor
