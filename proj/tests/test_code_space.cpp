#include "doctest.h"

#include <algorithm>
#include <random>

#include "cantor/code_space.hpp"
#include "test_support.hpp"

using namespace cantor;

TEST_CASE("address canonical form strips trailing tail symbols") {
    CHECK(Address("0110", '0').prefix() == "011");
    CHECK(Address("111", '1').prefix().empty());
    CHECK(Address("10", '1') == Address::parse("10(1)"));
    CHECK(Address::parse("01") == Address("01", '0'));
    CHECK(Address::parse("0100(0)").to_string() == "01(0)");
    CHECK_THROWS_AS(Address("012", '0'), SpaceError);
    CHECK_THROWS_AS(Address("01", '2'), SpaceError);
    CHECK_THROWS_AS(Address::parse("01(0"), SpaceError);
}

TEST_CASE("address symbol access, drop and prepend") {
    const Address a = Address::parse("10(1)");
    CHECK(a.symbol(0) == '1');
    CHECK(a.symbol(1) == '0');
    CHECK(a.symbol(7) == '1');
    CHECK(a.head(4) == "1011");
    CHECK(a.starts_with("1011"));
    CHECK_FALSE(a.starts_with("11"));
    CHECK(a.drop(1) == Address::parse("0(1)"));
    CHECK(a.drop(5) == Address::parse("(1)"));
    CHECK(a.prepend("0") == Address::parse("010(1)"));
}

TEST_CASE("embed_cmts closed forms") {
    CHECK(embed_cmts(Address("", '0')) == 0);
    CHECK(embed_cmts(Address("", '1')) == 1);
    CHECK(embed_cmts(Address("1", '0')) == Rational(2, 3));
    CHECK(embed_cmts(Address("0", '1')) == Rational(1, 3));
}

TEST_CASE("embed_cmts agrees with the digit-by-digit series") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const Address a = test::random_address(rng, 20);
        CHECK(embed_cmts(a) == test::digit_sum(a, 3, 2, a.prefix().size() + 3));
    }
}

TEST_CASE("code_distance examples") {
    const Address zero("", '0');
    const Address one("", '1');
    CHECK(code_distance(zero, one) == 1);
    CHECK(code_distance(one, one) == 0);
    CHECK(code_distance(zero, Address("1", '0')) == Rational(2, 3));
}

TEST_CASE("code_distance is a metric on random triples") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        const Address a = test::random_address(rng, 10);
        const Address b = test::random_address(rng, 10);
        const Address c = test::random_address(rng, 10);
        CHECK((code_distance(a, b) == 0) == (a == b));
        CHECK(code_distance(a, b) == code_distance(b, a));
        CHECK(code_distance(a, c) <= code_distance(a, b) + code_distance(b, c));
    }
}

TEST_CASE("cylinder diameter is 3^-n") {
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n < 12; ++n) {
        const Cylinder c(test::random_word(rng, n));
        CHECK(cylinder_diameter(c) == code_distance(c.min_point(), c.max_point()));
        for (int i = 0; i < 20; ++i) {
            const Address a = test::random_address(rng, 16).prepend(c.word());
            const Address b = test::random_address(rng, 16).prepend(c.word());
            CHECK(code_distance(a, b) <= cylinder_diameter(c));
        }
    }
}

TEST_CASE("embed_cmts is strictly order preserving on all short addresses") {
    std::vector<Address> all;
    for (std::size_t len = 0; len <= 6; ++len)
        for (std::uint32_t m = 0; m < (1U << len); ++m) {
            Word w;
            for (std::size_t b = len; b-- > 0;)
                w += ((m >> b) & 1U) ? '1' : '0';
            all.emplace_back(w, '0');
            all.emplace_back(w, '1');
        }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(embed_cmts(all[i - 1]) < embed_cmts(all[i]));

    // Random pairs with longer prefixes.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Address a = test::random_address(rng, 10);
        const Address b = test::random_address(rng, 10);
        CHECK((a < b) == (embed_cmts(a) < embed_cmts(b)));
    }
}

TEST_CASE("embed_cmts image avoids the open middle thirds") {
    // frac(3^n x) never lands strictly inside (1/3, 2/3).
    std::mt19937_64 rng(4);
    for (int i = 0; i < 300; ++i) {
        const Address a = test::random_address(rng, 12);
        Rational x = embed_cmts(a);
        for (std::size_t d = 0; d < a.prefix().size() + 4; ++d) {
            const Rational whole(numerator(x) / denominator(x));
            const Rational frac = x - whole;
            CHECK_FALSE((frac > Rational(1, 3) && frac < Rational(2, 3)));
            x *= 3;
        }
    }
}

TEST_CASE("clopen canonicalisation merges siblings and drops nested cylinders") {
    CHECK(ClopenSet{"0", "1"}.is_full());
    CHECK(ClopenSet{"10", "11", "0"}.is_full());
    CHECK(ClopenSet{"0", "01", "011"} == ClopenSet{"0"});
    CHECK(ClopenSet{"110", "0", "111"}.to_string() == "{[0],[11]}");
    CHECK(ClopenSet{}.empty());
}

TEST_CASE("clopen canonicalisation is idempotent and order independent") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        std::vector<Cylinder> cs;
        const int count = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < count; ++k)
            cs.emplace_back(test::random_word(rng, rng() % 5));
        const ClopenSet a(cs);
        std::shuffle(cs.begin(), cs.end(), rng);
        const ClopenSet b(cs);
        CHECK(a == b);
        CHECK(ClopenSet(a.cylinders()) == a);
        for (std::size_t k = 1; k < a.cylinders().size(); ++k) {
            CHECK(a.cylinders()[k - 1] < a.cylinders()[k]);
            CHECK(a.cylinders()[k - 1].disjoint(a.cylinders()[k]));
        }
    }
}

TEST_CASE("clopen_complement examples") {
    CHECK(clopen_complement(ClopenSet{"0"}, ClopenSet::full()) == ClopenSet{"1"});
    CHECK(clopen_complement(ClopenSet{"10"}, ClopenSet{"1"}) == ClopenSet{"11"});
    CHECK(clopen_complement(ClopenSet{"0", "10"}, ClopenSet::full()) == ClopenSet{"11"});
    CHECK_THROWS_WITH_AS(clopen_complement(ClopenSet{"0"}, ClopenSet{"1"}), "not a subset", SpaceError);
}

TEST_CASE("clopen_complement agrees with brute-force cylinder enumeration") {
    // Oracle: enumerate depth-6 cylinders and classify each by word prefixes.
    std::mt19937_64 rng(6);
    auto in = [](const std::vector<Word>& words, const Word& w) {
        return std::any_of(words.begin(), words.end(), [&](const Word& p) { return w.rfind(p, 0) == 0; });
    };
    for (int i = 0; i < 200; ++i) {
        std::vector<Word> x;
        for (int k = 0; k < 3; ++k)
            x.push_back(test::random_word(rng, 1 + rng() % 5));
        std::vector<Word> within = x;
        within.push_back(test::random_word(rng, rng() % 3));
        std::vector<Cylinder> xc, wc;
        for (const auto& w : x)
            xc.emplace_back(w);
        for (const auto& w : within)
            wc.emplace_back(w);
        const ClopenSet result = clopen_complement(ClopenSet(xc), ClopenSet(wc));

        std::vector<Cylinder> expected;
        for (std::uint32_t m = 0; m < 64; ++m) {
            Word w;
            for (int b = 5; b >= 0; --b)
                w += ((m >> b) & 1U) ? '1' : '0';
            if (in(within, w) && !in(x, w))
                expected.emplace_back(w);
        }
        CHECK(result == ClopenSet(expected));
        CHECK(result.unite(ClopenSet(xc)) == ClopenSet(wc));
        CHECK(result.intersect(ClopenSet(xc)).empty());
    }
}

TEST_CASE("clopen set containment and extremes") {
    const ClopenSet s{"01", "11"};
    CHECK(s.contains(Address::parse("011(0)")));
    CHECK_FALSE(s.contains(Address::parse("10(1)")));
    CHECK(s.contains(Cylinder("110")));
    CHECK_FALSE(s.contains(Cylinder("1")));
    CHECK(ClopenSet{"0", "10"}.contains(Cylinder("")) == false);
    CHECK(ClopenSet{"0", "1"}.contains(Cylinder("")));
    CHECK(s.min_point() == Address::parse("01(0)"));
    CHECK(s.max_point() == Address::parse("(1)"));
    CHECK(s.refine(1).size() == 4);
    CHECK(s.refine(1)[1].word() == "011");
    CHECK_THROWS_AS(ClopenSet{}.min_point(), SpaceError);
}
