#include <catch2/catch_amalgamated.hpp>

#include <cpn/chains.hpp>

using namespace cpn;

TEST_CASE("canonical sorts and rejects bad input", "[chains]") {
    CHECK(Chain::canonical({2, 1}, 3) == Chain::canonical({1, 2}, 3));
    CHECK(Chain::canonical({}, 3) == Chain::empty(3));
    CHECK(Chain::canonical({1, 2, 3}, 3) == Chain::full(3));
    CHECK(Chain::canonical({3, 1}, 4).symbols() == std::vector<int>{1, 3});

    CHECK_THROWS_MATCHES(Chain::canonical({1, 1}, 3), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::duplicate_symbol;
                         }));
    CHECK_THROWS_MATCHES(Chain::canonical({4}, 3), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::out_of_alphabet;
                         }));
    CHECK_THROWS_MATCHES(Chain::empty(17), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::bound_exceeded;
                         }));
    CHECK_THROWS_MATCHES(Chain::empty(0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::out_of_alphabet;
                         }));
}

TEST_CASE("concat and coconcat examples", "[chains]") {
    auto c = [](std::initializer_list<int> s, int n) { return Chain::canonical(s, n); };

    CHECK(concat(c({1, 2}, 3), c({2, 3}, 3)) == Chain::full(3));
    CHECK(concat(c({1, 2}, 3), Chain::empty(3)) == c({1, 2}, 3));
    CHECK(concat(c({1}, 3), c({2, 3}, 3)) == Chain::full(3));

    // {1,2,3} ⊗ {1,2,4,5,6} = {3,4,5,6} over [6]
    CHECK(coconcat(c({1, 2, 3}, 6), c({1, 2, 4, 5, 6}, 6)) == c({3, 4, 5, 6}, 6));
    CHECK(coconcat(Chain::full(3), c({1}, 3)) == c({2, 3}, 3));

    CHECK_THROWS_MATCHES(concat(c({1}, 2), c({1}, 3)), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::alphabet_mismatch;
                         }));
}

TEST_CASE("complement examples", "[chains]") {
    CHECK(complement(Chain::canonical({1}, 3)) == Chain::canonical({2, 3}, 3));
    CHECK(complement(Chain::empty(3)) == Chain::full(3));
    CHECK(complement(Chain::full(3)) == Chain::empty(3));
}

TEST_CASE("subchain examples", "[chains]") {
    CHECK(is_subchain(Chain::canonical({2}, 3), Chain::full(3)));
    CHECK(is_subchain(Chain::empty(3), Chain::canonical({1}, 3)));
    CHECK_FALSE(is_subchain(Chain::canonical({1, 2}, 3), Chain::canonical({1}, 3)));
}

TEST_CASE("enumeration order and count", "[chains]") {
    auto three = enumerate_chains(3);
    REQUIRE(three.size() == 8);
    std::vector<std::string> names;
    for (const auto& ch : three) names.push_back(ch.to_string());
    CHECK(names == std::vector<std::string>{"{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}",
                                            "{1,2,3}"});

    CHECK(enumerate_chains(1).size() == 2);
    CHECK(enumerate_chains(2).size() == 4);
}

// Exhaustive algebra laws for n ≤ 4.
TEST_CASE("chain algebra laws, exhaustive", "[chains][property]") {
    for (int n = 1; n <= 4; ++n) {
        auto all = enumerate_chains(n);
        REQUIRE(all.size() == (std::size_t{1} << n));
        const Chain eps  = Chain::empty(n);
        const Chain full_ = Chain::full(n);

        for (const auto& a : all) {
            CHECK(concat(a, eps) == a);
            CHECK(coconcat(a, eps) == a);
            CHECK(coconcat(a, a) == eps);
            CHECK(complement(complement(a)) == a);
            CHECK(concat(a, complement(a)) == full_);
            CHECK(coconcat(a, complement(a)) == full_);
            CHECK(coconcat(full_, a) == complement(a));
            CHECK(coconcat(full_, complement(a)) == a);

            for (const auto& b : all) {
                CHECK(concat(a, b) == concat(b, a));
                CHECK(coconcat(a, b) == coconcat(b, a));
                // coconcat never leaves the concat envelope
                CHECK(is_subchain(coconcat(a, b), concat(a, b)));
                if (intersect(a, b).is_empty()) CHECK(concat(a, b) == coconcat(a, b));

                for (const auto& c : all) {
                    CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
                    CHECK(coconcat(coconcat(a, b), c) == coconcat(a, coconcat(b, c)));
                }
            }
        }
    }
}
